#include "belpm/wknn.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "belpm/adaptive_network.hpp"
#include "belpm/error.hpp"

namespace belpm {

WknnModel::WknnModel(EmbeddedDataset data_, std::size_t k_) : data(std::move(data_)), k(k_) {
  if (data.empty()) throw Error(ErrorCode::TooFewSamples, "WkNN needs training data");
  if (k == 0) throw Error(ErrorCode::InvalidParameter, "k must be >= 1");
  k = std::min(k, data.size());
}

double wknn_predict(const WknnModel& model, std::span<const double> query) {
  if (query.size() != model.data.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "query dimension " + std::to_string(query.size()) +
                                                  " != stored dimension " +
                                                  std::to_string(model.data.dim()));
  }
  std::vector<double> distances(model.data.size());
  for (std::size_t j = 0; j < distances.size(); ++j) {
    const auto row = model.data.input(j);
    double acc = 0.0;
    for (std::size_t i = 0; i < query.size(); ++i) {
      const double diff = query[i] - row[i];
      acc += diff * diff;
    }
    distances[j] = std::sqrt(acc);
  }
  const auto nb = select_k_min(distances, model.k);
  std::vector<double> weights(nb.size());
  double den = 0.0;
  for (std::size_t m = 0; m < nb.size(); ++m) {
    weights[m] = 1.0 / (nb.distances[m] + kWknnEpsilon);
    den += weights[m];
  }
  // Normalize before weighting so a single neighbor reproduces its target exactly.
  double out = 0.0;
  for (std::size_t m = 0; m < nb.size(); ++m) {
    out += (weights[m] / den) * model.data.target(nb.indices[m]);
  }
  return out;
}

}  // namespace belpm
