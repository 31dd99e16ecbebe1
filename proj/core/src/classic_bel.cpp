#include "belpm/classic_bel.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "belpm/error.hpp"

namespace belpm {

std::string_view to_string(OrbitofrontalSignal signal) {
  switch (signal) {
    case OrbitofrontalSignal::OrbitofrontalSum: return "orbitofrontal_sum";
    case OrbitofrontalSignal::ModelOutput: return "model_output";
  }
  return "unknown";
}

OrbitofrontalSignal parse_orbitofrontal_signal(std::string_view name) {
  if (name == "orbitofrontal_sum") return OrbitofrontalSignal::OrbitofrontalSum;
  if (name == "model_output") return OrbitofrontalSignal::ModelOutput;
  throw Error(ErrorCode::InvalidParameter, "unknown orbitofrontal signal '" + std::string(name) + "'");
}

ClassicBelModel::ClassicBelModel(std::size_t dim, double alpha_, double beta_,
                                 OrbitofrontalSignal signal_)
    : v(dim, 0.0), w(dim, 0.0), alpha(alpha_), beta(beta_), signal(signal_) {
  if (dim == 0) throw Error(ErrorCode::InvalidParameter, "stimulus dimension must be >= 1");
  if (!(alpha > 0.0 && alpha <= 1.0) || !(beta > 0.0 && beta <= 1.0)) {
    throw Error(ErrorCode::InvalidParameter, "learning rates must lie in (0, 1]");
  }
}

BelForward bel_forward(const ClassicBelModel& model, std::span<const double> stimulus) {
  if (stimulus.size() != model.v.size() || model.w.size() != model.v.size()) {
    throw Error(ErrorCode::DimensionMismatch, "stimulus dimension " +
                                                  std::to_string(stimulus.size()) +
                                                  " != model dimension " +
                                                  std::to_string(model.v.size()));
  }
  BelForward out;
  out.a.resize(stimulus.size());
  out.o.resize(stimulus.size());
  for (std::size_t i = 0; i < stimulus.size(); ++i) {
    out.a[i] = model.v[i] * stimulus[i];
    out.o[i] = model.w[i] * stimulus[i];
  }
  out.e = std::accumulate(out.a.begin(), out.a.end(), 0.0) -
          std::accumulate(out.o.begin(), out.o.end(), 0.0);
  return out;
}

ClassicBelModel bel_update(ClassicBelModel model, std::span<const double> stimulus, double reward) {
  const auto fwd = bel_forward(model, stimulus);
  const double sum_a = std::accumulate(fwd.a.begin(), fwd.a.end(), 0.0);
  const double sum_o = std::accumulate(fwd.o.begin(), fwd.o.end(), 0.0);
  const double amygdala_error = std::max(0.0, reward - sum_a);
  const double orbitofrontal_error =
      (model.signal == OrbitofrontalSignal::ModelOutput ? fwd.e : sum_o) - reward;
  for (std::size_t i = 0; i < stimulus.size(); ++i) {
    model.v[i] += model.alpha * stimulus[i] * amygdala_error;
    model.w[i] += model.beta * stimulus[i] * orbitofrontal_error;
  }
  return model;
}

ClassicBelModel bel_train(ClassicBelModel model, const EmbeddedDataset& dataset, std::size_t epochs) {
  if (dataset.empty()) throw Error(ErrorCode::TooFewSamples, "training set is empty");
  for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
    for (std::size_t j = 0; j < dataset.size(); ++j) {
      model = bel_update(std::move(model), dataset.input(j), dataset.target(j));
    }
  }
  return model;
}

}  // namespace belpm
