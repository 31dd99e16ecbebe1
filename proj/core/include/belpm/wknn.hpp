#pragma once

#include <cstddef>
#include <span>

#include "belpm/series.hpp"

namespace belpm {

inline constexpr double kWknnEpsilon = 1e-12;

/// Inverse-distance weighted k-nearest-neighbor regressor:
///   y = sum_m w_m r_m / sum_m w_m,  w_m = 1 / (d_m + eps).
struct WknnModel {
  EmbeddedDataset data;
  std::size_t k;

  /// k is clamped to [1, sample count].
  WknnModel(EmbeddedDataset data, std::size_t k);

  bool operator==(const WknnModel&) const = default;
};

double wknn_predict(const WknnModel& model, std::span<const double> query);

}  // namespace belpm
