#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "belpm/series.hpp"

namespace belpm {

/// sum (y - yhat)^2 / sum (y - mean y)^2. Throws ZeroVariance for constant y.
double nmse(std::span<const double> y, std::span<const double> yhat);

double mse(std::span<const double> y, std::span<const double> yhat);

/// Pearson correlation with population moments.
double correlation(std::span<const double> y, std::span<const double> yhat);

/// Strict local maxima x[t-1] < x[t] >= x[t+1] (a plateau belongs to its
/// first index; endpoints never qualify). With `top_m`, only the m largest
/// values are kept, ties going to the earlier index. Result is ascending.
std::vector<std::size_t> find_peaks(std::span<const double> values,
                                    std::optional<std::size_t> top_m = std::nullopt);

inline std::vector<std::size_t> find_peaks(const TimeSeries& series,
                                           std::optional<std::size_t> top_m = std::nullopt) {
  return find_peaks(series.values, top_m);
}

struct PeakMatch {
  std::size_t observed = 0;
  std::optional<std::size_t> predicted;
  /// predicted - observed; positive means the forecast peak came late.
  std::optional<std::int64_t> offset;
};

struct PeakReport {
  std::size_t identified_exact = 0;
  std::size_t identified_delayed = 0;
  std::size_t missed = 0;
  std::size_t window = 2;
  std::vector<PeakMatch> matches;  // one per observed peak, in observed order

  std::size_t total() const noexcept { return identified_exact + identified_delayed + missed; }
};

/// Detects peaks in `predicted` with the same rule and top_m, then pairs
/// observed and predicted peaks closest-first (ties: earlier predicted index)
/// within +-window steps. Unpaired observed peaks are missed.
PeakReport match_peaks(std::span<const std::size_t> observed_peaks,
                       std::span<const double> predicted, std::size_t window,
                       std::optional<std::size_t> top_m = std::nullopt);

struct EvaluationReport {
  std::size_t n = 0;
  double mse = 0.0;
  std::optional<double> nmse;         // undefined when y is constant
  std::optional<double> correlation;  // undefined when either side is constant
  std::optional<PeakReport> peaks;
};

struct PeakSettings {
  std::size_t window = 2;
  std::optional<std::size_t> top_m;
};

/// All metrics at once; the peak report is skipped for fewer than 3 points.
EvaluationReport evaluate(std::span<const double> y, std::span<const double> yhat,
                          std::optional<PeakSettings> peaks = PeakSettings{});

}  // namespace belpm
