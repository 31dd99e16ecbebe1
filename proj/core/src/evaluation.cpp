#include "belpm/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <tuple>

#include "belpm/error.hpp"

namespace belpm {

namespace {

void require_same_length(std::span<const double> y, std::span<const double> yhat,
                         std::size_t min_len) {
  if (y.size() != yhat.size()) {
    throw Error(ErrorCode::LengthMismatch, "observed has " + std::to_string(y.size()) +
                                               " values, predicted has " +
                                               std::to_string(yhat.size()));
  }
  if (y.size() < min_len) {
    throw Error(ErrorCode::LengthMismatch,
                "need at least " + std::to_string(min_len) + " values");
  }
}

double mean(std::span<const double> x) {
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

}  // namespace

double mse(std::span<const double> y, std::span<const double> yhat) {
  require_same_length(y, yhat, 1);
  double acc = 0.0;
  for (std::size_t j = 0; j < y.size(); ++j) {
    const double e = y[j] - yhat[j];
    acc += e * e;
  }
  return acc / static_cast<double>(y.size());
}

double nmse(std::span<const double> y, std::span<const double> yhat) {
  require_same_length(y, yhat, 1);
  const double ybar = mean(y);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t j = 0; j < y.size(); ++j) {
    num += (y[j] - yhat[j]) * (y[j] - yhat[j]);
    den += (y[j] - ybar) * (y[j] - ybar);
  }
  if (!(den > 0.0)) throw Error(ErrorCode::ZeroVariance, "observed series is constant");
  return num / den;
}

double correlation(std::span<const double> y, std::span<const double> yhat) {
  require_same_length(y, yhat, 2);
  const double my = mean(y);
  const double mh = mean(yhat);
  double cov = 0.0;
  double vy = 0.0;
  double vh = 0.0;
  for (std::size_t j = 0; j < y.size(); ++j) {
    cov += (y[j] - my) * (yhat[j] - mh);
    vy += (y[j] - my) * (y[j] - my);
    vh += (yhat[j] - mh) * (yhat[j] - mh);
  }
  if (!(vy > 0.0) || !(vh > 0.0)) {
    throw Error(ErrorCode::ZeroVariance, "correlation of a constant sequence");
  }
  // The 1/N factors cancel.
  return std::clamp(cov / std::sqrt(vy * vh), -1.0, 1.0);
}

std::vector<std::size_t> find_peaks(std::span<const double> values,
                                    std::optional<std::size_t> top_m) {
  if (values.size() < 3) {
    throw Error(ErrorCode::SeriesTooShort, "peak detection needs at least 3 values");
  }
  if (top_m && *top_m == 0) throw Error(ErrorCode::InvalidParameter, "top_m must be >= 1");
  std::vector<std::size_t> peaks;
  for (std::size_t t = 1; t + 1 < values.size(); ++t) {
    if (values[t - 1] < values[t] && values[t] >= values[t + 1]) peaks.push_back(t);
  }
  if (top_m && peaks.size() > *top_m) {
    std::stable_sort(peaks.begin(), peaks.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    peaks.resize(*top_m);
    std::sort(peaks.begin(), peaks.end());
  }
  return peaks;
}

PeakReport match_peaks(std::span<const std::size_t> observed_peaks,
                       std::span<const double> predicted, std::size_t window,
                       std::optional<std::size_t> top_m) {
  for (auto t : observed_peaks) {
    if (t >= predicted.size()) {
      throw Error(ErrorCode::LengthMismatch, "observed peak at " + std::to_string(t) +
                                                 " lies beyond the predicted series");
    }
  }
  const auto candidates = find_peaks(predicted, top_m);

  // (|offset|, predicted index, observed slot)
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> pairs;
  for (std::size_t o = 0; o < observed_peaks.size(); ++o) {
    for (auto p : candidates) {
      const auto t = observed_peaks[o];
      const std::size_t dist = p > t ? p - t : t - p;
      if (dist <= window) pairs.emplace_back(dist, p, o);
    }
  }
  std::sort(pairs.begin(), pairs.end());

  PeakReport report;
  report.window = window;
  report.matches.resize(observed_peaks.size());
  for (std::size_t o = 0; o < observed_peaks.size(); ++o) {
    report.matches[o].observed = observed_peaks[o];
  }
  std::vector<bool> taken(predicted.size(), false);
  for (const auto& [dist, p, o] : pairs) {
    auto& match = report.matches[o];
    if (match.predicted || taken[p]) continue;
    taken[p] = true;
    match.predicted = p;
    match.offset = static_cast<std::int64_t>(p) - static_cast<std::int64_t>(match.observed);
  }
  for (const auto& match : report.matches) {
    if (!match.offset) {
      ++report.missed;
    } else if (*match.offset == 0) {
      ++report.identified_exact;
    } else {
      ++report.identified_delayed;
    }
  }
  return report;
}

EvaluationReport evaluate(std::span<const double> y, std::span<const double> yhat,
                          std::optional<PeakSettings> peaks) {
  EvaluationReport report;
  report.mse = mse(y, yhat);
  report.n = y.size();
  try {
    report.nmse = nmse(y, yhat);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ZeroVariance) throw;
  }
  if (y.size() >= 2) {
    try {
      report.correlation = correlation(y, yhat);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ZeroVariance) throw;
    }
  }
  if (peaks && y.size() >= 3) {
    report.peaks = match_peaks(find_peaks(y, peaks->top_m), yhat, peaks->window, peaks->top_m);
  }
  return report;
}

}  // namespace belpm
