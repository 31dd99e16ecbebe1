#include "belpm/belpm_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "belpm/error.hpp"

namespace belpm {

namespace {

using Matrix3 = std::array<std::array<double, 3>, 3>;
using Vector3 = std::array<double, 3>;

// Gaussian elimination with partial pivoting over the active unknowns only;
// inactive unknowns are fixed at zero.
Vector3 solve3(Matrix3 a, Vector3 b, std::array<bool, 3> active) {
  std::array<int, 3> idx{};
  int n = 0;
  for (int i = 0; i < 3; ++i) {
    if (active[i]) idx[n++] = i;
  }
  Vector3 x{};
  if (n == 0) return x;
  double scale = 0.0;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) scale = std::max(scale, std::abs(a[idx[r]][idx[c]]));
  }
  const double tiny = scale * 1e-14;
  // Work on the compacted system.
  Matrix3 m{};
  Vector3 v{};
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) m[r][c] = a[idx[r]][idx[c]];
    v[r] = b[idx[r]];
  }
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    }
    if (!(std::abs(m[pivot][col]) > tiny)) {
      throw Error(ErrorCode::SingularSystem, "normal equations are singular; retry with lambda > 0");
    }
    std::swap(m[col], m[pivot]);
    std::swap(v[col], v[pivot]);
    for (int r = col + 1; r < n; ++r) {
      const double f = m[r][col] / m[col][col];
      for (int c = col; c < n; ++c) m[r][c] -= f * m[col][c];
      v[r] -= f * v[col];
    }
  }
  Vector3 y{};
  for (int r = n - 1; r >= 0; --r) {
    double acc = v[r];
    for (int c = r + 1; c < n; ++c) acc -= m[r][c] * y[c];
    y[r] = acc / m[r][r];
  }
  for (int r = 0; r < n; ++r) x[idx[r]] = y[r];
  return x;
}

std::vector<double> concat_features(std::span<const double> stimulus) {
  return bl_features(stimulus, thalamus(stimulus).max_min);
}

}  // namespace

ThalamusOutput thalamus(std::span<const double> stimulus) {
  if (stimulus.empty()) throw Error(ErrorCode::EmptyInput, "thalamus needs a non-empty stimulus");
  const auto [lo, hi] = std::minmax_element(stimulus.begin(), stimulus.end());
  return {{stimulus.begin(), stimulus.end()}, {*hi, *lo}};
}

std::vector<double> bl_features(std::span<const double> cortex, std::array<double, 2> max_min) {
  if (cortex.empty()) throw Error(ErrorCode::DimensionMismatch, "cortex signal is empty");
  std::vector<double> out(cortex.begin(), cortex.end());
  out.push_back(max_min[0]);
  out.push_back(max_min[1]);
  return out;
}

Punishments punishments(double target, double amygdala_response, double orbitofrontal_response) {
  const CmWeights cm;
  Punishments p;
  p.amygdala = cm.wa1 * target + cm.wa2 * amygdala_response + cm.wa3;
  p.expected = p.amygdala;
  p.orbitofrontal = orbitofrontal_response - p.expected;
  return p;
}

CmWeights cm_lse_fit(std::span<const double> amygdala_responses,
                     std::span<const double> orbitofrontal_responses,
                     std::span<const double> targets, double lambda) {
  const std::size_t n = targets.size();
  if (amygdala_responses.size() != n || orbitofrontal_responses.size() != n) {
    throw Error(ErrorCode::LengthMismatch, "fusion inputs must have equal lengths");
  }
  if (n == 0) throw Error(ErrorCode::TooFewSamples, "fusion fit needs at least one sample");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::InvalidParameter, "lambda must be finite and non-negative");
  }
  Matrix3 gram{};
  Vector3 rhs{};
  for (std::size_t j = 0; j < n; ++j) {
    const Vector3 row{amygdala_responses[j], orbitofrontal_responses[j], 1.0};
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) gram[r][c] += row[r] * row[c];
      rhs[r] += row[r] * targets[j];
    }
  }
  // An all-zero design column carries no information; its weight is pinned to 0.
  std::array<bool, 3> active{};
  for (int d = 0; d < 3; ++d) {
    active[d] = lambda > 0.0 || gram[d][d] > 0.0;
    gram[d][d] += lambda;
  }
  const auto w = solve3(gram, rhs, active);
  CmWeights out;
  out.w1 = w[0];
  out.w2 = w[1];
  out.w3 = w[2];
  return out;
}

BelpmModel train(const EmbeddedDataset& train_set, const BelpmConfig& config) {
  if (train_set.size() < 2) {
    throw Error(ErrorCode::TooFewSamples, "training needs at least 2 samples, got " +
                                              std::to_string(train_set.size()));
  }
  if (config.k_a == 0 || config.k_o == 0) {
    throw Error(ErrorCode::InvalidParameter, "k_a and k_o must be >= 1");
  }
  const std::size_t n = train_set.size();
  const std::size_t dim = train_set.dim();

  EmbeddedDataset bl_data(dim + 2, train_set.horizon());
  for (std::size_t j = 0; j < n; ++j) {
    bl_data.push_back(concat_features(train_set.input(j)), train_set.target(j));
  }
  auto bl_fit = train_bandwidths_sd(AdaptiveNetwork(bl_data, config.k_a, config.kernel_a), bl_data,
                                    config.lr, config.epochs);
  const auto r_a = loo_predictions(bl_fit.net, bl_data);

  std::vector<double> residuals(n);
  for (std::size_t j = 0; j < n; ++j) {
    residuals[j] = punishments(train_set.target(j), r_a[j], 0.0).expected;
  }
  EmbeddedDataset mo_data(dim, train_set.horizon(),
                          {train_set.inputs().begin(), train_set.inputs().end()}, residuals);
  auto mo_fit = train_bandwidths_sd(AdaptiveNetwork(mo_data, config.k_o, config.kernel_o), mo_data,
                                    config.lr, config.epochs);
  const auto r_o = loo_predictions(mo_fit.net, mo_data);

  const auto cm = cm_lse_fit(r_a, r_o, train_set.targets(), config.lambda);

  return BelpmModel{{dim, train_set.horizon()},
                    std::move(bl_fit.net),
                    std::move(mo_fit.net),
                    cm,
                    LoWeights{},
                    config,
                    std::move(bl_fit.loss_trace),
                    std::move(mo_fit.loss_trace)};
}

double amygdala_response(const BelpmModel& model, std::span<const double> stimulus) {
  if (stimulus.size() != model.embedding.dim) {
    throw Error(ErrorCode::DimensionMismatch,
                "expected stimulus of dimension " + std::to_string(model.embedding.dim));
  }
  return model.bl.predict(concat_features(stimulus));
}

double predict(const BelpmModel& model, std::span<const double> stimulus) {
  const double r_a = amygdala_response(model, stimulus);
  const double r_o = model.mo.predict(stimulus);
  return model.cm.fuse(r_a, r_o);
}

TimeSeries predict_series(const BelpmModel& model, const TimeSeries& series) {
  const auto windows = embed(series, model.embedding.dim, model.embedding.horizon);
  TimeSeries out;
  out.step = series.step;
  out.start_time = series.time_at(model.embedding.dim - 1 + model.embedding.horizon);
  out.values.reserve(windows.size());
  for (std::size_t j = 0; j < windows.size(); ++j) out.values.push_back(predict(model, windows.input(j)));
  return out;
}

}  // namespace belpm
