#include "belpm/series.hpp"

#include <cmath>
#include <string>

#include "belpm/error.hpp"

namespace belpm {

void validate(const TimeSeries& series) {
  if (series.step <= 0) {
    throw Error(ErrorCode::InvalidParameter, "time step must be positive");
  }
  for (std::size_t i = 0; i < series.values.size(); ++i) {
    if (!std::isfinite(series.values[i])) {
      throw Error(ErrorCode::InvalidParameter,
                  "non-finite value at index " + std::to_string(i));
    }
  }
}

EmbeddedDataset::EmbeddedDataset(std::size_t dim, std::size_t horizon)
    : dim_(dim), horizon_(horizon) {
  if (dim == 0) throw Error(ErrorCode::InvalidParameter, "embedding dimension must be >= 1");
}

EmbeddedDataset::EmbeddedDataset(std::size_t dim, std::size_t horizon, std::vector<double> inputs,
                                 std::vector<double> targets)
    : EmbeddedDataset(dim, horizon) {
  if (inputs.size() != targets.size() * dim) {
    throw Error(ErrorCode::DimensionMismatch, "input matrix does not have " +
                                                  std::to_string(targets.size()) + " rows of " +
                                                  std::to_string(dim));
  }
  for (double v : inputs) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidParameter, "non-finite input");
  }
  for (double v : targets) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidParameter, "non-finite target");
  }
  inputs_ = std::move(inputs);
  targets_ = std::move(targets);
}

void EmbeddedDataset::push_back(std::span<const double> input, double target) {
  if (input.size() != dim_) {
    throw Error(ErrorCode::DimensionMismatch, "expected input of dimension " + std::to_string(dim_));
  }
  inputs_.insert(inputs_.end(), input.begin(), input.end());
  targets_.push_back(target);
}

EmbeddedDataset embed(const TimeSeries& series, std::size_t dim, std::size_t horizon) {
  if (dim == 0 || horizon == 0) {
    throw Error(ErrorCode::InvalidParameter, "embedding dimension and horizon must be >= 1");
  }
  const auto& x = series.values;
  if (x.size() < dim + horizon) {
    throw Error(ErrorCode::SeriesTooShort,
                "need at least " + std::to_string(dim + horizon) + " values, got " +
                    std::to_string(x.size()));
  }
  const std::size_t count = x.size() - dim - horizon + 1;
  std::vector<double> inputs;
  std::vector<double> targets;
  inputs.reserve(count * dim);
  targets.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    inputs.insert(inputs.end(), x.begin() + static_cast<std::ptrdiff_t>(j),
                  x.begin() + static_cast<std::ptrdiff_t>(j + dim));
    targets.push_back(x[j + dim - 1 + horizon]);
  }
  return {dim, horizon, std::move(inputs), std::move(targets)};
}

std::pair<EmbeddedDataset, EmbeddedDataset> split(const EmbeddedDataset& dataset,
                                                  std::size_t n_train) {
  if (n_train > dataset.size()) {
    throw Error(ErrorCode::IndexOutOfRange, "n_train " + std::to_string(n_train) +
                                                " exceeds dataset size " +
                                                std::to_string(dataset.size()));
  }
  const auto dim = dataset.dim();
  const auto in = dataset.inputs();
  const auto tg = dataset.targets();
  const auto cut = static_cast<std::ptrdiff_t>(n_train);
  const auto cut_in = static_cast<std::ptrdiff_t>(n_train * dim);
  EmbeddedDataset train(dim, dataset.horizon(), {in.begin(), in.begin() + cut_in},
                        {tg.begin(), tg.begin() + cut});
  EmbeddedDataset test(dim, dataset.horizon(), {in.begin() + cut_in, in.end()},
                       {tg.begin() + cut, tg.end()});
  return {std::move(train), std::move(test)};
}

TimeSeries gen_mackey_glass(std::size_t n, std::size_t tau, double x0, std::size_t warmup) {
  if (n == 0) throw Error(ErrorCode::InvalidParameter, "n must be >= 1");
  if (tau == 0) throw Error(ErrorCode::InvalidParameter, "tau must be >= 1");
  if (!(x0 > 0.0 && x0 < 2.0)) throw Error(ErrorCode::InvalidParameter, "x0 must lie in (0, 2)");

  // history[t] holds x_t for t in [0, warmup + n]; x_t = x0 for t <= 0.
  std::vector<double> history(warmup + n + 1);
  history[0] = x0;
  for (std::size_t t = 0; t < warmup + n; ++t) {
    const double xt = history[t];
    const double lagged = t >= tau ? history[t - tau] : x0;
    history[t + 1] = xt + 0.1 * lagged / (1.0 + std::pow(lagged, 10)) - 0.01 * xt;
  }
  TimeSeries out;
  out.values.assign(history.begin() + static_cast<std::ptrdiff_t>(warmup + 1), history.end());
  return out;
}

TimeSeries gen_logistic(std::size_t n, double r, double x0) {
  if (n == 0) throw Error(ErrorCode::InvalidParameter, "n must be >= 1");
  if (!(r > 0.0 && r <= 4.0)) throw Error(ErrorCode::InvalidParameter, "r must lie in (0, 4]");
  if (!(x0 > 0.0 && x0 < 1.0)) throw Error(ErrorCode::InvalidParameter, "x0 must lie in (0, 1)");
  TimeSeries out;
  out.values.reserve(n);
  double x = x0;
  for (std::size_t t = 0; t < n; ++t) {
    out.values.push_back(x);
    x = r * x * (1.0 - x);
  }
  return out;
}

}  // namespace belpm
