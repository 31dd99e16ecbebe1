#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace belpm {

/// Uniformly sampled scalar observations.
struct TimeSeries {
  std::vector<double> values;
  std::int64_t start_time = 0;
  std::int64_t step = 1;

  std::size_t size() const noexcept { return values.size(); }
  std::int64_t time_at(std::size_t index) const noexcept {
    return start_time + static_cast<std::int64_t>(index) * step;
  }

  bool operator==(const TimeSeries&) const = default;
};

/// Throws InvalidParameter unless step > 0 and every value is finite.
void validate(const TimeSeries& series);

/// Input/target pairs produced by time-delay embedding. Inputs are stored
/// row-major, one row of `dim()` values per pair.
class EmbeddedDataset {
 public:
  EmbeddedDataset(std::size_t dim, std::size_t horizon);
  EmbeddedDataset(std::size_t dim, std::size_t horizon, std::vector<double> inputs,
                  std::vector<double> targets);

  std::size_t size() const noexcept { return targets_.size(); }
  bool empty() const noexcept { return targets_.empty(); }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t horizon() const noexcept { return horizon_; }

  std::span<const double> input(std::size_t j) const {
    return {inputs_.data() + j * dim_, dim_};
  }
  double target(std::size_t j) const { return targets_[j]; }

  std::span<const double> inputs() const noexcept { return inputs_; }
  std::span<const double> targets() const noexcept { return targets_; }

  void push_back(std::span<const double> input, double target);

  bool operator==(const EmbeddedDataset&) const = default;

 private:
  std::size_t dim_;
  std::size_t horizon_;
  std::vector<double> inputs_;
  std::vector<double> targets_;
};

/// Contiguous unit-lag windows [x_{t-R+1}..x_t] paired with x_{t+horizon}.
/// Produces size - dim - horizon + 1 pairs in chronological order.
EmbeddedDataset embed(const TimeSeries& series, std::size_t dim, std::size_t horizon);

/// Chronological split: the first `n_train` pairs and the remainder.
std::pair<EmbeddedDataset, EmbeddedDataset> split(const EmbeddedDataset& dataset,
                                                  std::size_t n_train);

/// Discrete Mackey-Glass map
///   x_{t+1} = x_t + 0.1 x_{t-tau} / (1 + x_{t-tau}^10) - 0.01 x_t
/// with constant history x0 for t <= 0. Returns x_{warmup+1} .. x_{warmup+n}.
TimeSeries gen_mackey_glass(std::size_t n, std::size_t tau, double x0, std::size_t warmup);

/// Logistic map x_{t+1} = r x_t (1 - x_t), starting at x0 (included).
TimeSeries gen_logistic(std::size_t n, double r, double x0);

}  // namespace belpm
