#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "belpm/series.hpp"

namespace belpm {

/// Error signal driving the orbitofrontal weights.
///  - OrbitofrontalSum: dW_i = beta s_i (sum O - REW), the textbook form.
///  - ModelOutput:      dW_i = beta s_i (E - REW), the original amygdala-
///    orbitofrontal learning rule. Converges on tasks where the former diverges.
enum class OrbitofrontalSignal { OrbitofrontalSum, ModelOutput };

std::string_view to_string(OrbitofrontalSignal signal);
OrbitofrontalSignal parse_orbitofrontal_signal(std::string_view name);

/// Amygdala-orbitofrontal model with linear nodes A_i = V_i s_i, O_i = W_i s_i.
struct ClassicBelModel {
  std::vector<double> v;  // amygdala weights
  std::vector<double> w;  // orbitofrontal weights
  double alpha = 0.5;
  double beta = 0.5;
  OrbitofrontalSignal signal = OrbitofrontalSignal::OrbitofrontalSum;

  ClassicBelModel() = default;
  ClassicBelModel(std::size_t dim, double alpha, double beta,
                  OrbitofrontalSignal signal = OrbitofrontalSignal::OrbitofrontalSum);

  std::size_t dim() const noexcept { return v.size(); }

  bool operator==(const ClassicBelModel&) const = default;
};

struct BelForward {
  double e = 0.0;  // sum A - sum O
  std::vector<double> a;
  std::vector<double> o;
};

BelForward bel_forward(const ClassicBelModel& model, std::span<const double> stimulus);

/// One associative update from the pre-update node outputs. The amygdala
/// step is clamped at zero so V never unlearns.
ClassicBelModel bel_update(ClassicBelModel model, std::span<const double> stimulus, double reward);

/// Sequential updates over every pair, `epochs` times, with REW = target.
ClassicBelModel bel_train(ClassicBelModel model, const EmbeddedDataset& dataset, std::size_t epochs);

inline double bel_predict(const ClassicBelModel& model, std::span<const double> stimulus) {
  return bel_forward(model, stimulus).e;
}

}  // namespace belpm
