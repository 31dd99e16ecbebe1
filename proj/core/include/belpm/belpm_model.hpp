#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "belpm/adaptive_network.hpp"
#include "belpm/series.hpp"

namespace belpm {

struct EmbeddingConfig {
  std::size_t dim = 3;
  std::size_t horizon = 1;

  bool operator==(const EmbeddingConfig&) const = default;
};

/// Thalamus: AGG passes the stimulus through, MAX_MIN reports its extremes.
struct ThalamusOutput {
  std::vector<double> agg;
  std::array<double, 2> max_min{};  // {max, min}
};

ThalamusOutput thalamus(std::span<const double> stimulus);

/// BL input: the cortex signal followed by the thalamic {max, min} pair.
std::vector<double> bl_features(std::span<const double> cortex, std::array<double, 2> max_min);

struct Punishments {
  double amygdala = 0.0;       // p_a = r_u - r_a
  double expected = 0.0;       // p_a^e, forwarded to the orbitofrontal path
  double orbitofrontal = 0.0;  // p_o = r_o - p_a^e
};

Punishments punishments(double target, double amygdala_response, double orbitofrontal_response);

/// Centro-medial amygdala. (w1, w2, w3) fuse the BL and MO responses;
/// (wa1, wa2, wa3) form the punishment node and stay at (1, -1, 0).
struct CmWeights {
  double w1 = 1.0;
  double w2 = 0.0;
  double w3 = 0.0;
  double wa1 = 1.0;
  double wa2 = -1.0;
  double wa3 = 0.0;

  double fuse(double amygdala_response, double orbitofrontal_response) const {
    return w1 * amygdala_response + w2 * orbitofrontal_response + w3;
  }

  bool operator==(const CmWeights&) const = default;
};

/// Lateral orbitofrontal punishment node; the per-sample bias carries -p_a^e.
struct LoWeights {
  double wo1 = 1.0;
  double wo2 = 0.0;

  bool operator==(const LoWeights&) const = default;
};

/// Ridge-regularized least squares for the fusion weights:
/// minimizes sum_j (w1 r_a + w2 r_o + w3 - r_u)^2 + lambda |w|^2 through the
/// 3x3 normal equations. Throws SingularSystem when lambda == 0 and the
/// design is rank deficient.
CmWeights cm_lse_fit(std::span<const double> amygdala_responses,
                     std::span<const double> orbitofrontal_responses,
                     std::span<const double> targets, double lambda);

struct BelpmConfig {
  std::size_t k_a = 8;
  std::size_t k_o = 8;
  KernelKind kernel_a = KernelKind::Exponential;
  KernelKind kernel_o = KernelKind::Exponential;
  double lr = 0.05;
  std::size_t epochs = 50;
  double lambda = 1e-8;

  bool operator==(const BelpmConfig&) const = default;
};

struct BelpmModel {
  EmbeddingConfig embedding;
  AdaptiveNetwork bl;  // (R+2)-dim features, targets r_u
  AdaptiveNetwork mo;  // R-dim features, targets are BL residuals
  CmWeights cm;
  LoWeights lo;
  BelpmConfig config;
  std::vector<double> bl_loss_trace;
  std::vector<double> mo_loss_trace;
};

/// First learning phase: SD on the BL bandwidths, BL leave-one-out residuals
/// as MO targets, SD on the MO bandwidths, then LSE for the CM fusion weights.
BelpmModel train(const EmbeddedDataset& train_set, const BelpmConfig& config);

/// Primary response r_a for one stimulus (no exclusion).
double amygdala_response(const BelpmModel& model, std::span<const double> stimulus);

double predict(const BelpmModel& model, std::span<const double> stimulus);

/// One direct-strategy prediction per embeddable window of `series`. Output
/// times are the target times.
TimeSeries predict_series(const BelpmModel& model, const TimeSeries& series);

}  // namespace belpm
