#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "belpm/series.hpp"

namespace belpm {

/// First-layer node functions. LinearRescale has no learnable parameter.
enum class KernelKind { Exponential, InverseQuadratic, LinearRescale };

std::string_view to_string(KernelKind kind);
KernelKind parse_kernel(std::string_view name);
constexpr bool is_parametric(KernelKind kind) { return kind != KernelKind::LinearRescale; }

inline constexpr double kInitialBandwidth = 1.0;
inline constexpr double kMinBandwidth = 1e-8;

/// The k smallest distances (ascending) and the training indices they belong to.
struct NeighborSet {
  std::vector<std::size_t> indices;
  std::vector<double> distances;

  std::size_t size() const noexcept { return indices.size(); }
};

struct DistanceStats {
  double min = 0.0;
  double max = 0.0;
};

/// Kernel value of one first-layer node. `stats` is only read by LinearRescale,
/// which throws DegenerateStats when stats.max == 0.
double kernel_eval(KernelKind kind, double distance, double bandwidth, DistanceStats stats);

/// Derivative of kernel_eval with respect to the bandwidth (0 for LinearRescale).
double kernel_bandwidth_derivative(KernelKind kind, double distance, double bandwidth);

struct ForwardResult {
  double output = 0.0;
  NeighborSet neighbors;
  std::vector<double> weights;  // normalized node activations, one per neighbor
};

/// Memory-based kernel regressor: kNN selection, kernel nodes, normalization
/// and target weighting. Bandwidths are indexed by neighbor rank, not by sample.
class AdaptiveNetwork {
 public:
  /// k is clamped to [1, sample count]; bandwidths start at kInitialBandwidth.
  AdaptiveNetwork(EmbeddedDataset data, std::size_t k, KernelKind kernel);
  AdaptiveNetwork(EmbeddedDataset data, std::size_t k, KernelKind kernel,
                  std::vector<double> bandwidths);

  const EmbeddedDataset& data() const noexcept { return data_; }
  std::size_t dim() const noexcept { return data_.dim(); }
  std::size_t sample_count() const noexcept { return data_.size(); }
  std::size_t k() const noexcept { return k_; }
  KernelKind kernel() const noexcept { return kernel_; }
  std::span<const double> bandwidths() const noexcept { return bandwidths_; }

  void set_bandwidths(std::vector<double> bandwidths);

  /// Full four-layer pass. `exclude` removes one stored sample from the candidates.
  ForwardResult forward(std::span<const double> query,
                        std::optional<std::size_t> exclude = std::nullopt) const;

  double predict(std::span<const double> query) const { return forward(query).output; }

 private:
  EmbeddedDataset data_;
  std::size_t k_;
  KernelKind kernel_;
  std::vector<double> bandwidths_;
};

/// Euclidean distance from `query` to every stored input, in storage order.
std::vector<double> euclidean_distances(std::span<const double> query, const AdaptiveNetwork& net);

/// k smallest eligible distances; ties go to the lowest index and k is
/// clamped to the number of eligible samples.
NeighborSet select_k_min(std::span<const double> distances, std::size_t k,
                         std::optional<std::size_t> exclude = std::nullopt);

/// Normalized layer-2 weights for the given neighbors. Falls back to uniform
/// weights when the kernel mass is zero, non-finite or degenerate.
std::vector<double> normalized_weights(KernelKind kind, const NeighborSet& neighbors,
                                       std::span<const double> bandwidths);

/// Leave-one-out predictions: entry j excludes sample j from its own neighbors.
std::vector<double> loo_predictions(const AdaptiveNetwork& net, const EmbeddedDataset& dataset);

/// Sum of squared leave-one-out errors.
double loo_loss(const AdaptiveNetwork& net, const EmbeddedDataset& dataset);

/// Analytic gradient of loo_loss with respect to the k bandwidths.
/// Zero vector for LinearRescale.
std::vector<double> grad_bandwidths(const AdaptiveNetwork& net, const EmbeddedDataset& dataset);

struct SdResult {
  AdaptiveNetwork net;
  std::vector<double> loss_trace;  // epochs + 1 entries, initial loss first
};

/// Steepest descent on the bandwidths with per-iteration backtracking: a step
/// that raises the loss is retried at half the rate. The final loss never
/// exceeds the initial one.
SdResult train_bandwidths_sd(AdaptiveNetwork net, const EmbeddedDataset& dataset, double lr,
                             std::size_t epochs);

}  // namespace belpm
