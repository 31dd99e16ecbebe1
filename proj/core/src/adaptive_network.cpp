#include "belpm/adaptive_network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "belpm/error.hpp"

namespace belpm {

namespace {

void require_dataset_matches(const AdaptiveNetwork& net, const EmbeddedDataset& dataset) {
  if (dataset.dim() != net.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "dataset dimension " + std::to_string(dataset.dim()) +
                                                  " != network dimension " +
                                                  std::to_string(net.dim()));
  }
  const auto& stored = net.data();
  if (dataset.size() != stored.size() ||
      !std::equal(dataset.inputs().begin(), dataset.inputs().end(), stored.inputs().begin()) ||
      !std::equal(dataset.targets().begin(), dataset.targets().end(), stored.targets().begin())) {
    throw Error(ErrorCode::InvalidParameter,
                "leave-one-out evaluation requires the network's own training data");
  }
  if (stored.size() < 2) {
    throw Error(ErrorCode::TooFewSamples, "leave-one-out needs at least 2 samples");
  }
}

// Neighbor sets do not depend on the bandwidths, so training computes them once.
std::vector<NeighborSet> loo_neighbors(const AdaptiveNetwork& net) {
  const auto& data = net.data();
  std::vector<NeighborSet> out;
  out.reserve(data.size());
  for (std::size_t j = 0; j < data.size(); ++j) {
    out.push_back(select_k_min(euclidean_distances(data.input(j), net), net.k(), j));
  }
  return out;
}

double weighted_output(const NeighborSet& nb, std::span<const double> weights,
                       std::span<const double> targets) {
  double out = 0.0;
  for (std::size_t m = 0; m < nb.size(); ++m) out += weights[m] * targets[nb.indices[m]];
  return out;
}

double cached_loss(const std::vector<NeighborSet>& neighbors, KernelKind kind,
                   std::span<const double> bandwidths, std::span<const double> targets) {
  double loss = 0.0;
  for (std::size_t j = 0; j < neighbors.size(); ++j) {
    const auto w = normalized_weights(kind, neighbors[j], bandwidths);
    const double e = weighted_output(neighbors[j], w, targets) - targets[j];
    loss += e * e;
  }
  return loss;
}

std::vector<double> cached_gradient(const std::vector<NeighborSet>& neighbors, KernelKind kind,
                                    std::span<const double> bandwidths,
                                    std::span<const double> targets) {
  std::vector<double> grad(bandwidths.size(), 0.0);
  if (!is_parametric(kind)) return grad;
  std::vector<double> act;
  for (std::size_t j = 0; j < neighbors.size(); ++j) {
    const auto& nb = neighbors[j];
    act.resize(nb.size());
    double mass = 0.0;
    for (std::size_t m = 0; m < nb.size(); ++m) {
      act[m] = kernel_eval(kind, nb.distances[m], bandwidths[m], {});
      mass += act[m];
    }
    // Uniform fallback has no bandwidth dependence.
    if (!(mass > 0.0) || !std::isfinite(mass)) continue;
    double y = 0.0;
    for (std::size_t m = 0; m < nb.size(); ++m) y += act[m] / mass * targets[nb.indices[m]];
    const double outer = 2.0 * (y - targets[j]);
    for (std::size_t m = 0; m < nb.size(); ++m) {
      const double dk = kernel_bandwidth_derivative(kind, nb.distances[m], bandwidths[m]);
      grad[m] += outer * dk * (targets[nb.indices[m]] - y) / mass;
    }
  }
  return grad;
}

}  // namespace

std::string_view to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::Exponential: return "exponential";
    case KernelKind::InverseQuadratic: return "inverse_quadratic";
    case KernelKind::LinearRescale: return "linear_rescale";
  }
  return "unknown";
}

KernelKind parse_kernel(std::string_view name) {
  if (name == "exponential") return KernelKind::Exponential;
  if (name == "inverse_quadratic") return KernelKind::InverseQuadratic;
  if (name == "linear_rescale") return KernelKind::LinearRescale;
  throw Error(ErrorCode::InvalidParameter, "unknown kernel '" + std::string(name) + "'");
}

double kernel_eval(KernelKind kind, double distance, double bandwidth, DistanceStats stats) {
  switch (kind) {
    case KernelKind::Exponential:
      return std::exp(-distance * bandwidth);
    case KernelKind::InverseQuadratic: {
      const double u = distance * bandwidth;
      return 1.0 / (1.0 + u * u);
    }
    case KernelKind::LinearRescale:
      if (!(stats.max > 0.0)) {
        throw Error(ErrorCode::DegenerateStats, "linear rescale kernel needs max distance > 0");
      }
      return (stats.max - (distance - stats.min)) / stats.max;
  }
  return 0.0;
}

double kernel_bandwidth_derivative(KernelKind kind, double distance, double bandwidth) {
  switch (kind) {
    case KernelKind::Exponential:
      return -distance * std::exp(-distance * bandwidth);
    case KernelKind::InverseQuadratic: {
      const double u = distance * bandwidth;
      const double den = 1.0 + u * u;
      return -2.0 * distance * u / (den * den);
    }
    case KernelKind::LinearRescale:
      return 0.0;
  }
  return 0.0;
}

AdaptiveNetwork::AdaptiveNetwork(EmbeddedDataset data, std::size_t k, KernelKind kernel)
    : AdaptiveNetwork(std::move(data), k, kernel, {}) {}

AdaptiveNetwork::AdaptiveNetwork(EmbeddedDataset data, std::size_t k, KernelKind kernel,
                                 std::vector<double> bandwidths)
    : data_(std::move(data)), k_(k), kernel_(kernel) {
  if (data_.empty()) throw Error(ErrorCode::TooFewSamples, "adaptive network needs training data");
  if (k_ == 0) throw Error(ErrorCode::InvalidParameter, "k must be >= 1");
  k_ = std::min(k_, data_.size());
  if (bandwidths.empty()) bandwidths.assign(k_, kInitialBandwidth);
  set_bandwidths(std::move(bandwidths));
}

void AdaptiveNetwork::set_bandwidths(std::vector<double> bandwidths) {
  if (bandwidths.size() != k_) {
    throw Error(ErrorCode::DimensionMismatch,
                "expected " + std::to_string(k_) + " bandwidths, got " +
                    std::to_string(bandwidths.size()));
  }
  for (double b : bandwidths) {
    if (!std::isfinite(b) || (is_parametric(kernel_) && !(b > 0.0))) {
      throw Error(ErrorCode::InvalidParameter, "bandwidths must be finite and positive");
    }
  }
  bandwidths_ = std::move(bandwidths);
}

ForwardResult AdaptiveNetwork::forward(std::span<const double> query,
                                       std::optional<std::size_t> exclude) const {
  ForwardResult result;
  result.neighbors = select_k_min(euclidean_distances(query, *this), k_, exclude);
  result.weights = normalized_weights(kernel_, result.neighbors, bandwidths_);
  result.output = weighted_output(result.neighbors, result.weights, data_.targets());
  return result;
}

std::vector<double> euclidean_distances(std::span<const double> query, const AdaptiveNetwork& net) {
  if (query.size() != net.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "query dimension " + std::to_string(query.size()) +
                                                  " != stored dimension " +
                                                  std::to_string(net.dim()));
  }
  const auto& data = net.data();
  std::vector<double> out(data.size());
  for (std::size_t j = 0; j < data.size(); ++j) {
    const auto row = data.input(j);
    double acc = 0.0;
    for (std::size_t i = 0; i < query.size(); ++i) {
      const double diff = query[i] - row[i];
      acc += diff * diff;
    }
    out[j] = std::sqrt(acc);
  }
  return out;
}

NeighborSet select_k_min(std::span<const double> distances, std::size_t k,
                         std::optional<std::size_t> exclude) {
  if (k == 0) throw Error(ErrorCode::InvalidParameter, "k must be >= 1");
  std::vector<std::size_t> order;
  order.reserve(distances.size());
  for (std::size_t j = 0; j < distances.size(); ++j) {
    if (!exclude || *exclude != j) order.push_back(j);
  }
  if (order.empty()) throw Error(ErrorCode::NoEligibleSamples, "no eligible samples");
  const std::size_t take = std::min(k, order.size());
  const auto closer = [&](std::size_t a, std::size_t b) {
    return distances[a] < distances[b] || (distances[a] == distances[b] && a < b);
  };
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take), order.end(),
                    closer);
  NeighborSet out;
  out.indices.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take));
  out.distances.reserve(take);
  for (auto idx : out.indices) out.distances.push_back(distances[idx]);
  return out;
}

std::vector<double> normalized_weights(KernelKind kind, const NeighborSet& neighbors,
                                       std::span<const double> bandwidths) {
  const std::size_t k = neighbors.size();
  std::vector<double> w(k);
  const auto uniform = [&] {
    std::fill(w.begin(), w.end(), 1.0 / static_cast<double>(k));
    return w;
  };
  if (k == 0) return w;
  if (bandwidths.size() < k) {
    throw Error(ErrorCode::DimensionMismatch, "fewer bandwidths than neighbors");
  }
  DistanceStats stats;
  if (kind == KernelKind::LinearRescale) {
    // Distances are ascending.
    stats = {neighbors.distances.front(), neighbors.distances.back()};
    if (!(stats.max > 0.0)) return uniform();
  }
  double mass = 0.0;
  for (std::size_t m = 0; m < k; ++m) {
    w[m] = kernel_eval(kind, neighbors.distances[m], bandwidths[m], stats);
    mass += w[m];
  }
  if (!(mass > 0.0) || !std::isfinite(mass)) return uniform();
  for (auto& v : w) v /= mass;
  return w;
}

std::vector<double> loo_predictions(const AdaptiveNetwork& net, const EmbeddedDataset& dataset) {
  require_dataset_matches(net, dataset);
  const auto neighbors = loo_neighbors(net);
  std::vector<double> out(neighbors.size());
  for (std::size_t j = 0; j < neighbors.size(); ++j) {
    const auto w = normalized_weights(net.kernel(), neighbors[j], net.bandwidths());
    out[j] = weighted_output(neighbors[j], w, dataset.targets());
  }
  return out;
}

double loo_loss(const AdaptiveNetwork& net, const EmbeddedDataset& dataset) {
  require_dataset_matches(net, dataset);
  return cached_loss(loo_neighbors(net), net.kernel(), net.bandwidths(), dataset.targets());
}

std::vector<double> grad_bandwidths(const AdaptiveNetwork& net, const EmbeddedDataset& dataset) {
  require_dataset_matches(net, dataset);
  if (!is_parametric(net.kernel())) return std::vector<double>(net.k(), 0.0);
  return cached_gradient(loo_neighbors(net), net.kernel(), net.bandwidths(), dataset.targets());
}

SdResult train_bandwidths_sd(AdaptiveNetwork net, const EmbeddedDataset& dataset, double lr,
                             std::size_t epochs) {
  if (!(lr > 0.0) || !std::isfinite(lr)) {
    throw Error(ErrorCode::InvalidParameter, "learning rate must be positive");
  }
  require_dataset_matches(net, dataset);
  const auto neighbors = loo_neighbors(net);
  const auto targets = dataset.targets();
  const auto kind = net.kernel();

  std::vector<double> b(net.bandwidths().begin(), net.bandwidths().end());
  double loss = cached_loss(neighbors, kind, b, targets);
  std::vector<double> trace{loss};
  trace.reserve(epochs + 1);

  constexpr int kMaxHalvings = 40;
  std::vector<double> candidate(b.size());
  for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
    if (is_parametric(kind)) {
      const auto grad = cached_gradient(neighbors, kind, b, targets);
      double step = lr;
      for (int attempt = 0; attempt < kMaxHalvings; ++attempt, step *= 0.5) {
        for (std::size_t m = 0; m < b.size(); ++m) {
          candidate[m] = std::max(b[m] - step * grad[m], kMinBandwidth);
        }
        const double trial = cached_loss(neighbors, kind, candidate, targets);
        if (trial <= loss) {
          b = candidate;
          loss = trial;
          break;
        }
      }
    }
    trace.push_back(loss);
  }
  net.set_bandwidths(std::move(b));
  return {std::move(net), std::move(trace)};
}

}  // namespace belpm
