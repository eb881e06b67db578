#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mplex/layer_set.hpp"
#include "mplex/network.hpp"
#include "mplex/types.hpp"

namespace mplex {

/**
 * K-path length matrix P^K together with the layer sets of optimal paths:
 * arrival(i, j) holds the layers of the last intra-layer edges and
 * start(i, j) the layers of the first intra-layer edges, over all shortest
 * paths from i to j that use at most k intra-layer edges.
 */
struct KPathResult {
  std::size_t k = 1;
  SwitchCost gamma;
  LengthMatrix p;
  LayerSetMatrix arrival;
  LayerSetMatrix start;
  // P^k equals the geodesic matrix P, with identical layer sets.
  bool at_fixed_point = false;

  std::size_t n_vertices() const { return p.size(); }
};

/// P^1: the cheapest single intra-layer edge for every pair. Independent of gamma.
KPathResult one_path_matrix(const PathTensor& tensor, SwitchCost gamma = {});

/// One min-plus step P^K = P^{K-1} * P^1 for gamma = 0. Throws
/// std::invalid_argument when either input carries a nonzero switch cost.
KPathResult k_path_minplus_power(const KPathResult& prev, const KPathResult& p1);

/**
 * P^K for every K = 1, 2, ... up to a cap, computed by a per-source dynamic
 * program over (vertex, layer of last edge) states. The sweep stops once
 * every source's state table is stationary, so K beyond the computed range
 * maps to the last stored result.
 */
class PathSeries {
 public:
  PathSeries(std::vector<KPathResult> results, bool stabilized, std::size_t k_cap);

  /// P^k; k >= 1.
  const KPathResult& at(std::size_t k) const;
  const KPathResult& final() const { return results_.back(); }

  /// Number of stored results (P^1 .. P^computed()).
  std::size_t computed() const { return results_.size(); }
  /// True when the state tables stopped changing within the cap.
  bool stabilized() const { return stabilized_; }
  std::size_t k_cap() const { return k_cap_; }
  /// Smallest k with P^k equal to final().p.
  std::size_t fixed_point_k() const;

 private:
  std::vector<KPathResult> results_;
  bool stabilized_ = false;
  std::size_t k_cap_ = 0;
};

/// k_max defaults to N - 1 (at least 1).
PathSeries k_path_series(const PathTensor& tensor, SwitchCost gamma,
                         std::optional<std::size_t> k_max = std::nullopt);

KPathResult k_path_gamma(const PathTensor& tensor, SwitchCost gamma, std::size_t k);

struct PathLengthMatrix {
  KPathResult result;
  std::size_t fixed_point_k = 1;
};

PathLengthMatrix path_length_matrix(const PathTensor& tensor, SwitchCost gamma,
                                    std::optional<std::size_t> k_max = std::nullopt);

/// Geodesic distances by Dijkstra on the supra graph of B(gamma), with every
/// copy of the source as a zero-cost start. Verification oracle.
LengthMatrix supra_dijkstra_oracle(const MultiplexNetwork& network, SwitchCost gamma);

struct Diameter {
  double value = 0.0;              // largest finite off-diagonal entry
  std::vector<VertexPair> pairs;   // all pairs attaining it, row-major order
  bool disconnected = false;       // some off-diagonal entry is +inf
};

Diameter diameter(const KPathResult& result);

}  // namespace mplex
