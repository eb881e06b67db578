#pragma once

#include <cstddef>
#include <vector>

#include "mplex/network.hpp"
#include "mplex/paths.hpp"
#include "mplex/types.hpp"

namespace mplex {

/// Off-diagonal entries 1 / p^K_ij with 1 / inf = 0; zero diagonal.
LengthMatrix reciprocal_matrix(const KPathResult& result);

struct HarmonicCentralities {
  std::vector<double> in;   // column sums: speed of collecting information
  std::vector<double> out;  // row sums: speed of broadcasting information
};

HarmonicCentralities harmonic_centralities(const LengthMatrix& reciprocal);

/// Mean reciprocal distance over the N(N-1) ordered pairs. Throws
/// std::invalid_argument for N < 2.
double global_k_efficiency(const LengthMatrix& reciprocal);

enum class EdgeStatus {
  redundant,      // certified: a cheaper route exists
  nonredundant,   // not flagged, and the budget reached the geodesic matrix
  undetermined,   // not flagged at this budget; a larger K might flag it
};

struct RedundantEdge {
  VertexId source = 0;
  VertexId target = 0;
  LayerId layer = 0;
  double weight = 0.0;
  double bound = 0.0;          // p^K_ij + gamma * (number of surcharged switches)
  std::size_t k_detected = 0;  // smallest budget at which the flag was established
  bool undirected_pair = false;  // grouped form only: both directions flagged in an undirected layer
};

/**
 * Classification of every intra-layer edge against the redundancy test
 * at a budget K: the edge (i, j, l) is flagged when its weight exceeds
 * p^K_ij plus gamma for each end of the optimal routes that lies in a
 * different layer than l.
 */
class RedundancyReport {
 public:
  RedundancyReport() = default;
  RedundancyReport(const MultiplexNetwork& network, std::size_t k, bool conclusive,
                   std::vector<RedundantEdge> redundant);

  std::size_t k() const { return k_; }
  /// True when K reached the fixed point, so unflagged edges are nonredundant.
  bool conclusive() const { return conclusive_; }

  /// Flagged directed edges, ordered by (layer, source, target).
  const std::vector<RedundantEdge>& redundant() const { return redundant_; }

  /// Flagged edges with undirected-layer pairs collapsed to one record.
  std::vector<RedundantEdge> grouped(const MultiplexNetwork& network) const;

  EdgeStatus status(const MultiplexNetwork& network, LayerId layer, VertexId i, VertexId j) const;

  /// Edge exists and was not flagged.
  bool is_k_nonredundant(const MultiplexNetwork& network, LayerId layer, VertexId i, VertexId j) const;

  /// Some layer carries a K-nonredundant edge i -> j.
  bool has_nonredundant_edge(VertexId i, VertexId j) const { return nonredundant_pair_(i, j) != 0; }

 private:
  std::size_t k_ = 0;
  bool conclusive_ = false;
  std::vector<RedundantEdge> redundant_;
  std::vector<std::uint8_t> flagged_by_arc_;
  SquareMatrix<std::uint8_t> nonredundant_pair_;
};

RedundancyReport redundant_edges(const PathTensor& tensor, SwitchCost gamma, const KPathResult& result);

/// Redundancy at budget k with each flag annotated by the smallest budget
/// k' <= k at which it already appears.
RedundancyReport earliest_redundancy(const PathTensor& tensor, SwitchCost gamma, const PathSeries& series,
                                     std::size_t k);

struct EfficiencyReport {
  std::size_t k = 1;
  double gamma = 0.0;
  double efficiency = 0.0;
  std::vector<double> h_in;
  std::vector<double> h_out;
  Diameter diameter;  // of the series' final matrix
  std::size_t fixed_point_k = 1;
};

EfficiencyReport efficiency_report(const PathSeries& series, std::size_t k);

}  // namespace mplex
