#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mplex/types.hpp"

namespace mplex {

/// Outgoing intra-layer arc.
struct Arc {
  VertexId target = 0;
  double weight = 0.0;

  friend bool operator==(const Arc&, const Arc&) = default;
};

/// One directed intra-layer edge with 0-based indices.
struct WeightedEdge {
  LayerId layer = 0;
  VertexId source = 0;
  VertexId target = 0;
  double weight = 0.0;

  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

/**
 * Multiplex network: N vertices shared by L layers, each layer a weighted
 * directed graph without self-loops. A weight of zero means "no edge".
 *
 * Layers are stored in compressed sparse row form with arcs sorted by
 * target. Every arc has a global id (its position across all layers), which
 * lets per-edge annotations live in flat vectors. Instances are immutable.
 */
class MultiplexNetwork {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  MultiplexNetwork() = default;

  /// Throws std::invalid_argument on out-of-range indices, self-loops,
  /// nonpositive or non-finite weights, and duplicates with conflicting
  /// weight. Exact duplicates are merged.
  MultiplexNetwork(std::size_t n_vertices, std::size_t n_layers, std::span<const WeightedEdge> edges,
                   std::vector<std::string> vertex_labels = {},
                   std::vector<std::string> layer_labels = {});

  std::size_t n_vertices() const { return n_; }
  std::size_t n_layers() const { return layers_.size(); }

  std::span<const Arc> out_arcs(LayerId layer, VertexId source) const;

  /// a_ij^(l); zero when there is no such edge.
  double weight(LayerId layer, VertexId source, VertexId target) const;
  bool has_edge(LayerId layer, VertexId source, VertexId target) const {
    return arc_id(layer, source, target) != npos;
  }

  /// Global id of the arc, or npos.
  std::size_t arc_id(LayerId layer, VertexId source, VertexId target) const;
  std::size_t arc_count() const { return arc_base_.empty() ? 0 : arc_base_.back(); }
  std::size_t edge_count(LayerId layer) const { return layers_[layer].arcs.size(); }

  /// True iff the layer's adjacency matrix is symmetric.
  bool is_undirected(LayerId layer) const { return layers_[layer].undirected; }

  /// All arcs in global-id order.
  std::vector<WeightedEdge> edges() const;

  const std::vector<std::string>& vertex_labels() const { return vertex_labels_; }
  const std::vector<std::string>& layer_labels() const { return layer_labels_; }

  /// Copy with the given arcs inserted or reweighted; weight 0 removes the arc.
  MultiplexNetwork with_changes(std::span<const WeightedEdge> changes) const;

  friend bool operator==(const MultiplexNetwork&, const MultiplexNetwork&) = default;

 private:
  struct Layer {
    std::vector<std::size_t> offsets;
    std::vector<Arc> arcs;
    bool undirected = true;

    friend bool operator==(const Layer&, const Layer&) = default;
  };

  std::size_t n_ = 0;
  std::vector<Layer> layers_;
  std::vector<std::size_t> arc_base_;
  std::vector<std::string> vertex_labels_;
  std::vector<std::string> layer_labels_;
};

/// The tensor of layerwise edge lengths: weights where edges exist, +inf
/// where they don't, zero on the diagonal. A non-owning view; the network
/// must outlive it.
class PathTensor {
 public:
  explicit PathTensor(const MultiplexNetwork& network) : network_(&network) {}

  const MultiplexNetwork& network() const { return *network_; }
  std::size_t n_vertices() const { return network_->n_vertices(); }
  std::size_t n_layers() const { return network_->n_layers(); }

  double operator()(VertexId i, VertexId j, LayerId layer) const {
    if (i == j) return 0.0;
    const double w = network_->weight(layer, i, j);
    return w > 0.0 ? w : kInfinity;
  }

 private:
  const MultiplexNetwork* network_;
};

inline PathTensor build_path_tensor(const MultiplexNetwork& network) { return PathTensor(network); }

/// Dense NL x NL supra-adjacency matrix B(gamma): layer adjacencies on the
/// diagonal blocks, gamma * I in every off-diagonal block. Supra-node
/// (vertex i, layer l) has index l * N + i.
LengthMatrix supra_matrix(const MultiplexNetwork& network, SwitchCost gamma);

struct AggregateStructure {
  LengthMatrix sum;                   // A_+ = sum over layers of A^(l)
  SquareMatrix<std::uint8_t> support; // A_+ > 0
};

AggregateStructure aggregate(const MultiplexNetwork& network);

/// Every layer's adjacency transposed; labels preserved.
MultiplexNetwork transpose_network(const MultiplexNetwork& network);

}  // namespace mplex
