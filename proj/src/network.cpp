#include "mplex/network.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>

namespace mplex {

namespace {

std::string describe(const WeightedEdge& e) {
  return "(layer " + std::to_string(e.layer + 1) + ", " + std::to_string(e.source + 1) + " -> " +
         std::to_string(e.target + 1) + ")";
}

}  // namespace

MultiplexNetwork::MultiplexNetwork(std::size_t n_vertices, std::size_t n_layers,
                                   std::span<const WeightedEdge> edges,
                                   std::vector<std::string> vertex_labels,
                                   std::vector<std::string> layer_labels)
    : n_(n_vertices),
      layers_(n_layers),
      vertex_labels_(std::move(vertex_labels)),
      layer_labels_(std::move(layer_labels)) {
  if (n_vertices == 0) throw std::invalid_argument("a multiplex needs at least one vertex");
  if (n_layers == 0) throw std::invalid_argument("a multiplex needs at least one layer");
  if (!vertex_labels_.empty() && vertex_labels_.size() != n_vertices)
    throw std::invalid_argument("vertex label count does not match the number of vertices");
  if (!layer_labels_.empty() && layer_labels_.size() != n_layers)
    throw std::invalid_argument("layer label count does not match the number of layers");

  std::vector<WeightedEdge> sorted(edges.begin(), edges.end());
  for (const auto& e : sorted) {
    if (e.layer >= n_layers || e.source >= n_vertices || e.target >= n_vertices)
      throw std::invalid_argument("edge index out of range " + describe(e));
    if (e.source == e.target) throw std::invalid_argument("self-loop " + describe(e));
    if (!(e.weight > 0.0) || !std::isfinite(e.weight))
      throw std::invalid_argument("edge weight must be positive and finite " + describe(e));
  }
  std::sort(sorted.begin(), sorted.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    return std::tie(a.layer, a.source, a.target) < std::tie(b.layer, b.source, b.target);
  });

  std::size_t pos = 0;
  for (LayerId l = 0; l < n_layers; ++l) {
    auto& layer = layers_[l];
    layer.offsets.assign(n_vertices + 1, 0);
    for (VertexId i = 0; i < n_vertices; ++i) {
      layer.offsets[i] = layer.arcs.size();
      while (pos < sorted.size() && sorted[pos].layer == l && sorted[pos].source == i) {
        const auto& e = sorted[pos++];
        if (!layer.arcs.empty() && layer.offsets[i] < layer.arcs.size() &&
            layer.arcs.back().target == e.target) {
          if (layer.arcs.back().weight != e.weight)
            throw std::invalid_argument("duplicate edge with conflicting weight " + describe(e));
          continue;
        }
        layer.arcs.push_back({e.target, e.weight});
      }
    }
    layer.offsets[n_vertices] = layer.arcs.size();
  }

  arc_base_.assign(n_layers + 1, 0);
  for (LayerId l = 0; l < n_layers; ++l) arc_base_[l + 1] = arc_base_[l] + layers_[l].arcs.size();

  for (LayerId l = 0; l < n_layers; ++l) {
    bool symmetric = true;
    for (VertexId i = 0; i < n_vertices && symmetric; ++i)
      for (const auto& a : out_arcs(l, i))
        if (weight(l, a.target, i) != a.weight) {
          symmetric = false;
          break;
        }
    layers_[l].undirected = symmetric;
  }
}

std::span<const Arc> MultiplexNetwork::out_arcs(LayerId layer, VertexId source) const {
  const auto& ly = layers_[layer];
  return {ly.arcs.data() + ly.offsets[source], ly.offsets[source + 1] - ly.offsets[source]};
}

std::size_t MultiplexNetwork::arc_id(LayerId layer, VertexId source, VertexId target) const {
  auto arcs = out_arcs(layer, source);
  auto it = std::lower_bound(arcs.begin(), arcs.end(), target,
                             [](const Arc& a, VertexId t) { return a.target < t; });
  if (it == arcs.end() || it->target != target) return npos;
  return arc_base_[layer] + layers_[layer].offsets[source] +
         static_cast<std::size_t>(it - arcs.begin());
}

double MultiplexNetwork::weight(LayerId layer, VertexId source, VertexId target) const {
  auto arcs = out_arcs(layer, source);
  auto it = std::lower_bound(arcs.begin(), arcs.end(), target,
                             [](const Arc& a, VertexId t) { return a.target < t; });
  return (it != arcs.end() && it->target == target) ? it->weight : 0.0;
}

std::vector<WeightedEdge> MultiplexNetwork::edges() const {
  std::vector<WeightedEdge> out;
  out.reserve(arc_count());
  for (LayerId l = 0; l < n_layers(); ++l)
    for (VertexId i = 0; i < n_; ++i)
      for (const auto& a : out_arcs(l, i)) out.push_back({l, i, a.target, a.weight});
  return out;
}

MultiplexNetwork MultiplexNetwork::with_changes(std::span<const WeightedEdge> changes) const {
  std::map<std::tuple<LayerId, VertexId, VertexId>, double> table;
  for (const auto& e : edges()) table[{e.layer, e.source, e.target}] = e.weight;
  for (const auto& c : changes) {
    if (c.weight == 0.0)
      table.erase({c.layer, c.source, c.target});
    else
      table[{c.layer, c.source, c.target}] = c.weight;
  }
  std::vector<WeightedEdge> updated;
  updated.reserve(table.size());
  for (const auto& [key, w] : table) updated.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), w});
  return MultiplexNetwork(n_, n_layers(), updated, vertex_labels_, layer_labels_);
}

LengthMatrix supra_matrix(const MultiplexNetwork& network, SwitchCost gamma) {
  const std::size_t n = network.n_vertices();
  const std::size_t nl = n * network.n_layers();
  LengthMatrix b(nl, 0.0);
  for (LayerId l = 0; l < network.n_layers(); ++l) {
    for (VertexId i = 0; i < n; ++i) {
      for (const auto& a : network.out_arcs(l, i)) b(l * n + i, l * n + a.target) = a.weight;
      for (LayerId m = 0; m < network.n_layers(); ++m)
        if (m != l) b(l * n + i, m * n + i) = gamma.value();
    }
  }
  return b;
}

AggregateStructure aggregate(const MultiplexNetwork& network) {
  const std::size_t n = network.n_vertices();
  AggregateStructure agg{LengthMatrix(n, 0.0), SquareMatrix<std::uint8_t>(n, 0)};
  for (LayerId l = 0; l < network.n_layers(); ++l)
    for (VertexId i = 0; i < n; ++i)
      for (const auto& a : network.out_arcs(l, i)) {
        agg.sum(i, a.target) += a.weight;
        agg.support(i, a.target) = 1;
      }
  return agg;
}

MultiplexNetwork transpose_network(const MultiplexNetwork& network) {
  auto edges = network.edges();
  for (auto& e : edges) std::swap(e.source, e.target);
  return MultiplexNetwork(network.n_vertices(), network.n_layers(), edges, network.vertex_labels(),
                          network.layer_labels());
}

}  // namespace mplex
