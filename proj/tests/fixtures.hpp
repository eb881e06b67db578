#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "mplex/network.hpp"
#include "mplex/types.hpp"

namespace fixture {

using mplex::kInfinity;
using mplex::LayerId;
using mplex::MultiplexNetwork;
using mplex::VertexId;
using mplex::WeightedEdge;

// Three-layer, four-vertex multiplex used throughout the worked examples.
inline MultiplexNetwork example1() {
  const double a[3][4][4] = {
      {{0, 1, 1, 0}, {0, 0, 1, 0}, {1, 0, 0, 1}, {0, 0.5, 0, 0}},
      {{0, 0.5, 0.5, 0}, {0.5, 0, 0, 0}, {0.5, 0, 0, 1}, {0, 1, 0, 0}},
      {{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 0}, {1.5, 1, 0.5, 0}},
  };
  std::vector<WeightedEdge> edges;
  for (LayerId l = 0; l < 3; ++l)
    for (VertexId i = 0; i < 4; ++i)
      for (VertexId j = 0; j < 4; ++j)
        if (a[l][i][j] > 0) edges.push_back({l, i, j, a[l][i][j]});
  return MultiplexNetwork(4, 3, edges);
}

struct RandomSpec {
  std::size_t max_n = 8;
  std::size_t max_layers = 4;
  double density = 0.3;
  bool symmetric = false;
};

// Weights come from a short grid so that ties between routes are common.
inline MultiplexNetwork random_multiplex(std::mt19937_64& rng, RandomSpec spec = {}) {
  std::uniform_int_distribution<std::size_t> nd(2, spec.max_n), ld(1, spec.max_layers);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const double grid[] = {0.5, 1.0, 1.5, 2.0, 3.0, 0.75};
  std::uniform_int_distribution<int> wd(0, 5);
  const std::size_t n = nd(rng), nl = ld(rng);
  std::vector<WeightedEdge> edges;
  for (LayerId l = 0; l < nl; ++l)
    for (VertexId i = 0; i < n; ++i)
      for (VertexId j = spec.symmetric ? i + 1 : 0; j < n; ++j) {
        if (i == j || coin(rng) >= spec.density) continue;
        const double w = grid[wd(rng)];
        edges.push_back({l, i, j, w});
        if (spec.symmetric) edges.push_back({l, j, i, w});
      }
  return MultiplexNetwork(n, nl, edges);
}

// Geodesics on the supra graph by Floyd-Warshall; the distance from i to j
// is the best over every pair of copies.
inline std::vector<std::vector<double>> supra_floyd(const MultiplexNetwork& net, double gamma) {
  const std::size_t n = net.n_vertices(), nl = net.n_layers(), m = n * nl;
  std::vector<std::vector<double>> d(m, std::vector<double>(m, kInfinity));
  for (std::size_t u = 0; u < m; ++u) d[u][u] = 0.0;
  for (const auto& e : net.edges()) d[e.layer * n + e.source][e.layer * n + e.target] = e.weight;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < nl; ++a)
      for (std::size_t b = 0; b < nl; ++b)
        if (a != b) d[a * n + i][b * n + i] = std::min(d[a * n + i][b * n + i], gamma);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  std::vector<std::vector<double>> p(n, std::vector<double>(n, kInfinity));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t a = 0; a < nl; ++a)
        for (std::size_t b = 0; b < nl; ++b) p[i][j] = std::min(p[i][j], d[a * n + i][b * n + j]);
  return p;
}

// Exhaustive state enumeration for walks of at most K intra-layer edges.
// A state is (vertex, layer of the last edge) carrying its cost and the set
// of first-edge layers among its optimal walks.
struct BruteKPath {
  std::vector<std::vector<double>> p;
  std::vector<std::vector<std::set<LayerId>>> start, arrival;
};

inline BruteKPath brute_k_path(const MultiplexNetwork& net, double gamma, std::size_t k_max) {
  const std::size_t n = net.n_vertices(), nl = net.n_layers();
  const auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)); };
  BruteKPath out{std::vector<std::vector<double>>(n, std::vector<double>(n, kInfinity)),
                 std::vector<std::vector<std::set<LayerId>>>(n, std::vector<std::set<LayerId>>(n)),
                 std::vector<std::vector<std::set<LayerId>>>(n, std::vector<std::set<LayerId>>(n))};
  const auto edges = net.edges();
  for (VertexId src = 0; src < n; ++src) {
    std::map<std::pair<VertexId, LayerId>, std::pair<double, std::set<LayerId>>> d;
    for (std::size_t step = 0; step < k_max; ++step) {
      auto next = d;
      auto offer = [&](VertexId j, LayerId l, double c, const std::set<LayerId>& first) {
        if (j == src) return;
        auto it = next.find({j, l});
        if (it == next.end() || (c < it->second.first && !close(c, it->second.first)))
          next[{j, l}] = {c, first};
        else if (close(c, it->second.first))
          it->second.second.insert(first.begin(), first.end());
      };
      for (const auto& e : edges) {
        if (e.source == src) offer(e.target, e.layer, e.weight, {e.layer});
        for (const auto& [key, val] : d) {
          if (key.first != e.source) continue;
          offer(e.target, e.layer, val.first + e.weight + (key.second == e.layer ? 0.0 : gamma), val.second);
        }
      }
      d = std::move(next);
    }
    out.p[src][src] = 0.0;
    for (VertexId j = 0; j < n; ++j) {
      if (j == src) continue;
      double best = kInfinity;
      for (LayerId l = 0; l < nl; ++l)
        if (auto it = d.find({j, l}); it != d.end()) best = std::min(best, it->second.first);
      out.p[src][j] = best;
      if (std::isinf(best)) continue;
      for (LayerId l = 0; l < nl; ++l)
        if (auto it = d.find({j, l}); it != d.end() && close(it->second.first, best)) {
          out.arrival[src][j].insert(l);
          out.start[src][j].insert(it->second.second.begin(), it->second.second.end());
        }
    }
  }
  return out;
}

inline std::set<LayerId> as_set(const std::vector<LayerId>& v) { return {v.begin(), v.end()}; }

}  // namespace fixture
