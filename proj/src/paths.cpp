#include "mplex/paths.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <stdexcept>
#include <string>

namespace mplex {

namespace {

// Rows of P^k and of the last-edge layer sets for one source, one row per
// step k = 1 .. steps.
struct SourceSweep {
  std::vector<double> lengths;       // steps x n
  std::vector<std::uint64_t> masks;  // steps x n x words
  std::size_t steps = 0;
  bool stable = false;
};

// state[j * L + l]: shortest walk from the source to j, using at most k
// intra-layer edges, whose last edge lies in layer l. The source has no
// incumbent layer, so leaving it never costs a switch.
SourceSweep sweep_source(const MultiplexNetwork& net, VertexId source, double gamma,
                         std::size_t k_max) {
  const std::size_t n = net.n_vertices();
  const std::size_t nl = net.n_layers();
  const std::size_t words = (nl + 63) / 64;

  std::vector<double> prev(n * nl, kInfinity);
  std::vector<double> next(n * nl, kInfinity);
  std::vector<double> best(n, kInfinity);

  SourceSweep out;
  for (std::size_t k = 1; k <= k_max; ++k) {
    for (VertexId h = 0; h < n; ++h) {
      double b = kInfinity;
      for (std::size_t l = 0; l < nl; ++l) b = std::min(b, prev[h * nl + l]);
      best[h] = b;
    }
    next = prev;
    bool changed = false;
    for (VertexId h = 0; h < n; ++h) {
      const bool at_source = h == source;
      if (!at_source && !is_finite_length(best[h])) continue;
      for (LayerId l = 0; l < nl; ++l) {
        const double entry = at_source ? 0.0 : std::min(prev[h * nl + l], best[h] + gamma);
        if (!is_finite_length(entry)) continue;
        for (const auto& a : net.out_arcs(l, h)) {
          if (a.target == source) continue;
          const double cand = entry + a.weight;
          double& slot = next[a.target * nl + l];
          if (cand < slot) {
            slot = cand;
            changed = true;
          }
        }
      }
    }
    if (!changed && k > 1) {
      out.stable = true;
      break;
    }

    out.lengths.resize((k) * n, kInfinity);
    out.masks.resize((k) * n * words, 0);
    double* row = out.lengths.data() + (k - 1) * n;
    std::uint64_t* mrow = out.masks.data() + (k - 1) * n * words;
    for (VertexId j = 0; j < n; ++j) {
      if (j == source) {
        row[j] = 0.0;
        continue;
      }
      double m = kInfinity;
      for (std::size_t l = 0; l < nl; ++l) m = std::min(m, next[j * nl + l]);
      row[j] = m;
      if (!is_finite_length(m)) continue;
      for (std::size_t l = 0; l < nl; ++l)
        if (same_length(next[j * nl + l], m)) mrow[j * words + l / 64] |= std::uint64_t{1} << (l % 64);
    }
    out.steps = k;
    std::swap(prev, next);
    if (!changed) {
      out.stable = true;
      break;
    }
  }
  return out;
}

std::size_t default_k_max(std::size_t n) { return std::max<std::size_t>(1, n > 0 ? n - 1 : 0); }

bool same_sets(const KPathResult& a, const KPathResult& b) {
  return a.arrival == b.arrival && a.start == b.start;
}

}  // namespace

KPathResult one_path_matrix(const PathTensor& tensor, SwitchCost gamma) {
  const auto& net = tensor.network();
  const std::size_t n = net.n_vertices();
  KPathResult r{1, gamma, LengthMatrix(n, kInfinity), LayerSetMatrix(n, net.n_layers()),
                LayerSetMatrix(n, net.n_layers()), false};
  for (VertexId i = 0; i < n; ++i) r.p(i, i) = 0.0;
  for (LayerId l = 0; l < net.n_layers(); ++l)
    for (VertexId i = 0; i < n; ++i)
      for (const auto& a : net.out_arcs(l, i)) r.p(i, a.target) = std::min(r.p(i, a.target), a.weight);
  for (LayerId l = 0; l < net.n_layers(); ++l)
    for (VertexId i = 0; i < n; ++i)
      for (const auto& a : net.out_arcs(l, i))
        if (same_length(a.weight, r.p(i, a.target))) r.arrival.insert(i, a.target, l);
  r.start = r.arrival;
  r.at_fixed_point = n <= 2;
  return r;
}

KPathResult k_path_minplus_power(const KPathResult& prev, const KPathResult& p1) {
  if (!prev.gamma.is_zero() || !p1.gamma.is_zero())
    throw std::invalid_argument("the min-plus power applies only to a zero switch cost");
  if (p1.k != 1 || prev.n_vertices() != p1.n_vertices())
    throw std::invalid_argument("min-plus power needs P^1 of the same network");

  const std::size_t n = prev.n_vertices();
  KPathResult r{prev.k + 1, prev.gamma, LengthMatrix(n, kInfinity),
                LayerSetMatrix(n, prev.arrival.n_layers()), LayerSetMatrix(n, prev.arrival.n_layers()),
                false};
  for (VertexId i = 0; i < n; ++i) {
    r.p(i, i) = 0.0;
    for (VertexId j = 0; j < n; ++j) {
      if (i == j) continue;
      double m = kInfinity;
      for (VertexId h = 0; h < n; ++h) m = std::min(m, prev.p(i, h) + p1.p(h, j));
      r.p(i, j) = m;
      if (!is_finite_length(m)) continue;
      // Union the layer sets over every decomposition attaining the minimum.
      for (VertexId h = 0; h < n; ++h) {
        if (!same_length(prev.p(i, h) + p1.p(h, j), m)) continue;
        if (h == j) {
          r.arrival.merge(i, j, prev.arrival.entry(i, j));
          r.start.merge(i, j, prev.start.entry(i, j));
        } else if (h == i) {
          r.arrival.merge(i, j, p1.arrival.entry(i, j));
          r.start.merge(i, j, p1.start.entry(i, j));
        } else {
          r.arrival.merge(i, j, p1.arrival.entry(h, j));
          r.start.merge(i, j, prev.start.entry(i, h));
        }
      }
    }
  }
  r.at_fixed_point = prev.at_fixed_point || r.k + 1 >= n ||
                     (r.p == prev.p && same_sets(r, prev));
  return r;
}

PathSeries::PathSeries(std::vector<KPathResult> results, bool stabilized, std::size_t k_cap)
    : results_(std::move(results)), stabilized_(stabilized), k_cap_(k_cap) {
  if (results_.empty()) throw std::invalid_argument("a path series holds at least P^1");
}

const KPathResult& PathSeries::at(std::size_t k) const {
  if (k == 0) throw std::invalid_argument("path budget k must be at least 1");
  const std::size_t n = results_.back().n_vertices();
  if (k > results_.size() && !stabilized_ && k_cap_ < default_k_max(n))
    throw std::out_of_range("P^" + std::to_string(k) + " lies beyond the computed cap " +
                            std::to_string(k_cap_));
  return results_[std::min(k, results_.size()) - 1];
}

std::size_t PathSeries::fixed_point_k() const {
  const auto& last = results_.back().p;
  std::size_t k = results_.size();
  while (k > 1 && results_[k - 2].p == last) --k;
  return k;
}

PathSeries k_path_series(const PathTensor& tensor, SwitchCost gamma, std::optional<std::size_t> k_max) {
  const auto& net = tensor.network();
  const std::size_t n = net.n_vertices();
  const std::size_t nl = net.n_layers();
  const std::size_t words = (nl + 63) / 64;
  const std::size_t cap = k_max.value_or(default_k_max(n));
  if (cap == 0) throw std::invalid_argument("path budget k must be at least 1");

  // Start layers of i -> j paths are the arrival layers of j -> i paths in
  // the transposed network.
  const MultiplexNetwork reversed = transpose_network(net);
  std::vector<SourceSweep> forward(n), backward(n);
  std::size_t steps = 1;
  bool stabilized = true;
  for (VertexId s = 0; s < n; ++s) {
    forward[s] = sweep_source(net, s, gamma.value(), cap);
    backward[s] = sweep_source(reversed, s, gamma.value(), cap);
    steps = std::max({steps, forward[s].steps, backward[s].steps});
    stabilized = stabilized && forward[s].stable && backward[s].stable;
  }

  std::vector<KPathResult> results;
  results.reserve(steps);
  for (std::size_t k = 1; k <= steps; ++k) {
    KPathResult r{k, gamma, LengthMatrix(n, kInfinity), LayerSetMatrix(n, nl), LayerSetMatrix(n, nl), false};
    for (VertexId s = 0; s < n; ++s) {
      const auto& f = forward[s];
      const std::size_t fk = std::min(k, f.steps) - 1;
      const double* row = f.lengths.data() + fk * n;
      const std::uint64_t* mrow = f.masks.data() + fk * n * words;
      for (VertexId j = 0; j < n; ++j) {
        r.p(s, j) = row[j];
        r.arrival.assign(s, j, {mrow + j * words, words});
      }
      const auto& b = backward[s];
      const std::size_t bk = std::min(k, b.steps) - 1;
      const std::uint64_t* brow = b.masks.data() + bk * n * words;
      for (VertexId j = 0; j < n; ++j) r.start.assign(j, s, {brow + j * words, words});
    }
    results.push_back(std::move(r));
  }

  // Walks of at most N - 1 edges already realise every geodesic.
  const bool complete = stabilized || steps >= default_k_max(n);
  if (complete) {
    const auto& last = results.back();
    for (auto& r : results) r.at_fixed_point = r.p == last.p && same_sets(r, last);
  }
  return PathSeries(std::move(results), stabilized, cap);
}

KPathResult k_path_gamma(const PathTensor& tensor, SwitchCost gamma, std::size_t k) {
  if (k == 0) throw std::invalid_argument("path budget k must be at least 1");
  auto series = k_path_series(tensor, gamma, k);
  KPathResult r = series.at(k);
  r.k = k;
  return r;
}

PathLengthMatrix path_length_matrix(const PathTensor& tensor, SwitchCost gamma,
                                    std::optional<std::size_t> k_max) {
  auto series = k_path_series(tensor, gamma, k_max);
  return {series.final(), series.fixed_point_k()};
}

LengthMatrix supra_dijkstra_oracle(const MultiplexNetwork& network, SwitchCost gamma) {
  const std::size_t n = network.n_vertices();
  const std::size_t nl = network.n_layers();
  const std::size_t nodes = n * nl;

  // Supra graph: node l * n + i is vertex i in layer l.
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(nodes);
  for (LayerId l = 0; l < nl; ++l)
    for (VertexId i = 0; i < n; ++i) {
      for (const auto& a : network.out_arcs(l, i)) adj[l * n + i].emplace_back(l * n + a.target, a.weight);
      for (LayerId m = 0; m < nl; ++m)
        if (m != l) adj[l * n + i].emplace_back(m * n + i, gamma.value());
    }

  LengthMatrix q(n, kInfinity);
  std::vector<double> dist(nodes);
  using Item = std::pair<double, std::size_t>;
  for (VertexId s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), kInfinity);
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    for (LayerId l = 0; l < nl; ++l) {
      dist[l * n + s] = 0.0;
      heap.emplace(0.0, l * n + s);
    }
    while (!heap.empty()) {
      auto [d, u] = heap.top();
      heap.pop();
      if (d > dist[u]) continue;
      for (auto [v, w] : adj[u])
        if (d + w < dist[v]) {
          dist[v] = d + w;
          heap.emplace(dist[v], v);
        }
    }
    for (VertexId j = 0; j < n; ++j) {
      double m = kInfinity;
      for (LayerId l = 0; l < nl; ++l) m = std::min(m, dist[l * n + j]);
      q(s, j) = j == s ? 0.0 : m;
    }
  }
  return q;
}

Diameter diameter(const KPathResult& result) {
  Diameter d;
  const std::size_t n = result.n_vertices();
  for (VertexId i = 0; i < n; ++i)
    for (VertexId j = 0; j < n; ++j) {
      if (i == j) continue;
      const double v = result.p(i, j);
      if (!is_finite_length(v)) {
        d.disconnected = true;
        continue;
      }
      d.value = std::max(d.value, v);
    }
  for (VertexId i = 0; i < n; ++i)
    for (VertexId j = 0; j < n; ++j)
      if (i != j && is_finite_length(result.p(i, j)) && same_length(result.p(i, j), d.value))
        d.pairs.emplace_back(i, j);
  return d;
}

}  // namespace mplex
