#include "mplex/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mplex {

namespace {

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// out = M v (transpose = false) or M^T v.
void multiply(const LengthMatrix& m, std::span<const double> v, std::span<double> out, bool transpose) {
  const std::size_t n = m.size();
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    auto row = m.row(i);
    if (transpose) {
      const double vi = v[i];
      if (vi == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) out[j] += row[j] * vi;
    } else {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += row[j] * v[j];
      out[i] = s;
    }
  }
}

struct PowerState {
  std::vector<double> v;
  double rho = 0.0;
  double residual = kInfinity;
};

// rho = v^T M v for unit v; residual = ||M v - rho v||.
void refresh(const LengthMatrix& m, PowerState& s, std::vector<double>& mv, bool transpose) {
  multiply(m, s.v, mv, transpose);
  double rho = 0.0;
  for (std::size_t i = 0; i < s.v.size(); ++i) rho += s.v[i] * mv[i];
  double r = 0.0;
  for (std::size_t i = 0; i < s.v.size(); ++i) r += (mv[i] - rho * s.v[i]) * (mv[i] - rho * s.v[i]);
  s.rho = rho;
  s.residual = std::sqrt(r);
}

// One step of power iteration on M + I, given mv = M v.
void step(PowerState& s, const std::vector<double>& mv) {
  for (std::size_t i = 0; i < s.v.size(); ++i) s.v[i] += mv[i];
  const double nv = norm2(s.v);
  for (double& x : s.v) x /= nv;
}

bool admissible(const AggregateStructure& agg, const RedundancyReport& red, VertexId h, VertexId k) {
  return agg.support(h, k) != 0 && red.has_nonredundant_edge(h, k);
}

template <class Score>
PairSelection select_max(Method method, std::size_t n, const AggregateStructure& agg,
                         const RedundancyReport& red, Score score) {
  PairSelection sel{method, {}, -kInfinity};
  for (VertexId h = 0; h < n; ++h)
    for (VertexId k = 0; k < n; ++k)
      if (admissible(agg, red, h, k)) sel.score = std::max(sel.score, score(h, k));
  if (sel.pairs.empty() && sel.score == -kInfinity)
    throw std::invalid_argument("no admissible pair: every existing edge is redundant");
  const double cut = sel.score - kTieTolerance * std::abs(sel.score);
  for (VertexId h = 0; h < n; ++h)
    for (VertexId k = 0; k < n; ++k)
      if (admissible(agg, red, h, k) && score(h, k) >= cut) sel.pairs.emplace_back(h, k);
  return sel;
}

}  // namespace

bool is_irreducible(const LengthMatrix& m) {
  const std::size_t n = m.size();
  auto reaches_all = [&](bool transpose) {
    std::vector<std::uint8_t> seen(n, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v = 0; v < n; ++v) {
        const double w = transpose ? m(v, u) : m(u, v);
        if (w > 0.0 && !seen[v]) {
          seen[v] = 1;
          ++count;
          stack.push_back(v);
        }
      }
    }
    return count == n;
  };
  return n > 0 && reaches_all(false) && reaches_all(true);
}

std::string_view to_string(Method method) { return method == Method::harmonic ? "harmonic" : "perron"; }

PerronTriple perron_triple(const LengthMatrix& m, PerronOptions options) {
  const std::size_t n = m.size();
  if (n == 0) throw std::invalid_argument("empty matrix");
  bool nonzero = false;
  for (double v : m.values()) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("Perron iteration needs a nonnegative finite matrix");
    nonzero = nonzero || v > 0.0;
  }
  if (!nonzero) throw NumericalError("the zero matrix has no positive Perron vector");

  const std::vector<double> ones(n, 1.0 / std::sqrt(static_cast<double>(n)));
  PowerState right{ones}, left{ones};
  std::vector<double> mv(n), mtv(n);

  // Rounding puts a floor under the attainable residual; past it the
  // iteration is declared converged once the residual stops improving.
  double frob = 0.0;
  for (double v : m.values()) frob += v * v;
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::sqrt(frob) *
                       std::sqrt(static_cast<double>(n));
  double best = kInfinity;
  std::size_t stalled = 0;

  std::size_t it = 0;
  auto triple = [&] {
    PerronTriple t{right.rho, right.v, left.v, it, 0.0};
    // Left residual against the same rho as the right one.
    multiply(m, left.v, mtv, true);
    double r = 0.0;
    for (std::size_t i = 0; i < n; ++i) r += (mtv[i] - right.rho * left.v[i]) * (mtv[i] - right.rho * left.v[i]);
    t.residual = std::max(right.residual, std::sqrt(r));
    return t;
  };

  for (; it <= options.max_iter; ++it) {
    refresh(m, right, mv, false);
    refresh(m, left, mtv, true);
    const auto t = triple();
    if (t.residual <= options.tol) return t;
    if (t.residual < best * 0.999) {
      best = t.residual;
      stalled = 0;
    } else if (++stalled > 200 && t.residual <= std::max(options.tol, floor)) {
      return t;
    }
    if (it == options.max_iter) break;
    step(right, mv);
    step(left, mtv);
  }
  auto last = triple();
  throw PerronConvergenceError("power iteration did not converge in " + std::to_string(options.max_iter) +
                                   " iterations (residual " + std::to_string(last.residual) + ")",
                               std::move(last));
}

PairSelection select_edge_harmonic(std::span<const double> h_in, std::span<const double> h_out,
                                   const AggregateStructure& aggregate, const RedundancyReport& redundancy) {
  const std::size_t n = aggregate.support.size();
  if (h_in.size() != n || h_out.size() != n) throw std::invalid_argument("centrality vectors have the wrong size");
  return select_max(Method::harmonic, n, aggregate, redundancy,
                    [&](VertexId h, VertexId k) { return h_in[h] * h_out[k]; });
}

PairSelection select_edge_perron(const PerronTriple& perron, const AggregateStructure& aggregate,
                                 const RedundancyReport& redundancy) {
  const std::size_t n = aggregate.support.size();
  if (perron.x.size() != n || perron.y.size() != n) throw std::invalid_argument("Perron vectors have the wrong size");
  return select_max(Method::perron, n, aggregate, redundancy,
                    [&](VertexId h, VertexId k) { return perron.y[h] * perron.x[k]; });
}

StrengtheningResult apply_strengthening(const MultiplexNetwork& network, const PairSelection& selection,
                                        SwitchCost gamma, const KPathResult& result,
                                        const RedundancyReport& redundancy, const StrengtheningOptions& options) {
  if (!(options.factor > 0.0 && options.factor < 1.0))
    throw std::invalid_argument("strengthening factor must lie in (0, 1)");
  if (selection.pairs.empty() && !options.pair_override) throw std::invalid_argument("no pair to strengthen");
  const VertexPair pair = options.pair_override.value_or(selection.pairs.front());
  const auto [h, k] = pair;
  if (h >= network.n_vertices() || k >= network.n_vertices() || h == k)
    throw std::invalid_argument("pair to strengthen is out of range");

  std::vector<StrengthenedEdge> done;
  std::vector<WeightedEdge> changes;
  for (LayerId l = 0; l < network.n_layers(); ++l) {
    if (!redundancy.is_k_nonredundant(network, l, h, k)) continue;
    const double w = network.weight(l, h, k);
    done.push_back({h, k, l, w, w * options.factor});
    changes.push_back({l, h, k, w * options.factor});
    if (network.is_undirected(l)) {
      const double back = network.weight(l, k, h);
      done.push_back({k, h, l, back, back * options.factor});
      changes.push_back({l, k, h, back * options.factor});
    }
  }
  if (done.empty())
    throw std::invalid_argument("pair (" + std::to_string(h + 1) + "," + std::to_string(k + 1) +
                                ") carries no K-nonredundant edge");

  StrengtheningResult out{network.with_changes(changes), pair, std::move(done), 0.0, 0.0};
  out.efficiency_before = global_k_efficiency(reciprocal_matrix(result));
  const auto after = k_path_gamma(PathTensor(out.perturbed), gamma, result.k);
  out.efficiency_after = global_k_efficiency(reciprocal_matrix(after));
  return out;
}

Recommendation enhancement_report(const MultiplexNetwork& network, const PathSeries& series, std::size_t k,
                                  Method method, const EnhancementOptions& options) {
  KPathResult result = series.at(k);
  result.k = k;
  const PathTensor tensor(network);
  const auto redundancy = redundant_edges(tensor, result.gamma, result);
  const auto agg = aggregate(network);
  const auto recip = reciprocal_matrix(result);

  Recommendation rec;
  rec.method = method;
  rec.k = k;
  rec.gamma = result.gamma.value();
  PairSelection sel;
  if (method == Method::harmonic) {
    const auto h = harmonic_centralities(recip);
    sel = select_edge_harmonic(h.in, h.out, agg, redundancy);
  } else {
    if (!is_irreducible(recip))
      throw DataError("the multiplex is not strongly connected; Perron vectors are not unique");
    auto triple = perron_triple(recip, options.perron);
    sel = select_edge_perron(triple, agg, redundancy);
    rec.perron = std::move(triple);
  }
  auto applied = apply_strengthening(network, sel, result.gamma, result, redundancy, options.strengthening);
  rec.pairs = sel.pairs;
  rec.score = sel.score;
  rec.applied = applied.applied;
  rec.strengthened = std::move(applied.strengthened);
  rec.efficiency_before = applied.efficiency_before;
  rec.efficiency_after = applied.efficiency_after;
  return rec;
}

Recommendation enhancement_report(const MultiplexNetwork& network, SwitchCost gamma, std::size_t k, Method method,
                                  const EnhancementOptions& options) {
  const auto series = k_path_series(PathTensor(network), gamma, k);
  return enhancement_report(network, series, k, method, options);
}

}  // namespace mplex
