#include "mplex/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mplex {

namespace {

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      carry_ += (sum_ - t) + x;
    else
      carry_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace

LengthMatrix reciprocal_matrix(const KPathResult& result) {
  const std::size_t n = result.n_vertices();
  LengthMatrix r(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double p = result.p(i, j);
      r(i, j) = is_finite_length(p) ? 1.0 / p : 0.0;
    }
  return r;
}

HarmonicCentralities harmonic_centralities(const LengthMatrix& reciprocal) {
  const std::size_t n = reciprocal.size();
  std::vector<CompensatedSum> in(n), out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      out[i].add(reciprocal(i, j));
      in[j].add(reciprocal(i, j));
    }
  HarmonicCentralities h{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t v = 0; v < n; ++v) {
    h.in[v] = in[v].value();
    h.out[v] = out[v].value();
  }
  return h;
}

double global_k_efficiency(const LengthMatrix& reciprocal) {
  const std::size_t n = reciprocal.size();
  if (n < 2) throw std::invalid_argument("global efficiency needs at least two vertices");
  CompensatedSum total;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) total.add(reciprocal(i, j));
  return total.value() / (static_cast<double>(n) * static_cast<double>(n - 1));
}

RedundancyReport::RedundancyReport(const MultiplexNetwork& network, std::size_t k, bool conclusive,
                                   std::vector<RedundantEdge> redundant)
    : k_(k),
      conclusive_(conclusive),
      redundant_(std::move(redundant)),
      flagged_by_arc_(network.arc_count(), 0),
      nonredundant_pair_(network.n_vertices(), 0) {
  for (const auto& e : redundant_) {
    const auto id = network.arc_id(e.layer, e.source, e.target);
    if (id == MultiplexNetwork::npos) throw std::invalid_argument("redundancy flag on a missing edge");
    flagged_by_arc_[id] = 1;
  }
  for (const auto& e : network.edges())
    if (!flagged_by_arc_[network.arc_id(e.layer, e.source, e.target)]) nonredundant_pair_(e.source, e.target) = 1;
}

std::vector<RedundantEdge> RedundancyReport::grouped(const MultiplexNetwork& network) const {
  std::vector<RedundantEdge> out;
  for (const auto& e : redundant_) {
    if (network.is_undirected(e.layer)) {
      const auto mirror = network.arc_id(e.layer, e.target, e.source);
      if (flagged_by_arc_[mirror]) {
        if (e.source > e.target) continue;
        RedundantEdge pair = e;
        pair.undirected_pair = true;
        for (const auto& m : redundant_)
          if (m.layer == e.layer && m.source == e.target && m.target == e.source)
            pair.k_detected = std::min(pair.k_detected, m.k_detected);
        out.push_back(pair);
        continue;
      }
    }
    out.push_back(e);
  }
  return out;
}

EdgeStatus RedundancyReport::status(const MultiplexNetwork& network, LayerId layer, VertexId i,
                                    VertexId j) const {
  const auto id = network.arc_id(layer, i, j);
  if (id == MultiplexNetwork::npos) throw std::invalid_argument("no such edge");
  if (flagged_by_arc_[id]) return EdgeStatus::redundant;
  return conclusive_ ? EdgeStatus::nonredundant : EdgeStatus::undetermined;
}

bool RedundancyReport::is_k_nonredundant(const MultiplexNetwork& network, LayerId layer, VertexId i,
                                         VertexId j) const {
  const auto id = network.arc_id(layer, i, j);
  return id != MultiplexNetwork::npos && !flagged_by_arc_[id];
}

namespace {

std::vector<RedundantEdge> flag_edges(const MultiplexNetwork& net, SwitchCost gamma, const KPathResult& r) {
  std::vector<RedundantEdge> out;
  for (const auto& e : net.edges()) {
    const double p = r.p(e.source, e.target);
    const int switches = (r.start.contains(e.source, e.target, e.layer) ? 0 : 1) +
                         (r.arrival.contains(e.source, e.target, e.layer) ? 0 : 1);
    const double bound = p + gamma.value() * switches;
    if (e.weight > bound && !same_length(e.weight, bound))
      out.push_back({e.source, e.target, e.layer, e.weight, bound, r.k, false});
  }
  return out;
}

}  // namespace

RedundancyReport redundant_edges(const PathTensor& tensor, SwitchCost gamma, const KPathResult& result) {
  if (result.gamma != gamma) throw std::invalid_argument("path result was computed for a different switch cost");
  const auto& net = tensor.network();
  return RedundancyReport(net, result.k, result.at_fixed_point, flag_edges(net, gamma, result));
}

RedundancyReport earliest_redundancy(const PathTensor& tensor, SwitchCost gamma, const PathSeries& series,
                                     std::size_t k) {
  const auto& net = tensor.network();
  const auto& target = series.at(k);
  auto flags = flag_edges(net, gamma, target);
  std::vector<std::size_t> first_seen(net.arc_count(), 0);
  for (std::size_t kk = std::min(k, series.computed()); kk >= 1; --kk)
    for (const auto& x : flag_edges(net, gamma, series.at(kk))) first_seen[net.arc_id(x.layer, x.source, x.target)] = kk;
  for (auto& f : flags) f.k_detected = first_seen[net.arc_id(f.layer, f.source, f.target)];
  return RedundancyReport(net, k, target.at_fixed_point, std::move(flags));
}

EfficiencyReport efficiency_report(const PathSeries& series, std::size_t k) {
  const auto& r = series.at(k);
  const auto recip = reciprocal_matrix(r);
  auto h = harmonic_centralities(recip);
  return {k,
          r.gamma.value(),
          global_k_efficiency(recip),
          std::move(h.in),
          std::move(h.out),
          diameter(series.final()),
          series.fixed_point_k()};
}

}  // namespace mplex
