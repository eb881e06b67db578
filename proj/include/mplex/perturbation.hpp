#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mplex/analysis.hpp"
#include "mplex/network.hpp"
#include "mplex/paths.hpp"
#include "mplex/types.hpp"

namespace mplex {

/// Perron root with unit-norm positive right (x) and left (y) Perron vectors.
struct PerronTriple {
  double rho = 0.0;
  std::vector<double> x;
  std::vector<double> y;
  std::size_t iterations = 0;
  double residual = 0.0;  // max of ||M x - rho x|| and ||M^T y - rho y||
};

struct PerronOptions {
  double tol = 1e-12;
  std::size_t max_iter = 100000;
};

/// Power iteration failed to reach the residual tolerance. Carries the last iterate.
class PerronConvergenceError : public NumericalError {
 public:
  PerronConvergenceError(const std::string& what, PerronTriple last)
      : NumericalError(what), last_(std::move(last)) {}
  const PerronTriple& last_iterate() const { return last_; }

 private:
  PerronTriple last_;
};

/**
 * Power iteration on M + I and M^T + I from the normalized all-ones vector.
 * The shift makes an irreducible nonnegative M primitive, so both
 * iterations converge to the Perron vectors; rho is reported for M itself.
 * Throws std::invalid_argument for negative entries, NumericalError for the
 * zero matrix and PerronConvergenceError when max_iter is exhausted.
 */
PerronTriple perron_triple(const LengthMatrix& m, PerronOptions options = {});

/// Support graph of m is strongly connected.
bool is_irreducible(const LengthMatrix& m);

enum class Method { harmonic, perron };

std::string_view to_string(Method method);

/// Maximizing pairs of a score matrix restricted to admissible pairs.
struct PairSelection {
  Method method = Method::harmonic;
  std::vector<VertexPair> pairs;  // all ties, lexicographic order
  double score = 0.0;
};

/// Pairs (h, k) maximizing h_in(h) * h_out(k) over pairs that carry a
/// K-nonredundant edge h -> k in some layer.
PairSelection select_edge_harmonic(std::span<const double> h_in, std::span<const double> h_out,
                                   const AggregateStructure& aggregate, const RedundancyReport& redundancy);

/// Pairs (h, k) maximizing the Wilkinson perturbation (y x^T)_{hk} = y(h) x(k)
/// over the same admissible pairs.
PairSelection select_edge_perron(const PerronTriple& perron, const AggregateStructure& aggregate,
                                 const RedundancyReport& redundancy);

struct StrengthenedEdge {
  VertexId source = 0;
  VertexId target = 0;
  LayerId layer = 0;
  double old_weight = 0.0;
  double new_weight = 0.0;
};

struct StrengtheningOptions {
  double factor = 0.5;                      // new weight = factor * old weight
  std::optional<VertexPair> pair_override;  // default: first pair of the selection
};

struct StrengtheningResult {
  MultiplexNetwork perturbed;
  VertexPair applied;
  std::vector<StrengthenedEdge> strengthened;
  double efficiency_before = 0.0;
  double efficiency_after = 0.0;
};

/**
 * Scales the weight of every K-nonredundant edge h -> k by the factor; in
 * undirected layers the mirror edge k -> h is scaled too. Layers where the
 * edge is redundant are left alone. Efficiencies are global K-efficiencies
 * at K = result.k. Throws std::invalid_argument when no layer qualifies.
 */
StrengtheningResult apply_strengthening(const MultiplexNetwork& network, const PairSelection& selection,
                                        SwitchCost gamma, const KPathResult& result,
                                        const RedundancyReport& redundancy,
                                        const StrengtheningOptions& options = {});

struct Recommendation {
  Method method = Method::harmonic;
  std::size_t k = 1;
  double gamma = 0.0;
  std::vector<VertexPair> pairs;
  double score = 0.0;
  VertexPair applied;
  std::vector<StrengthenedEdge> strengthened;
  double efficiency_before = 0.0;
  double efficiency_after = 0.0;
  std::optional<PerronTriple> perron;
};

struct EnhancementOptions {
  StrengtheningOptions strengthening;
  PerronOptions perron;
};

/// P^K, scores, selection, strengthening and the recomputed efficiency in one call.
Recommendation enhancement_report(const MultiplexNetwork& network, SwitchCost gamma, std::size_t k,
                                  Method method, const EnhancementOptions& options = {});

/// Same, reusing an already computed path series.
Recommendation enhancement_report(const MultiplexNetwork& network, const PathSeries& series, std::size_t k,
                                  Method method, const EnhancementOptions& options = {});

}  // namespace mplex
