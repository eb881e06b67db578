#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fixtures.hpp"
#include "mplex/perturbation.hpp"

using namespace mplex;

namespace {

double round4(double x) { return std::round(x * 1e4) / 1e4; }

LengthMatrix matrix(const std::vector<std::vector<double>>& rows) {
  LengthMatrix m(rows.size(), 0.0);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  return m;
}

}  // namespace

TEST_CASE("Perron triple of a small irreducible matrix") {
  const auto m = matrix({{0, 2}, {1, 0}});
  const auto t = perron_triple(m);
  CHECK(t.rho == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(t.residual <= 1e-12);
  // Right vector is proportional to (sqrt 2, 1), left to (1, sqrt 2).
  CHECK(t.x[0] / t.x[1] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
  CHECK(t.y[1] / t.y[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
  CHECK(std::hypot(t.x[0], t.x[1]) == doctest::Approx(1.0));
}

TEST_CASE("Perron iteration handles periodic matrices through the shift") {
  const auto m = matrix({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
  const auto t = perron_triple(m);
  CHECK(t.rho == doctest::Approx(1.0).epsilon(1e-12));
  for (double v : t.x) CHECK(v == doctest::Approx(1.0 / std::sqrt(3.0)));
}

TEST_CASE("Perron iteration reports bad input and non-convergence") {
  CHECK_THROWS_AS(perron_triple(matrix({{0, -1}, {1, 0}})), std::invalid_argument);
  CHECK_THROWS_AS(perron_triple(matrix({{0, 0}, {0, 0}})), NumericalError);
  const auto slow = matrix({{0, 1, 0.2}, {0.3, 0, 1}, {1, 0.1, 0}});
  try {
    perron_triple(slow, PerronOptions{1e-14, 2});
    FAIL("expected PerronConvergenceError");
  } catch (const PerronConvergenceError& e) {
    CHECK(e.last_iterate().iterations == 2);
    CHECK(e.last_iterate().x.size() == 3);
  }
}

TEST_CASE("irreducibility check") {
  CHECK(is_irreducible(matrix({{0, 1}, {1, 0}})));
  CHECK_FALSE(is_irreducible(matrix({{0, 1}, {0, 0}})));
}

TEST_CASE("harmonic and Perron selections on the example") {
  const auto net = fixture::example1();
  const PathTensor t(net);
  const auto agg = aggregate(net);
  for (double g : {0.0, 0.25}) {
    for (std::size_t k : {1, 2}) {
      const auto r = k_path_gamma(t, SwitchCost(g), k);
      const auto red = redundant_edges(t, SwitchCost(g), r);
      const auto recip = reciprocal_matrix(r);
      const auto h = harmonic_centralities(recip);
      CHECK(select_edge_harmonic(h.in, h.out, agg, red).pairs == std::vector<VertexPair>{{2, 3}});
      CHECK(select_edge_perron(perron_triple(recip), agg, red).pairs == std::vector<VertexPair>{{2, 3}});
    }
  }
  const auto r = k_path_gamma(t, SwitchCost(1.0), 2);
  const auto red = redundant_edges(t, SwitchCost(1.0), r);
  const auto h = harmonic_centralities(reciprocal_matrix(r));
  const auto sel = select_edge_harmonic(h.in, h.out, agg, red);
  CHECK(sel.pairs == std::vector<VertexPair>{{1, 0}, {2, 0}, {2, 3}});
}

TEST_CASE("strengthening halves every nonredundant edge of the pair") {
  const auto net = fixture::example1();
  const PathTensor t(net);
  const auto r = k_path_gamma(t, SwitchCost(0.0), 1);
  const auto red = redundant_edges(t, SwitchCost(0.0), r);
  PairSelection sel{Method::harmonic, {{2, 3}}, 0.0};
  const auto res = apply_strengthening(net, sel, SwitchCost(0.0), r, red);
  REQUIRE(res.strengthened.size() == 2);
  CHECK(res.perturbed.weight(0, 2, 3) == 0.5);
  CHECK(res.perturbed.weight(1, 2, 3) == 0.5);
  CHECK(round4(res.efficiency_before) == doctest::Approx(1.2222));
  CHECK(round4(res.efficiency_after) == doctest::Approx(1.3056));
  // (1,2) in layer 1 is redundant at K = 1; only layer 2 qualifies.
  StrengtheningOptions o;
  o.pair_override = VertexPair{0, 1};
  const auto only = apply_strengthening(net, sel, SwitchCost(0.0), r, red, o);
  REQUIRE(only.strengthened.size() == 1);
  CHECK(only.strengthened[0].layer == 1);
  o.pair_override = VertexPair{0, 3};
  CHECK_THROWS_AS(apply_strengthening(net, sel, SwitchCost(0.0), r, red, o), std::invalid_argument);
  o.pair_override.reset();
  o.factor = 1.5;
  CHECK_THROWS_AS(apply_strengthening(net, sel, SwitchCost(0.0), r, red, o), std::invalid_argument);
}

TEST_CASE("undirected layers strengthen both directions") {
  std::vector<WeightedEdge> e{{0, 0, 1, 1.0}, {0, 1, 0, 1.0}, {0, 1, 2, 1.0}, {0, 2, 1, 1.0}};
  const MultiplexNetwork net(3, 1, e);
  const auto rec = enhancement_report(net, SwitchCost(1.0), 2, Method::harmonic);
  REQUIRE(rec.strengthened.size() == 2);
  CHECK(rec.strengthened[0].source == rec.strengthened[1].target);
  CHECK(rec.efficiency_after > rec.efficiency_before);
}

TEST_CASE("Perron method refuses reducible multiplexes") {
  std::vector<WeightedEdge> e{{0, 0, 1, 1.0}, {0, 1, 2, 1.0}};
  const MultiplexNetwork net(3, 1, e);
  CHECK_THROWS_AS(enhancement_report(net, SwitchCost(1.0), 2, Method::perron), DataError);
  CHECK_NOTHROW(enhancement_report(net, SwitchCost(1.0), 2, Method::harmonic));
}

TEST_CASE("enhancement report on the example") {
  const auto net = fixture::example1();
  const auto rec = enhancement_report(net, SwitchCost(0.25), 2, Method::perron);
  CHECK(rec.applied == VertexPair{2, 3});
  CHECK(round4(rec.efficiency_after) == doctest::Approx(1.5389));
  REQUIRE(rec.perron.has_value());
  CHECK(rec.perron->residual <= 1e-12);
}
