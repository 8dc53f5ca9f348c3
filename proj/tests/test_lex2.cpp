#include <doctest.h>

#include "apspkit/lex2.hpp"
#include "apspkit/oracles.hpp"
#include "generators.hpp"

using namespace apspkit;

TEST_CASE("hand lexicographic example") {
  // two routes 0->2 with equal primary weight; the lighter secondary wins
  Graph g(4, true);
  g.has_dual = true;
  g.add_edge(0, 1, 1, 5);
  g.add_edge(1, 2, 1, 5);
  g.add_edge(0, 3, 1, 1);
  g.add_edge(3, 2, 1, 2);
  const Lex2Matrix m = lex2_directed(g);
  CHECK(m.d1(0, 2) == 2);
  CHECK(m.d2(0, 2) == 3);
  CHECK(lex2_gamma(g) == m);
}

TEST_CASE("directed with zero primary weights") {
  for (int s = 1; s <= 6; ++s) {
    const Graph g = gen::dual_weight_graph(30 + 4 * s, 0.08, true, 0, 2, 0, 3, s);
    CHECK(lex2_directed(g) == lex_dijkstra_apsp(g));
  }
}

TEST_CASE("positive primary weights through all three solvers") {
  for (int s = 1; s <= 6; ++s) {
    const Graph u = gen::dual_weight_graph(30 + 4 * s, 0.08, false, 1, 2, 0, 3, s);
    const Lex2Matrix want = lex_dijkstra_apsp(u);
    CHECK(lex2_undirected_positive(u) == want);
    CHECK(lex2_gamma(u) == want);
    CHECK(certify_lex2(u, want));
  }
}

TEST_CASE("lightest shortest and shortest lightest paths") {
  const Graph g = gen::dual_weight_graph(40, 0.08, true, 1, 3, 0, 2, 17);
  const Lex2Matrix a = aplsp(g), b = apslp(g);
  const DistMatrix hop = bfs_apsp(g), w = dijkstra_apsp(g);
  CHECK(a.d1 == w);
  CHECK(b.d1 == hop);
}

TEST_CASE("preconditions are enforced") {
  const Graph z = gen::dual_weight_graph(10, 0.3, false, 0, 2, 0, 3, 1);
  CHECK_THROWS(lex2_undirected_positive(z));
  CHECK_THROWS(lex2_gamma(gen::dual_weight_graph(10, 0.3, true, 0, 2, 0, 3, 1)));
}
