#include <doctest.h>

#include "apspkit/apsp_exact.hpp"
#include "apspkit/oracles.hpp"
#include "generators.hpp"

using namespace apspkit;

TEST_CASE("seidel matches BFS on undirected graphs") {
  for (int s = 1; s <= 8; ++s) {
    const Graph g = gen::random_undirected(20 + 9 * s, s % 2 ? 0.05 : 0.2, s);
    CHECK(seidel_apsp(g) == bfs_apsp(g));
  }
  CHECK_THROWS(seidel_apsp(gen::random_digraph(10, 0.3, 1)));
}

TEST_CASE("zwick matches Floyd-Warshall across weight regimes") {
  for (int s = 1; s <= 6; ++s) {
    const Graph g = gen::random_digraph(30 + 10 * s, 0.06, s, s % 2 ? 0 : 1, s);
    ZwickStats st;
    CHECK(zwick_apsp(g, {}, &st) == floyd_warshall(g));
    CHECK(st.attempts >= 1);
  }
}

TEST_CASE("zwick with a forced small crossover still certifies") {
  const Graph g = gen::random_digraph(90, 0.03, 77, 1, 3);
  ZwickOptions opt;
  opt.crossover_L = 2;
  CHECK(zwick_apsp(g, opt) == floyd_warshall(g));
}

TEST_CASE("zwick handles negative arcs without negative cycles") {
  Graph g(4, true);
  g.add_edge(0, 1, 4);
  g.add_edge(1, 2, -2);
  g.add_edge(0, 2, 3);
  g.add_edge(2, 3, 1);
  const DistMatrix d = zwick_apsp(g);
  CHECK(d(0, 2) == 2);
  CHECK(d(0, 3) == 3);
  CHECK(d(3, 0) == kInf);
}

TEST_CASE("certificate rejects a wrong matrix") {
  const Graph g = gen::random_digraph(25, 0.15, 3);
  DistMatrix d = bfs_apsp(g);
  CHECK(certify_distances(g, d));
  for (Dist& x : const_cast<std::vector<Dist>&>(d.storage()))
    if (x != kInf && x > 1) {
      ++x;
      break;
    }
  CHECK_FALSE(certify_distances(g, d));
}

TEST_CASE("successor matrix reconstructs shortest paths") {
  const Graph g = gen::random_digraph(40, 0.08, 5, 1, 4);
  const DistMatrix d = floyd_warshall(g);
  const IndexMatrix succ = successor_matrix(g, d);
  const DistMatrix w = weight_matrix(g);
  for (int u = 0; u < 40; u += 3)
    for (int v = 0; v < 40; v += 5) {
      if (u == v || d(u, v) == kInf) continue;
      const std::vector<int> p = shortest_path(g, d, succ, u, v);
      REQUIRE(p.front() == u);
      REQUIRE(p.back() == v);
      Dist len = 0;
      for (std::size_t i = 0; i + 1 < p.size(); ++i) len += w(p[i], p[i + 1]);
      CHECK(len == d(u, v));
    }
}

TEST_CASE("undirected small weights including zero") {
  for (int s = 1; s <= 6; ++s) {
    const Graph g = gen::random_undirected(40 + 5 * s, 0.08, s, 0, s);
    CHECK(undirected_small_weight_apsp(g) == dijkstra_apsp(g));
  }
}

TEST_CASE("budgeted red distances") {
  // 0 -r- 1 -r- 2, plus a long blue detour 0 - 3 - 4 - 5 - 2
  Graph g(6, false);
  g.has_colors = true;
  g.add_edge(0, 1, 1, 0, Color::red);
  g.add_edge(1, 2, 1, 0, Color::red);
  g.add_edge(0, 3, 1, 0, Color::blue);
  g.add_edge(3, 4, 1, 0, Color::blue);
  g.add_edge(4, 5, 1, 0, Color::blue);
  g.add_edge(5, 2, 1, 0, Color::blue);
  CHECK(cred_apsp(g, 0)(0, 2) == 4);
  CHECK(cred_apsp(g, 1)(0, 2) == 4);
  CHECK(cred_apsp(g, 2)(0, 2) == 2);
  CHECK(one_red_apsp(g)(0, 1) == 1);
  CHECK(one_red_apsp(g)(0, 2) == 4);
  for (int s = 1; s <= 5; ++s) {
    const Graph c = gen::colored_graph(35, 0.1, 0.4, s);
    CHECK(one_red_apsp(c) == budgeted_bfs_apsp(c, 1));
    for (int b : {0, 2, 3}) {
      CHECK(cred_apsp(c, b) == budgeted_bfs_apsp(c, b));
      CHECK(cred_apsp(c, b, true) == budgeted_bfs_apsp(c, b));
    }
  }
  CHECK_THROWS_AS(cred_apsp(g, -1), InvalidArgument);
}
