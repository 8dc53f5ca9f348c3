#include <doctest.h>

#include <sstream>

#include "apspkit/graph.hpp"
#include "apspkit/hitting.hpp"
#include "apspkit/oracles.hpp"
#include "generators.hpp"

using namespace apspkit;

TEST_CASE("graph text round trip") {
  Graph g(4, true);
  g.add_edge(0, 1, 3);
  g.add_edge(1, 2, -1);
  g.add_edge(2, 3, 2);
  std::stringstream ss;
  write_graph(ss, g);
  const Graph h = read_graph(ss);
  CHECK(h.n() == 4);
  CHECK(h.directed());
  CHECK(weight_matrix(h) == weight_matrix(g));
}

TEST_CASE("range check and invalid vertices") {
  Graph g(3, false);
  CHECK_THROWS(g.add_edge(0, 5));
  g.add_edge(0, 1, 7);
  CHECK_THROWS(require_w1_range(g, 0, 3, "test"));
  CHECK_NOTHROW(require_w1_range(g, 0, 7, "test"));
}

TEST_CASE("oracles agree with each other") {
  for (int s = 1; s <= 6; ++s) {
    const Graph u = gen::random_digraph(40, 0.08, s);
    CHECK(bfs_apsp(u) == floyd_warshall(u));
    const Graph w = gen::random_digraph(40, 0.08, s, 0, 9);
    const DistMatrix fw = floyd_warshall(w);
    CHECK(dijkstra_apsp(w) == fw);
    CHECK(bellman_ford_apsp(w) == fw);
    CHECK(johnson_apsp(w) == fw);
  }
}

TEST_CASE("hand distances on a path") {
  Graph g(4, false);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 3);
  const DistMatrix d = bfs_apsp(g);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(d(i, j) == std::abs(i - j));
}

TEST_CASE("negative cycle is reported") {
  Graph g(3, true);
  g.add_edge(0, 1, 1);
  g.add_edge(1, 2, -3);
  g.add_edge(2, 0, 1);
  CHECK_THROWS_AS(bellman_ford_apsp(g), NegativeCycle);
}

TEST_CASE("shortest path counts on a 4-cycle") {
  Graph g(4, false);
  for (int i = 0; i < 4; ++i) g.add_edge(i, (i + 1) % 4);
  const CountResult r = oracle_count(g);
  CHECK(r.C(0, 2) == 2);
  CHECK(r.C(0, 1) == 1);
  CHECK(r.C(0, 0) == 1);
  CHECK(r.D(0, 2) == 2);
}

TEST_CASE("level sequence and hitting sets") {
  const std::vector<Dist> want{1, 2, 3, 4, 6, 9, 13};
  CHECK(level_sequence(13) == want);
  CHECK(level_at_least(10) == 13);
  HittingFamily fam(200, 5, 4.0);
  CHECK(fam.at(1).size() == 200);
  CHECK(fam.at(400).empty());
  // nested prefixes: larger levels keep a subset of the smaller ones
  const auto small = fam.at(20), large = fam.at(9);
  for (int v : small) CHECK(std::binary_search(large.begin(), large.end(), v));
  CHECK(derive_seed(9, 0) == 9);
  CHECK(derive_seed(9, 1) != derive_seed(9, 2));
}

TEST_CASE("generators are deterministic") {
  const Graph a = gen::random_digraph(50, 0.1, 42), b = gen::random_digraph(50, 0.1, 42);
  CHECK(weight_matrix(a) == weight_matrix(b));
  const Graph c = gen::random_digraph(50, 0.1, 43);
  CHECK(weight_matrix(a) != weight_matrix(c));
  const MinPlusInstance i1 = gen::random_instance(5, 3, 4, 6, 7), i2 = gen::random_instance(5, 3, 4, 6, 7);
  CHECK(i1.A == i2.A);
  CHECK(i1.B == i2.B);
  CHECK_THROWS_AS(gen::make_graph(gen::Params{"nope"}), InvalidArgument);
}

TEST_CASE("layered family has counts of at least n/6 bits") {
  const Graph g = gen::bigcount_layered(120);
  const CountResult r = oracle_count(g);
  BigInt top = 0;
  for (const BigInt& x : r.C.storage()) top = std::max(top, x);
  CHECK(mpz_sizeinbase(top.get_mpz_t(), 2) >= 20);
}
