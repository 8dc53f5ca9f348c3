#include <doctest.h>

#include "apspkit/counting.hpp"
#include "apspkit/oracles.hpp"
#include "generators.hpp"

using namespace apspkit;

namespace {

Graph cycle4() {
  Graph g(4, false);
  for (int i = 0; i < 4; ++i) g.add_edge(i, (i + 1) % 4);
  return g;
}

void check_all(const Graph& g) {
  const CountResult o = oracle_count(g);
  const CountResult e = count_exact(g);
  CHECK(e.D == o.D);
  CHECK(e.C == o.C);
  for (std::uint64_t U : {std::uint64_t(2), std::uint64_t(5), std::uint64_t(1000003)}) {
    const CountMatrix cap = count_capped_directed(g, U), mod = count_mod_directed(g, U);
    for (int u = 0; u < g.n(); ++u)
      for (int v = 0; v < g.n(); ++v) {
        const BigInt& x = o.C(u, v);
        CHECK(cap.C(u, v) == (x >= U ? U : x.get_ui()));
        CHECK(mod.C(u, v) == BigInt(x % U).get_ui());
      }
    if (!g.directed()) {
      const CountMatrix sc = count_undirected_seidel(g, CountMode::capped, U);
      const CountMatrix sm = count_undirected_seidel(g, CountMode::mod, U);
      for (int u = 0; u < g.n(); ++u)
        for (int v = 0; v < g.n(); ++v) {
          const BigInt& x = o.C(u, v);
          CHECK(sc.C(u, v) == (x >= U ? U : x.get_ui()));
          CHECK(sm.C(u, v) == BigInt(x % U).get_ui());
        }
    }
  }
  const ApproxCounts ap = count_approx(g, 20);
  for (int u = 0; u < g.n(); ++u)
    for (int v = 0; v < g.n(); ++v) CHECK(ap.C(u, v).relative_error(o.C(u, v)) <= 1.0 / 20);
}

}  // namespace

TEST_CASE("4-cycle counts in every mode") {
  const Graph g = cycle4();
  const CountResult e = count_exact(g);
  CHECK(e.C(0, 2) == 2);
  CHECK(e.C(1, 3) == 2);
  CHECK(e.C(0, 1) == 1);
  CHECK(count_mod_directed(g, 2).C(0, 2) == 0);
  CHECK(count_undirected_seidel(g, CountMode::mod, 2).C(0, 2) == 0);
  CHECK(count_capped_directed(g, 2).C(0, 2) == 2);
  CHECK(count_capped_directed(g, 2).C(0, 1) == 1);
}

TEST_CASE("trees have unique shortest paths") {
  Graph t(9, false);
  for (int v = 1; v < 9; ++v) t.add_edge((v - 1) / 2, v);
  const CountResult e = count_exact(t);
  for (const BigInt& x : e.C.storage()) CHECK(x == 1);
}

TEST_CASE("layered family reaches 2^20 paths end to end") {
  const Graph g = gen::bigcount_layered(66);
  const CountResult e = count_exact(g);
  CHECK(e.C == oracle_count(g).C);
  BigInt top = 0;
  for (const BigInt& x : e.C.storage()) top = std::max(top, x);
  CHECK(top >= BigInt(1) << 20);
}

TEST_CASE("random graphs, both orientations, short and long distances") {
  for (int s = 1; s <= 4; ++s) {
    check_all(gen::random_digraph(45, 0.12, s));
    check_all(gen::random_undirected(45, 0.03 + 0.01 * s, s));
    Graph g = gen::random_digraph(50, 0.02, 40 + s);
    for (int v = 0; v + 2 < 50; v += 2) g.add_edge(v, v + 2);
    check_all(g);
  }
}

TEST_CASE("worker count does not change results") {
  const Graph g = gen::random_digraph(60, 0.1, 3);
  CountOptions one, many;
  one.workers = 1;
  many.workers = 4;
  CHECK(count_exact(g, one).C == count_exact(g, many).C);
}

TEST_CASE("capped certificate rejects tampered counts") {
  const Graph g = gen::random_digraph(30, 0.15, 8);
  CountMatrix c = count_capped_directed(g, 50);
  CHECK(certify_capped_counts(g, c.D, c.C, 50));
  for (std::size_t i = 0; i < c.C.rows(); ++i)
    for (std::size_t j = 0; j < c.C.cols(); ++j)
      if (i != j && c.C(i, j) > 0 && c.C(i, j) < 50) {
        c.C(i, j) += 1;
        CHECK_FALSE(certify_capped_counts(g, c.D, c.C, 50));
        return;
      }
}

TEST_CASE("weighted input is rejected") {
  const Graph g = gen::random_digraph(10, 0.3, 1, 1, 4);
  CHECK_THROWS(count_exact(g));
  CHECK_THROWS(count_capped_directed(g, 4));
}

TEST_CASE("betweenness") {
  Graph star(4, false);
  for (int leaf = 1; leaf < 4; ++leaf) star.add_edge(0, leaf);
  CHECK(betweenness(star, 0).value == 6);
  CHECK(betweenness(star, 1).value == 0);
  CHECK(betweenness(star, 0, CountMode::approx, 100).as_double() == doctest::Approx(6.0).epsilon(0.02));
  // 4-cycle: each vertex sits on one of the two paths between its neighbours
  const Graph c = cycle4();
  CHECK(betweenness(c, 0).value == 1);
  for (int s = 1; s <= 5; ++s) {
    const Graph g = s % 2 ? gen::random_digraph(30, 0.12, s) : gen::random_undirected(30, 0.1, s);
    const std::vector<Rational> want = brandes_bc(g);
    for (int v = 0; v < g.n(); ++v) CHECK(betweenness(g, v).value == want[v]);
  }
}
