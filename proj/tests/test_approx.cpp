#include <doctest.h>

#include <cmath>

#include "apspkit/approx.hpp"
#include "apspkit/oracles.hpp"
#include "generators.hpp"

using namespace apspkit;

namespace {

void check_contract(const Graph& g, double p) {
  const ErrorProfile f = ErrorProfile::power(p);
  const ApproxResult r = approx_apsp(g, f);
  const DistMatrix d = dijkstra_apsp(g);
  for (int u = 0; u < g.n(); ++u)
    for (int v = 0; v < g.n(); ++v) {
      if (d(u, v) == kInf) {
        CHECK(r.estimate(u, v) == kInf);
        continue;
      }
      const Dist slack = p == 0.0 ? 0 : r.cert.K * Dist(std::ceil(std::pow(double(d(u, v)), p)));
      CHECK(r.estimate(u, v) >= d(u, v));
      CHECK(r.estimate(u, v) <= d(u, v) + slack);
    }
}

}  // namespace

TEST_CASE("error profiles") {
  const ErrorProfile sq = ErrorProfile::power(0.5);
  CHECK(sq(16) == doctest::Approx(4.0));
  const ErrorProfile t = ErrorProfile::table({1, 1, 1.5, 2});
  CHECK(t(3) == doctest::Approx(1.5));
  CHECK_THROWS(ErrorProfile::power(-0.5));
}

TEST_CASE("additive contract for several exponents") {
  for (int s = 1; s <= 4; ++s)
    for (double p : {0.0, 0.25, 0.5, 1.0}) check_contract(gen::random_digraph(60, 0.04, s, 1, 3), p);
}

TEST_CASE("zero weights are rejected") {
  Graph g(2, true);
  g.add_edge(0, 1, 0);
  CHECK_THROWS(approx_apsp(g, ErrorProfile::power(0.5)));
}

TEST_CASE("reported paths realise the estimate") {
  const Graph g = gen::random_digraph(50, 0.05, 9, 1, 2);
  const ApproxResult r = approx_apsp(g, ErrorProfile::power(0.5));
  const DistMatrix w = weight_matrix(g);
  for (int u = 0; u < 50; u += 4)
    for (int v = 1; v < 50; v += 7) {
      if (u == v || r.estimate(u, v) == kInf) continue;
      const std::vector<int> p = approx_path(g, r, u, v);
      REQUIRE(p.front() == u);
      REQUIRE(p.back() == v);
      Dist len = 0;
      for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        REQUIRE(w(p[i], p[i + 1]) != kInf);
        len += w(p[i], p[i + 1]);
      }
      CHECK(len <= r.estimate(u, v));
    }
}
