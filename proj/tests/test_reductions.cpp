#include <doctest.h>

#include <cmath>
#include <sstream>

#include "apspkit/apsp_exact.hpp"
#include "apspkit/lex2.hpp"
#include "apspkit/oracles.hpp"
#include "apspkit/reductions.hpp"
#include "generators.hpp"

using namespace apspkit;

namespace {

MinPlusInstance make(std::vector<std::vector<Dist>> a, std::vector<std::vector<Dist>> b, Dist M) {
  MinPlusInstance in{DistMatrix(a.size(), a[0].size()), DistMatrix(b.size(), b[0].size()), M};
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) in.A(i, j) = a[i][j];
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b[0].size(); ++j) in.B(i, j) = b[i][j];
  return in;
}

}  // namespace

TEST_CASE("hand instances through the unweighted gadget") {
  const MinPlusInstance one = make({{1}}, {{1}}, 1);
  const GadgetGraph g1 = encode_minplus_as_uapsp(one);
  CHECK(bfs_apsp(g1.graph)(g1.decode.rows[0], g1.decode.cols[0]) == 4);
  CHECK(decode_distances(g1.decode, bfs_apsp(g1.graph))(0, 0) == 2);

  const MinPlusInstance two = make({{1, 2}}, {{2}, {1}}, 2);
  const GadgetGraph g2 = encode_minplus_as_uapsp(two);
  CHECK(bfs_apsp(g2.graph)(g2.decode.rows[0], g2.decode.cols[0]) == 5);
  CHECK(decode_distances(g2.decode, bfs_apsp(g2.graph))(0, 0) == 3);
}

TEST_CASE("gadget size grows linearly in n2 * M") {
  const MinPlusInstance a = gen::random_instance(3, 2, 3, 4, 1);
  const MinPlusInstance b = gen::random_instance(3, 4, 3, 4, 1);
  const MinPlusInstance c = gen::random_instance(3, 4, 3, 8, 1);
  const int na = encode_minplus_as_uapsp(a).graph.n(), nb = encode_minplus_as_uapsp(b).graph.n(),
            nc = encode_minplus_as_uapsp(c).graph.n();
  CHECK(nb - 6 == 2 * (na - 6));
  CHECK(nc - 6 == 2 * (nb - 6) - 4);  // spines of 2M + 1 vertices
  CHECK(na == 6 + 2 * (2 * 4 + 1));
}

TEST_CASE("every gadget round-trips random instances") {
  for (int s = 1; s <= 15; ++s) {
    const MinPlusInstance inst = gen::random_instance(1 + s % 6, 1 + s % 4, 1 + (s * 3) % 7, 1 + s % 7, s);
    const DistMatrix want = brute_minplus(inst);
    const GadgetGraph u = encode_minplus_as_uapsp(inst);
    CHECK(decode_distances(u.decode, bfs_apsp(u.graph)) == want);
    const GadgetGraph d = encode_minplus_as_dag_aplp(inst);
    CHECK(decode_distances(d.decode, dag_longest_paths(d.graph)) == want);
    for (int c : {2, 3, 5}) {
      const GadgetGraph r = encode_minplus_as_2red(inst, c);
      CHECK(decode_distances(r.decode, budgeted_bfs_apsp(r.graph, c)) == want);
    }
    const GadgetGraph l = encode_minplus_as_aplsp01(inst);
    CHECK(decode_lex(l.decode, aplsp(l.graph)) == want);
    const GadgetGraph v = encode_minplus_as_vertex_weighted(inst);
    CHECK(decode_distances(v.decode, vertex_weighted_apsp(v.graph)) == want);
  }
}

TEST_CASE("additive gadget decodes through the approximation") {
  const MinPlusInstance inst = gen::random_instance(3, 2, 3, 3, 4);
  const ErrorProfile f = ErrorProfile::power(0.0);
  const GadgetGraph g = encode_minplus_additive_lb(inst, f, 36);
  CHECK(decode_distances(g.decode, approx_apsp(g.graph, f).estimate) == brute_minplus(inst));
  CHECK(decode_distances(g.decode, bfs_apsp(g.graph)) == brute_minplus(inst));
}

TEST_CASE("additive gadget with the square-root profile at ell 36") {
  const MinPlusInstance inst = make({{1}}, {{1}}, 1);
  const ErrorProfile f = ErrorProfile::power(0.5);
  // 36 / (12 * 6) < 1, so the strict entry bound cannot hold
  CHECK_THROWS_AS(encode_minplus_additive_lb(inst, f, 36), ValidationError);
  const GadgetGraph g = encode_minplus_additive_lb(inst, f, 36, true);
  const Dist d = bfs_apsp(g.graph)(g.decode.rows[0], g.decode.cols[0]);
  CHECK(d == 36 + 6 * 6 * 2);
  CHECK(decode_distances(g.decode, approx_apsp(g.graph, f).estimate)(0, 0) == 2);
}

TEST_CASE("minimum equality witness") {
  const DistMatrix a = make({{5, 7}}, {{0}}, 7).A;
  DistMatrix b(2, 1);
  b(0, 0) = 7, b(1, 0) = 7;
  CHECK(brute_minwitness_eq(a, b)(0, 0) == 1);
  for (int s = 1; s <= 10; ++s) {
    const MinPlusInstance inst = gen::random_instance(4, 3, 5, 1 + s % 5, s);
    const MinWitnessEncoding enc = encode_minplus_as_minwitness_eq(inst);
    CHECK(enc.decode(brute_minwitness_eq(enc.A, enc.B)) == brute_minplus(inst));
  }
}

TEST_CASE("unique product via counting probes") {
  for (CountMode mode : {CountMode::mod, CountMode::capped}) {
    const CountingTarget target = default_counting_target(mode, 2);
    for (int s = 1; s <= 3; ++s) {
      const MinPlusInstance inst = gen::random_instance(4, 3, 4, 3, s);
      UniqueMinPlusStats stats;
      UniqueMinPlusOptions opt;
      opt.seed = s;
      CHECK(unique_minplus_via_counting(inst, target, opt, &stats) == brute_minplus(inst));
      CHECK(stats.seed == std::uint64_t(s));
      CHECK(stats.solver_calls > 0);
      CHECK(stats.unresolved == 0);
    }
  }
}

TEST_CASE("instance and decode map serialisation") {
  const MinPlusInstance inst = gen::random_instance(3, 2, 4, 5, 9);
  std::stringstream ss;
  write_instance(ss, inst);
  const MinPlusInstance back = read_instance(ss);
  CHECK(back.A == inst.A);
  CHECK(back.B == inst.B);
  CHECK(back.M == inst.M);

  const GadgetGraph g = encode_minplus_as_aplsp01(inst);
  std::stringstream ms;
  write_decode_map(ms, g.decode);
  const DecodeMap m = read_decode_map(ms);
  CHECK(m.gadget == g.decode.gadget);
  CHECK(m.secondary == g.decode.secondary);
  CHECK(m.rows == g.decode.rows);
  CHECK(m.cols == g.decode.cols);
  CHECK(m.offset == g.decode.offset);

  MinPlusInstance bad = inst;
  bad.A(0, 0) = 99;
  CHECK_THROWS_AS(validate_instance(bad), ValidationError);
}
