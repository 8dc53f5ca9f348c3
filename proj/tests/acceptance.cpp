// Acceptance suite: one PASS/FAIL line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "apspkit/approx.hpp"
#include "apspkit/apsp_exact.hpp"
#include "apspkit/counting.hpp"
#include "apspkit/lex2.hpp"
#include "apspkit/minplus.hpp"
#include "apspkit/oracles.hpp"
#include "apspkit/reductions.hpp"
#include "bench.hpp"
#include "generators.hpp"

using namespace apspkit;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;
  void fail(const std::string& why) {
    if (ok) note = why;
    ok = false;
  }
};

int failures = 0;

void report(int id, const char* title, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.fail(std::string("exception: ") + e.what());
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0 && secs > limit_s) {
    std::ostringstream os;
    os << "runtime " << secs << " s exceeds " << limit_s << " s";
    out.fail(os.str());
  }
  if (!out.ok) ++failures;
  std::printf("%s %d %s (%.2f s)%s%s\n", out.ok ? "PASS" : "FAIL", id, title, secs,
              out.note.empty() ? "" : ": ", out.note.c_str());
  std::fflush(stdout);
}

DistMatrix random_matrix(std::mt19937_64& rng, int r, int c, Dist hi, double inf_p) {
  std::uniform_int_distribution<Dist> val(0, hi);
  std::bernoulli_distribution inf(inf_p);
  DistMatrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = inf(rng) ? kInf : val(rng);
  return m;
}

bool witnesses_verify(const DistMatrix& a, const DistMatrix& b, const ProductResult& r) {
  for (std::size_t i = 0; i < r.C.rows(); ++i)
    for (std::size_t j = 0; j < r.C.cols(); ++j) {
      const int k = r.W(i, j);
      if (r.C(i, j) == kInf) {
        if (k != kNoWitness) return false;
        continue;
      }
      if (k < 0 || k >= int(a.cols()) || add_sat(a(i, k), b(k, j)) != r.C(i, j)) return false;
    }
  return true;
}

// weights in [lo, hi] shifted by random potentials; negative arcs but no negative cycles
Graph potential_shifted(const Graph& g, std::uint64_t seed, Dist spread) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Dist> pot(0, spread);
  std::vector<Dist> phi(g.n());
  for (Dist& x : phi) x = pot(rng);
  Graph h(g.n(), true);
  for (const Edge& e : g.edges()) h.add_edge(e.u, e.v, e.w1 + phi[e.u] - phi[e.v]);
  return h;
}

// est within factor (1 + 1/U) of exact in both directions
bool within_factor(const ApproxCount& est, const BigInt& exact, std::uint64_t U) {
  if (exact == 0) return est.is_zero();
  if (est.is_zero()) return false;
  const double slack = std::log2(1.0 + 1.0 / double(U)) + 1e-12;
  return std::fabs(est.log2() - ApproxCount::from_big(exact).log2()) <= slack;
}

void check_count_modes(Outcome& out, const Graph& g, const CountResult& o, const std::string& tag) {
  const int n = g.n();
  const CountResult e = count_exact(g);
  if (!(e.D == o.D) || !(e.C == o.C)) out.fail(tag + ": exact counts differ");
  for (std::uint64_t U : {2ull, 97ull, 1000003ull}) {
    const CountMatrix cap = count_capped_directed(g, U);
    const CountMatrix mod = count_mod_directed(g, U);
    CountMatrix scap, smod;
    if (!g.directed()) {
      scap = count_undirected_seidel(g, CountMode::capped, U);
      smod = count_undirected_seidel(g, CountMode::mod, U);
    }
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) {
        const BigInt& x = o.C(u, v);
        const std::uint64_t want_cap = x >= U ? U : x.get_ui();
        const std::uint64_t want_mod = BigInt(x % U).get_ui();
        if (cap.C(u, v) != want_cap) out.fail(tag + ": capped U=" + std::to_string(U));
        if (mod.C(u, v) != want_mod) out.fail(tag + ": mod U=" + std::to_string(U));
        if (!g.directed() && (scap.C(u, v) != want_cap || smod.C(u, v) != want_mod))
          out.fail(tag + ": squaring recursion U=" + std::to_string(U));
      }
  }
  for (std::uint64_t U : {10ull, 100ull}) {
    const ApproxCounts ap = count_approx(g, U);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (!within_factor(ap.C(u, v), o.C(u, v), U))
          out.fail(tag + ": approx U=" + std::to_string(U));
  }
}

}  // namespace

int main() {
  report(1, "min-plus engine equivalence", 60, [](Outcome& out) {
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<int> dim(1, 64);
    std::uniform_real_distribution<double> infp(0.0, 0.5);
    for (int t = 0; t < 200; ++t) {
      const int n1 = dim(rng), n2 = dim(rng), n3 = dim(rng);
      const double p = t % 4 == 0 ? 0.0 : infp(rng);
      const DistMatrix a = random_matrix(rng, n1, n2, 100, p);
      const DistMatrix b = random_matrix(rng, n2, n3, 100, p);
      const ProductResult brute = minplus(a, b, {EngineKind::brute});
      if (!witnesses_verify(a, b, brute)) out.fail("brute witnesses");
      for (EngineKind k : {EngineKind::blocked, EngineKind::scaled, EngineKind::automatic}) {
        const ProductResult r = minplus(a, b, {k});
        if (r.C != brute.C) out.fail(std::string(engine_name(k)) + " values differ");
        if (!witnesses_verify(a, b, r)) out.fail(std::string(engine_name(k)) + " witnesses");
      }
    }
  });

  report(2, "exact APSP oracle equivalence", 180, [](Outcome& out) {
    std::mt19937_64 rng(202);
    std::uniform_int_distribution<int> size(2, 128);
    for (int t = 0; t < 50; ++t) {
      const int n = size(rng);
      const double p = (t % 3 == 0 ? 1.2 : 4.0 * std::log(n)) / n;
      const Graph g = gen::random_undirected(n, p, 1000 + t);
      if (seidel_apsp(g) != bfs_apsp(g)) out.fail("seidel on seed " + std::to_string(1000 + t));
    }
    for (int t = 0; t < 50; ++t) {
      const int n = size(rng);
      const double p = (t % 3 == 0 ? 1.5 : 3.0 * std::log(n)) / n;
      const Dist hi = 1 + t % 4;
      Graph g = gen::random_digraph(n, p, 2000 + t, t % 2 ? 0 : 1, hi);
      if (t % 5 == 4) {
        g = potential_shifted(g, 3000 + t, hi);
        if (zwick_apsp(g) != bellman_ford_apsp(g)) out.fail("zwick (negative arcs)");
      } else {
        if (zwick_apsp(g) != floyd_warshall(g)) out.fail("zwick");
      }
    }
    for (int t = 0; t < 50; ++t) {
      const int n = size(rng);
      const double p = (t % 3 == 0 ? 1.2 : 3.0 * std::log(n)) / n;
      const Graph g = gen::random_undirected(n, p, 4000 + t, 0, 1 + t % 5);
      if (undirected_small_weight_apsp(g) != dijkstra_apsp(g)) out.fail("small-weight undirected");
    }
  });

  report(3, "gadget round-trips", 120, [](Outcome& out) {
    {
      MinPlusInstance one{DistMatrix(1, 1, 1), DistMatrix(1, 1, 1), 1};
      const GadgetGraph g = encode_minplus_as_uapsp(one);
      if (bfs_apsp(g.graph)(g.decode.rows[0], g.decode.cols[0]) != 4) out.fail("hand 1x1");
      MinPlusInstance two{DistMatrix(1, 2), DistMatrix(2, 1), 2};
      two.A(0, 0) = 1, two.A(0, 1) = 2, two.B(0, 0) = 2, two.B(1, 0) = 1;
      const GadgetGraph h = encode_minplus_as_uapsp(two);
      if (bfs_apsp(h.graph)(h.decode.rows[0], h.decode.cols[0]) != 5) out.fail("hand 1x2x1");
    }
    std::mt19937_64 rng(303);
    std::uniform_int_distribution<int> d13(1, 8), d2(1, 4);
    std::uniform_int_distribution<Dist> mval(1, 8);
    for (int t = 0; t < 100; ++t) {
      const int n1 = d13(rng), n2 = d2(rng), n3 = d13(rng);
      const MinPlusInstance inst = gen::random_instance(n1, n2, n3, mval(rng), 5000 + t);
      const DistMatrix want = brute_minplus(inst);

      const GadgetGraph u = encode_minplus_as_uapsp(inst);
      const DistMatrix du = zwick_apsp(u.graph);
      if (decode_distances(u.decode, du) != want) out.fail("uapsp");
      for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n3; ++j)
          if (du(u.decode.rows[i], u.decode.cols[j]) != add_sat(2, want(i, j)))
            out.fail("uapsp distance != 2 + product");

      const GadgetGraph dag = encode_minplus_as_dag_aplp(inst);
      if (decode_distances(dag.decode, dag_longest_paths(dag.graph)) != want) out.fail("dag aplp");

      for (int c : {2, 3}) {
        const GadgetGraph r = encode_minplus_as_2red(inst, c);
        if (decode_distances(r.decode, cred_apsp(r.graph, c)) != want)
          out.fail("red budget " + std::to_string(c));
      }
      const GadgetGraph l = encode_minplus_as_aplsp01(inst);
      if (decode_lex(l.decode, aplsp(l.graph)) != want) out.fail("aplsp 0/1");

      const GadgetGraph vw = encode_minplus_as_vertex_weighted(inst);
      if (decode_distances(vw.decode, vertex_weighted_apsp(vw.graph)) != want)
        out.fail("vertex weighted");

      const MinWitnessEncoding mw = encode_minplus_as_minwitness_eq(inst);
      if (mw.decode(brute_minwitness_eq(mw.A, mw.B)) != want) out.fail("min equality witness");
    }
  });

  report(4, "additive approximation contract", 180, [](Outcome& out) {
    std::mt19937_64 rng(404);
    std::uniform_int_distribution<int> size(2, 128);
    for (int t = 0; t < 30; ++t) {
      const int n = size(rng);
      const double p = (t % 2 ? 1.5 : 3.0) / n + 1.0 / n;
      const Graph g = gen::random_digraph(n, p, 6000 + t, 1, 1 + t % 3);
      const DistMatrix exact = dijkstra_apsp(g);
      for (double ex : {0.0, 0.25, 0.5, 1.0}) {
        const ErrorProfile f = ErrorProfile::power(ex);
        const ApproxResult r = approx_apsp(g, f);
        const int K = r.cert.K;
        if (K < 1 || K > 4) out.fail("K out of range");
        for (int u = 0; u < n; ++u)
          for (int v = 0; v < n; ++v) {
            const Dist d = exact(u, v), e = r.estimate(u, v);
            if (d == kInf) {
              if (e != kInf) out.fail("finite estimate for unreachable pair");
              continue;
            }
            const Dist slack = ex == 0.0 ? 0 : K * Dist(std::ceil(std::pow(double(d), ex)));
            if (e < d || e > d + slack) out.fail("bound violated at p=" + std::to_string(ex));
          }
      }
    }
  });

  report(5, "additive lower-bound gadget decode", 0, [](Outcome& out) {
    std::mt19937_64 rng(505);
    for (int t = 0; t < 50; ++t) {
      // constant profile on even trials, fourth-root profile on odd ones
      const bool root = t % 2;
      const ErrorProfile f = ErrorProfile::power(root ? 0.25 : 0.0);
      const Dist M = root ? 2 : 3, ell = root ? 70 : 36;
      std::uniform_int_distribution<int> d13(1, root ? 4 : 6), d2(1, root ? 2 : 4);
      const MinPlusInstance inst = gen::random_instance(d13(rng), d2(rng), d13(rng), M, 7000 + t);
      const DistMatrix want = brute_minplus(inst);
      const GadgetGraph gg = encode_minplus_additive_lb(inst, f, ell);
      const ApproxResult r = approx_apsp(gg.graph, f);
      if (decode_distances(gg.decode, r.estimate) != want) out.fail("decode differs");
      const DistMatrix exact = bfs_apsp(gg.graph);
      const double window = 2.0 * f(ell);
      for (std::size_t i = 0; i < gg.decode.rows.size(); ++i)
        for (std::size_t j = 0; j < gg.decode.cols.size(); ++j) {
          const Dist d = exact(gg.decode.rows[i], gg.decode.cols[j]);
          const Dist e = r.estimate(gg.decode.rows[i], gg.decode.cols[j]);
          if (want(i, j) == kInf) {
            if (d != kInf) out.fail("unreachable cell became finite");
            continue;
          }
          if (d != ell + gg.decode.divisor * want(i, j)) out.fail("distance != ell + step * product");
          if (double(e - d) > window) out.fail("estimate outside decode window");
        }
    }
  });

  report(6, "lexicographic APSP correctness", 180, [](Outcome& out) {
    std::mt19937_64 rng(606);
    std::uniform_int_distribution<int> size(2, 64);
    for (int t = 0; t < 50; ++t) {
      const int n = size(rng);
      const double p = (t % 3 == 0 ? 1.5 : 4.0) / n + 1.0 / n;
      const Graph d = gen::dual_weight_graph(n, p, true, 0, 2, 0, 3, 8000 + t);
      if (!(lex2_directed(d) == lex_dijkstra_apsp(d))) out.fail("lex2_directed");
      const Graph u = gen::dual_weight_graph(n, p, false, 1, 2, 0, 3, 8100 + t);
      if (!(lex2_undirected_positive(u) == lex_dijkstra_apsp(u))) out.fail("lex2_undirected_positive");
      const Graph q = gen::dual_weight_graph(n, p, t % 2, 1, 2, 0, 3, 8200 + t);
      if (!(lex2_gamma(q) == lex_dijkstra_apsp(q))) out.fail("lex2_gamma");
    }
  });

  report(7, "shortest-path counting tower", 300, [](Outcome& out) {
    std::mt19937_64 rng(707);
    std::uniform_int_distribution<int> size(2, 96);
    for (int t = 0; t < 50; ++t) {
      const int n = size(rng);
      const double p = (t % 3 == 0 ? 1.5 : 4.0 * std::log(n + 1)) / n;
      const Graph g = t % 2 ? gen::random_undirected(n, p, 9000 + t)
                            : gen::random_digraph(n, p, 9000 + t);
      check_count_modes(out, g, oracle_count(g), "random seed " + std::to_string(9000 + t));
    }
    for (int n : {24, 60, 120}) {
      for (bool directed : {true, false}) {
        const Graph g = gen::bigcount_layered(n, directed);
        const CountResult o = oracle_count(g);
        BigInt top = 0;
        for (const BigInt& x : o.C.storage()) top = std::max(top, x);
        if (mpz_sizeinbase(top.get_mpz_t(), 2) < std::size_t(n / 6)) out.fail("layered counts too small");
        check_count_modes(out, g, o, "layered n=" + std::to_string(n));
      }
    }
  });

  report(8, "betweenness centrality", 0, [](Outcome& out) {
    std::mt19937_64 rng(808);
    std::uniform_int_distribution<int> size(2, 64);
    for (int t = 0; t < 30; ++t) {
      const int n = size(rng);
      const double p = 3.0 / n + 1.0 / n;
      const Graph g = t % 2 ? gen::random_undirected(n, p, 10000 + t)
                            : gen::random_digraph(n, p, 10000 + t);
      const std::vector<Rational> want = brandes_bc(g);
      const CountResult counts = count_exact(g);
      for (int v = 0; v < n; ++v) {
        if (betweenness_from_counts(counts, v) != want[v]) out.fail("bc from counts");
        if (v % 7 == 0 && betweenness(g, v).value != want[v]) out.fail("bc entry point");
      }
    }
    Graph star(4, false);
    for (int leaf = 1; leaf < 4; ++leaf) star.add_edge(0, leaf);
    if (betweenness(star, 0).value != 6) out.fail("star center");
    Graph tree(7, false);
    for (int v = 1; v < 7; ++v) tree.add_edge((v - 1) / 2, v);
    for (int leaf : {3, 4, 5, 6})
      if (betweenness(tree, leaf).value != 0) out.fail("tree leaf");
  });

  report(9, "one-red and budgeted-red coherence", 0, [](Outcome& out) {
    std::mt19937_64 rng(909);
    std::uniform_int_distribution<int> size(2, 64);
    for (int t = 0; t < 50; ++t) {
      const int n = size(rng);
      const Graph g = gen::colored_graph(n, 3.0 / n + 1.0 / n, 0.35, 11000 + t);
      if (one_red_apsp(g) != cred_apsp(g, 1)) out.fail("one-red vs budget 1");
      DistMatrix prev;
      for (int c : {0, 1, 2, 3}) {
        const DistMatrix d = cred_apsp(g, c);
        if (d != budgeted_bfs_apsp(g, c)) out.fail("budget " + std::to_string(c) + " vs oracle");
        if (c > 0)
          for (std::size_t k = 0; k < d.storage().size(); ++k)
            if (d.storage()[k] > prev.storage()[k]) out.fail("not monotone in budget");
        prev = d;
      }
    }
  });

  report(10, "unique min-plus via counting", 120, [](Outcome& out) {
    const CountingTarget target = default_counting_target(CountMode::mod, 2);
    int successes = 0;
    std::string failed;
    for (int t = 0; t < 100; ++t) {
      const MinPlusInstance inst = gen::random_instance(8, 4, 8, 1 + t % 8, 12000 + t);
      UniqueMinPlusOptions opt;
      opt.seed = 500 + t;
      UniqueMinPlusStats stats;
      try {
        if (unique_minplus_via_counting(inst, target, opt, &stats) == brute_minplus(inst))
          ++successes;
        else
          failed += " wrong(seed " + std::to_string(opt.seed) + ")";
      } catch (const ProbabilisticFailure& e) {
        failed += " unresolved(seed " + std::to_string(stats.seed) + ", cells " +
                  std::to_string(stats.unresolved) + ")";
      }
    }
    if (!failed.empty()) std::printf("  reported failures:%s\n", failed.c_str());
    if (successes < 99) out.fail(std::to_string(successes) + "/100 succeeded");
    else out.note = std::to_string(successes) + "/100 succeeded";
  });

  report(11, "performance sanity", 0, [](Outcome& out) {
    const Graph dense = gen::random_digraph(256, 0.5, 13000);
    auto t0 = std::chrono::steady_clock::now();
    count_exact(dense);
    const double count_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (count_s >= 120) out.fail("count_exact n=256 too slow");

    CostModel cm;
    const bench::Report rep = bench::run("minplus-brute", {64, 128, 256}, 3, 1, cm);
    if (rep.slope < 2.7 || rep.slope > 3.3) out.fail("brute slope " + std::to_string(rep.slope));

    double seidel = 1e30, brute = 1e30;
    for (int rep_i = 0; rep_i < 3; ++rep_i) {
      seidel = std::min(seidel, bench::run_once("seidel", 256, 1));
      brute = std::min(brute, bench::run_once("apsp-brute", 256, 1));
    }
    if (seidel >= brute) out.fail("seidel not faster than brute APSP");
    std::ostringstream os;
    os << "count_exact " << count_s << " s, brute slope " << rep.slope << ", seidel " << seidel
       << " s vs brute " << brute << " s";
    if (out.ok) out.note = os.str();
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
