#include <doctest.h>

#include <random>

#include "apspkit/kernels.hpp"
#include "apspkit/minplus.hpp"
#include "apspkit/oracles.hpp"
#include "generators.hpp"

using namespace apspkit;

namespace {

DistMatrix random_matrix(std::mt19937_64& rng, int r, int c, Dist lo, Dist hi, double inf_p) {
  std::uniform_int_distribution<Dist> val(lo, hi);
  std::bernoulli_distribution inf(inf_p);
  DistMatrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = inf(rng) ? kInf : val(rng);
  return m;
}

// triple loop reference with smallest minimizing index
ProductResult reference(const DistMatrix& a, const DistMatrix& b) {
  ProductResult r{DistMatrix(a.rows(), b.cols(), kInf), IndexMatrix(a.rows(), b.cols(), kNoWitness)};
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      for (std::size_t k = 0; k < a.cols(); ++k) {
        const Dist s = add_sat(a(i, k), b(k, j));
        if (s < r.C(i, j)) r.C(i, j) = s, r.W(i, j) = int(k);
      }
  return r;
}

}  // namespace

TEST_CASE("hand product") {
  DistMatrix a(1, 2), b(2, 1);
  a(0, 0) = 1, a(0, 1) = 2, b(0, 0) = 2, b(1, 0) = 1;
  for (EngineKind k : {EngineKind::brute, EngineKind::blocked, EngineKind::scaled}) {
    const ProductResult r = minplus(a, b, {k});
    CHECK(r.C(0, 0) == 3);
    CHECK(r.W(0, 0) == 0);  // both indices tie; the smaller wins
  }
}

TEST_CASE("dimension mismatch is rejected") {
  CHECK_THROWS_AS(minplus(DistMatrix(2, 3, 0), DistMatrix(2, 2, 0)), InvalidArgument);
}

TEST_CASE("all engines match the reference including witnesses") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 40; ++t) {
    const int n1 = 1 + t % 17, n2 = 1 + (t * 7) % 23, n3 = 1 + (t * 5) % 19;
    const DistMatrix a = random_matrix(rng, n1, n2, 0, 30, 0.3);
    const DistMatrix b = random_matrix(rng, n2, n3, 0, 30, 0.3);
    const ProductResult want = reference(a, b);
    for (EngineKind k : {EngineKind::brute, EngineKind::blocked, EngineKind::scaled,
                         EngineKind::automatic}) {
      const ProductResult r = minplus(a, b, {k, 8});
      CHECK(r.C == want.C);
      CHECK(r.W == want.W);
    }
  }
}

TEST_CASE("negative entries work in the comparison engines") {
  std::mt19937_64 rng(12);
  const DistMatrix a = random_matrix(rng, 9, 7, -20, 20, 0.2);
  const DistMatrix b = random_matrix(rng, 7, 5, -20, 20, 0.2);
  CHECK(minplus(a, b, {EngineKind::blocked}).C == reference(a, b).C);
}

TEST_CASE("scalar and AVX2 kernels agree") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 10; ++t) {
    const DistMatrix a = random_matrix(rng, 33, 41 + t, 0, 1000, 0.25);
    const DistMatrix b = random_matrix(rng, 41 + t, 67, 0, 1000, 0.25);
    kernels::force_scalar(true);
    const ProductResult s = minplus(a, b, {EngineKind::blocked});
    kernels::force_scalar(false);
    const ProductResult v = minplus(a, b, {EngineKind::blocked});
    CHECK(s.C == v.C);
    CHECK(s.W == v.W);
  }
  if (const kernels::Table* avx = kernels::avx2()) {
    std::vector<std::uint64_t> x, y;
    for (int i = 0; i < 13; ++i) x.push_back(rng()), y.push_back(rng());
    std::vector<std::uint64_t> z(x.begin(), x.end());
    kernels::scalar().or_row(x.data(), y.data(), x.size());
    avx->or_row(z.data(), y.data(), z.size());
    CHECK(x == z);
    std::vector<double> c1(21, 1.5), c2(21, 1.5), bb(21);
    for (std::size_t i = 0; i < bb.size(); ++i) bb[i] = double(i) * 0.25;
    kernels::scalar().axpy(c1.data(), bb.data(), 3.0, bb.size());
    avx->axpy(c2.data(), bb.data(), 3.0, bb.size());
    CHECK(c1 == c2);
  }
}

TEST_CASE("scaled engine rejects out-of-bound entries") {
  DistMatrix a(1, 1, 5), b(1, 1, 1);
  EntryBounds bounds;
  bounds.max_finite_a = 4;
  bounds.max_finite_b = 4;
  CHECK_THROWS(minplus_scaled(a, b, bounds));
}

TEST_CASE("scaled counts give the number of minimizing indices") {
  std::mt19937_64 rng(14);
  const DistMatrix a = random_matrix(rng, 6, 9, 0, 3, 0.2);
  const DistMatrix b = random_matrix(rng, 9, 7, 0, 3, 0.2);
  const ScaledCounts sc = minplus_scaled_counts(a, b, {Dist(3), Dist(3), {}, {}});
  const Matrix<std::uint64_t> wc = witness_count_product(a, b);
  const ProductResult want = reference(a, b);
  CHECK(sc.C == want.C);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 7; ++j) {
      std::uint64_t ties = 0;
      for (int k = 0; k < 9; ++k)
        if (want.C(i, j) != kInf && add_sat(a(i, k), b(k, j)) == want.C(i, j)) ++ties;
      CHECK(sc.digit(i, j) == ties);
      CHECK(wc(i, j) == ties);
    }
}

TEST_CASE("sparse range product on wanted cells") {
  std::mt19937_64 rng(15);
  const DistMatrix a = random_matrix(rng, 12, 30, 0, 4, 0.3);
  const DistMatrix b = random_matrix(rng, 30, 10, 0, 500, 0.3);
  const ProductResult want = reference(a, b);
  std::vector<Cell> cells;
  for (int i = 0; i < 12; i += 2)
    for (int j = 0; j < 10; j += 3) cells.push_back({i, j});
  EntryBounds bounds;
  bounds.max_finite_a = 4;
  for (std::size_t t : {std::size_t(1), std::size_t(2), std::size_t(7)}) {
    const std::vector<Dist> got = minplus_sparse_range(a, b, bounds, cells, t);
    for (std::size_t c = 0; c < cells.size(); ++c)
      CHECK(got[c] == want.C(cells[c].i, cells[c].j));
  }
}

TEST_CASE("shifted product on metric operands") {
  const Graph g = gen::random_undirected(30, 0.15, 16);
  const DistMatrix d = bfs_apsp(g);
  const Dist ell = 3;
  DistMatrix a = d;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) > ell) a(i, j) = kInf;
  REQUIRE(shifted_precondition_holds(a, d));
  ShiftedOptions opt;
  opt.verify_precondition = true;
  CHECK(minplus_shifted(a, d, ell, opt) == reference(a, d).C);
  CHECK_THROWS_AS(minplus_shifted(d, d, 1), BoundViolation);
}

TEST_CASE("funny product sums counts over minimizing indices") {
  std::mt19937_64 rng(17);
  const int n = 9;
  PairMatrix x(n, n), y(n, n);
  std::uniform_int_distribution<std::uint64_t> cnt(1, 5);
  const DistMatrix dx = random_matrix(rng, n, n, 0, 4, 0.3), dy = random_matrix(rng, n, n, 0, 4, 0.3);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      x.D(i, j) = dx(i, j), x.C(i, j) = dx(i, j) == kInf ? 0 : cnt(rng);
      y.D(i, j) = dy(i, j), y.C(i, j) = dy(i, j) == kInf ? 0 : cnt(rng);
    }
  for (std::uint64_t cap : {std::uint64_t(7), kUncapped}) {
    for (FunnyEngine e : {FunnyEngine::direct, FunnyEngine::encoded}) {
      const PairMatrix z = funny_product(x, y, cap, e);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          Dist best = kInf;
          for (int k = 0; k < n; ++k) best = std::min(best, add_sat(dx(i, k), dy(k, j)));
          std::uint64_t total = 0;
          if (best != kInf)
            for (int k = 0; k < n; ++k)
              if (add_sat(dx(i, k), dy(k, j)) == best) total += x.C(i, k) * y.C(k, j);
          CHECK(z.D(i, j) == best);
          CHECK(z.C(i, j) == std::min(total, cap));
        }
    }
  }
}

TEST_CASE("ring products") {
  std::mt19937_64 rng(18);
  const int n = 8;
  CountMatrix64 a(n, n), b(n, n);
  for (auto* m : {&a, &b})
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) (*m)(i, j) = rng() % 1000;
  const CountMatrix64 mp = mod_product(a, b, 97);
  const CountMatrix64 cp = capped_product(a, b, 1000000);
  std::vector<Cell> cells{{0, 0}, {3, 5}, {7, 7}};
  const std::vector<std::uint64_t> wanted = mod_product_wanted(a, b, 97, cells);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::uint64_t s = 0;
      for (int k = 0; k < n; ++k) s += a(i, k) * b(k, j);
      CHECK(mp(i, j) == s % 97);
      CHECK(cp(i, j) == std::min<std::uint64_t>(s, 1000000));
    }
  for (std::size_t c = 0; c < cells.size(); ++c) CHECK(wanted[c] == mp(cells[c].i, cells[c].j));
}

TEST_CASE("approximate count product stays within its factor") {
  std::mt19937_64 rng(19);
  const int n = 20;
  ApproxMatrix a(n, n), b(n, n);
  for (auto* m : {&a, &b})
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        (*m)(i, j) = rng() % 3 == 0 ? ApproxCount::zero() : ApproxCount::from_u64(1 + rng() % 100000);
  std::vector<Cell> cells;
  for (int i = 0; i < n; ++i) cells.push_back({i, (i * 7) % n});
  const std::vector<ApproxCount> exact = approx_count_product_naive(a, b, cells);
  for (std::uint64_t U : {std::uint64_t(10), std::uint64_t(1000)}) {
    const std::vector<ApproxCount> got = approx_count_product(a, b, U, cells, default_group_size(n));
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (exact[c].is_zero()) {
        CHECK(got[c].is_zero());
        continue;
      }
      const double ratio = got[c].to_double() / exact[c].to_double();
      CHECK(ratio <= 1.0 + 1.0 / double(U) + 1e-12);
      CHECK(ratio >= 1.0 / (1.0 + 1.0 / double(U)) - 1e-12);
    }
  }
}
