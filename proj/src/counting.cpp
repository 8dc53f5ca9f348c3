#include "apspkit/counting.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <thread>

#include "apspkit/hitting.hpp"
#include "apspkit/lex2.hpp"
#include "distance_buckets.hpp"
#include "slice_schedule.hpp"

namespace apspkit {

const char* count_mode_name(CountMode m) {
  switch (m) {
    case CountMode::exact: return "exact";
    case CountMode::capped: return "capped";
    case CountMode::mod: return "mod";
    case CountMode::approx: return "approx";
  }
  return "?";
}

namespace {

using detail::DistanceBuckets;

template <class F>
void parallel_for(int count, int workers, F&& f) {
  int w = workers > 0 ? workers : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  w = std::min(w, count);
  if (w <= 1) {
    for (int i = 0; i < count; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int k = 0; k < w; ++k)
    pool.emplace_back([&] {
      for (int i; (i = next.fetch_add(1)) < count;) f(i);
    });
  for (auto& t : pool) t.join();
}

DistMatrix unweighted_distances(const Graph& g, const CountOptions& opt) {
  if (!g.directed()) return seidel_apsp(g);
  ZwickOptions zo;
  zo.engine = opt.engine;
  zo.sample = opt.sample;
  return zwick_apsp(g, zo);
}

Dist max_dist(const DistMatrix& d) {
  Dist m = 0;
  for (Dist x : d.storage())
    if (x != kInf) m = std::max(m, x);
  return m;
}

GammaScale pick_gamma(const DistMatrix& d, int n, double c) {
  for (;; c *= 2) {
    try {
      return select_gamma(d, n, 4, c);
    } catch (const ConstantTooSmall&) {
      if (c > 1e6) throw;
    }
  }
}

// Counts by distance slices: slices up to the schedule base come from the
// last-edge recurrence, later slices from one ring product each. `ring`
// supplies zero(), one(), add(x, y) and product(left, right, wanted).
template <class T, class Ring>
Matrix<T> slice_counts(const Graph& g, const DistMatrix& D, Ring& ring, double gamma_c,
                       int* products) {
  const int n = g.n();
  Matrix<T> C(n, n, ring.zero());
  const DistanceBuckets bk(D);
  const Dist base = detail::slice_base_top(1);
  for (int u = 0; u < n; ++u) {
    C(u, u) = ring.one();
    for (Dist a = 1; a <= std::min(base, bk.maxd); ++a) {
      auto [b, e] = bk.at(u, a);
      for (const int* p = b; p != e; ++p) {
        T sum = ring.zero();
        for (const Arc* x = g.in_begin(*p); x != g.in_end(*p); ++x)
          if (D(u, x->to) == a - 1) sum = ring.add(sum, C(u, x->to));
        C(u, *p) = sum;
      }
    }
  }
  if (bk.maxd <= base) return C;
  const GammaScale gam = pick_gamma(D, n, gamma_c);
  detail::slice_schedule(bk.maxd, gam, 1, 1, [&](Dist a, const std::vector<detail::Split>& splits) {
    std::vector<int> us, vs;
    std::vector<char> vcol(n, 0);
    for (int u = 0; u < n; ++u) {
      auto [b, e] = bk.at(u, a);
      if (b == e) continue;
      us.push_back(u);
      for (const int* p = b; p != e; ++p) vcol[*p] = 1;
    }
    if (us.empty()) return;
    if (splits.size() != 1) throw Error("slice counting needs exactly one split per distance");
    const detail::Split sp = splits[0];
    for (int v = 0; v < n; ++v)
      if (vcol[v]) vs.push_back(v);
    std::vector<Cell> wanted;
    for (std::size_t x = 0; x < us.size(); ++x)
      for (std::size_t y = 0; y < vs.size(); ++y)
        if (D(us[x], vs[y]) == a) wanted.push_back({int(x), int(y)});
    Matrix<T> left(us.size(), n, ring.zero()), right(n, vs.size(), ring.zero());
    for (std::size_t x = 0; x < us.size(); ++x)
      for (int z = 0; z < n; ++z)
        if (D(us[x], z) == sp.prefix) left(x, z) = C(us[x], z);
    for (int z = 0; z < n; ++z)
      for (std::size_t y = 0; y < vs.size(); ++y)
        if (D(z, vs[y]) == sp.suffix) right(z, y) = C(z, vs[y]);
    auto out = ring.product(left, right, wanted);
    ++*products;
    for (std::size_t q = 0; q < wanted.size(); ++q) C(us[wanted[q].i], vs[wanted[q].j]) = out[q];
  });
  return C;
}

struct ModRing {
  std::uint64_t U;
  std::uint64_t zero() const { return 0; }
  std::uint64_t one() const { return 1 % U; }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return mod_add(a, b, U); }
  std::vector<std::uint64_t> product(const CountMatrix64& a, const CountMatrix64& b,
                                     const std::vector<Cell>& w) const {
    return mod_product_wanted(a, b, U, w);
  }
};

struct ApproxRing {
  std::uint64_t U;
  std::size_t t;
  ApproxCount zero() const { return {}; }
  ApproxCount one() const { return ApproxCount::from_u64(1); }
  ApproxCount add(const ApproxCount& a, const ApproxCount& b) const { return a + b; }
  std::vector<ApproxCount> product(const ApproxMatrix& a, const ApproxMatrix& b,
                                   const std::vector<Cell>& w) const {
    return approx_count_product(a, b, U, w, t);
  }
};

}  // namespace

CountResult count_exact(const Graph& g, const CountOptions& opt) {
  require_unweighted(g, "count_exact");
  const int n = g.n();
  CountResult r{unweighted_distances(g, opt), Matrix<BigInt>(n, n, BigInt(0))};
  if (n == 0) return r;
  const DistMatrix& D = r.D;
  auto& C = r.C;
  const DistanceBuckets bk(D);
  for (int u = 0; u < n; ++u) {
    C(u, u) = 1;
    for (const Arc* a = g.out_begin(u); a != g.out_end(u); ++a)
      if (D(u, a->to) == 1) C(u, a->to) += 1;
  }
  // counts for every pair at distance <= p are known; extend to ell by
  // splitting each path at its vertex at distance m from the source
  for (Dist p = 1; p < bk.maxd;) {
    const Dist ell = std::min(bk.maxd, std::max(p + 1, 3 * p / 2));
    parallel_for(n, opt.workers, [&](int s) {
      Dist m = p;
      std::size_t best = SIZE_MAX;
      for (Dist c = ell - p; c <= p; ++c) {
        auto [b, e] = bk.at(s, c);
        if (std::size_t(e - b) < best) {
          best = e - b;
          m = c;
        }
      }
      auto [mb, me] = bk.at(s, m);
      BigInt sum;
      for (Dist i = p + 1; i <= ell; ++i) {
        auto [b, e] = bk.at(s, i);
        for (const int* v = b; v != e; ++v) {
          sum = 0;
          for (const int* u = mb; u != me; ++u)
            if (D(*u, *v) == i - m)
              mpz_addmul(sum.get_mpz_t(), C(s, *u).get_mpz_t(), C(*u, *v).get_mpz_t());
          C(s, *v) = sum;
        }
      }
    });
    p = ell;
  }
  return r;
}

bool certify_capped_counts(const Graph& g, const DistMatrix& D, const Matrix<std::uint64_t>& C,
                           std::uint64_t U) {
  const int n = g.n();
  if (D.rows() != std::size_t(n) || C.rows() != std::size_t(n) || D.cols() != std::size_t(n) ||
      C.cols() != std::size_t(n))
    return false;
  for (int s = 0; s < n; ++s)
    for (int v = 0; v < n; ++v) {
      if (D(s, v) == kInf) {
        if (C(s, v) != 0) return false;
        continue;
      }
      if (s == v) {
        if (D(s, v) != 0 || C(s, v) != 1) return false;
        continue;
      }
      std::uint64_t sum = 0;
      for (const Arc* a = g.in_begin(v); a != g.in_end(v); ++a)
        if (D(s, a->to) != kInf && D(s, a->to) + 1 == D(s, v)) sum = cap_add(sum, C(s, a->to), U);
      if (sum != C(s, v)) return false;
    }
  return true;
}

CountMatrix count_capped_directed(const Graph& g0, std::uint64_t U, const CountOptions& opt,
                                  CountStats* stats) {
  if (U < 2) throw ValidationError("count cap U must be >= 2");
  require_unweighted(g0, "count_capped_directed");
  const Graph g = g0.directed() ? g0 : as_directed(g0);
  const int n = g.n();
  CountMatrix out;
  out.mode = CountMode::capped;
  out.U = U;
  ZwickOptions zo;
  zo.engine = opt.engine;
  zo.sample = opt.sample;
  out.D = zwick_apsp(g, zo);
  out.C = Matrix<std::uint64_t>(n, n, 0);
  if (n == 0) return out;
  const DistMatrix& D = out.D;
  const Dist maxd = max_dist(D);

  // level lengths 1, 2, 4, ...; the last one has an empty sample
  std::vector<Dist> lv;
  for (Dist l = 1;; l *= 2) {
    lv.push_back(l);
    if (l >= 2 * Dist(n)) break;
  }
  const std::size_t L = lv.size();
  const double lg = std::log2(double(n) * double(U));
  const double logn = std::max(1.0, std::ceil(std::log2(double(std::max(n, 2)))));
  const double c = opt.sample.c * std::max(1.0, lg / logn);

  for (int attempt = 0; attempt <= opt.sample.retries; ++attempt) {
    const std::uint64_t seed = derive_seed(opt.sample.seed, attempt);
    HittingFamily fam(n, seed, c);
    std::vector<std::vector<int>> R(L);
    for (std::size_t i = 0; i < L; ++i) R[i] = fam.at(lv[i]);
    // C[i]: counts over paths whose interior avoids R[i]
    std::vector<Matrix<std::uint64_t>> C(L, Matrix<std::uint64_t>(n, n, 0));
    for (auto& m : C)
      for (int u = 0; u < n; ++u) {
        m(u, u) = 1;
        for (const Arc* a = g.out_begin(u); a != g.out_end(u); ++a)
          if (D(u, a->to) == 1) m(u, a->to) = cap_add(m(u, a->to), 1, U);
      }
    std::vector<std::size_t> chain_len;
    int products = 0;
    bool ok = true;
    for (std::size_t li = 1; li < L && ok && lv[li] / 2 < maxd; ++li) {
      const Dist ell = lv[li], half = ell / 2;
      std::vector<Cell> band;
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
          if (D(u, v) != kInf && D(u, v) > half && D(u, v) <= ell) band.push_back({u, v});
      if (band.empty()) continue;
      const auto& Cl = C[li];
      auto entry = [&](PairMatrix& m, std::size_t i, std::size_t j, int u, int v) {
        if (u != v && D(u, v) <= half && Cl(u, v) > 0) {
          m.D(i, j) = D(u, v);
          m.C(i, j) = Cl(u, v);
        }
      };
      const std::size_t b = std::min<std::size_t>(
          ell - 2, std::max<std::size_t>(std::ceil(3 * lg),
                                         std::ceil(2.0 * double(R[li].size()) * double(ell) / n)));
      chain_len.push_back(b);
      // results per removed-prefix size, since nested samples repeat
      std::map<std::size_t, std::vector<std::uint64_t>> done;
      for (std::size_t l2 = li + 1; l2 < L && ok; ++l2) {
        const std::size_t keep = R[l2].size();
        auto hit = done.find(keep);
        if (hit == done.end()) {
          std::vector<char> inner(n, 0);
          for (int x : R[l2]) inner[x] = 1;
          std::vector<int> X;
          for (int x : R[li])
            if (!inner[x]) X.push_back(x);
          std::vector<std::uint64_t> acc(band.size(), 0);
          if (!X.empty()) {
            const std::size_t k = X.size();
            PairMatrix first(n, k), mid(k, k), last(k, n);
            for (int u = 0; u < n; ++u)
              for (std::size_t x = 0; x < k; ++x) {
                entry(first, u, x, u, X[x]);
                entry(last, x, u, X[x], u);
              }
            for (std::size_t x = 0; x < k; ++x)
              for (std::size_t y = 0; y < k; ++y) entry(mid, x, y, X[x], X[y]);
            PairMatrix T = first;
            for (std::size_t j = 0; j <= b + 1; ++j) {
              PairMatrix full = funny_product(T, last, U, opt.funny);
              ++products;
              bool any = false;
              for (std::size_t q = 0; q < band.size(); ++q) {
                const auto [u, v] = band[q];
                if (full.D(u, v) == D(u, v) && full.C(u, v) > 0) {
                  acc[q] = cap_add(acc[q], full.C(u, v), U);
                  any = true;
                }
              }
              // a path meeting more than b sample vertices: the sample is unusable
              if (j == b + 1) {
                if (any) ok = false;
                break;
              }
              T = funny_product(T, mid, U, opt.funny);
              ++products;
              bool live = false;
              for (std::size_t e = 0; e < T.D.storage().size(); ++e) {
                Dist& d = T.D.data()[e];
                if (d != kInf && d > ell) {
                  d = kInf;
                  T.C.data()[e] = 0;
                }
                live = live || d != kInf;
              }
              if (!live) break;
            }
          }
          hit = done.emplace(keep, std::move(acc)).first;
        }
        for (std::size_t q = 0; q < band.size(); ++q) C[l2](band[q].i, band[q].j) = hit->second[q];
      }
    }
    if (ok && certify_capped_counts(g, D, C[L - 1], U)) {
      out.C = std::move(C[L - 1]);
      if (stats) {
        stats->seed_used = seed;
        stats->attempts = attempt + 1;
        stats->products = products;
        stats->chain_length = chain_len;
      }
      return out;
    }
  }
  throw ProbabilisticFailure("count_capped_directed: no sample passed the count certificate");
}

CountMatrix count_undirected_seidel(const Graph& g, CountMode mode, std::uint64_t U) {
  require_undirected(g, "count_undirected_seidel");
  require_unweighted(g, "count_undirected_seidel");
  if (mode != CountMode::mod && mode != CountMode::capped)
    throw InvalidArgument("count_undirected_seidel supports mod and capped modes");
  if (U < 2) throw ValidationError("count modulus or cap U must be >= 2");
  const int n = g.n();
  CountMatrix out;
  out.mode = mode;
  out.U = U;
  out.D = seidel_apsp(g);
  out.C = CountMatrix64(n, n, 0);
  if (n == 0) return out;
  const bool is_mod = mode == CountMode::mod;
  auto add = [&](std::uint64_t a, std::uint64_t b) { return is_mod ? mod_add(a, b, U) : cap_add(a, b, U); };
  auto prod = [&](const CountMatrix64& a, const CountMatrix64& b) {
    return is_mod ? mod_product(a, b, U) : capped_product(a, b, U);
  };
  const DistMatrix& D = out.D;
  const Dist maxd = max_dist(D);
  int K = 0;
  while ((Dist(1) << K) < maxd) ++K;

  // edge multiplicities of the squared graphs, in the mode's arithmetic
  std::vector<CountMatrix64> A{CountMatrix64(n, n, 0)};
  for (const Edge& e : g.edges()) {
    if (e.u == e.v) continue;
    A[0](e.u, e.v) = add(A[0](e.u, e.v), 1);
    A[0](e.v, e.u) = add(A[0](e.v, e.u), 1);
  }
  for (int k = 1; k <= K; ++k) {
    CountMatrix64 s = prod(A[k - 1], A[k - 1]);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) s(u, v) = u == v ? 0 : add(s(u, v), A[k - 1](u, v));
    A.push_back(std::move(s));
  }
  auto level_dist = [&](int u, int v, int k) -> Dist {
    Dist d = D(u, v);
    if (d == kInf) return kInf;
    return (d + (Dist(1) << k) - 1) >> k;
  };
  CountMatrix64& C = out.C;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      Dist d = level_dist(u, v, K);
      C(u, v) = d == 0 ? 1 : d == 1 ? A[K](u, v) : 0;
    }
  for (int k = K - 1; k >= 0; --k) {
    // odd distances: sum over the last neighbour, picked by distance mod 3
    std::vector<CountMatrix64> X;
    for (int j = 0; j < 3; ++j) {
      CountMatrix64 m(n, n, 0);
      for (int u = 0; u < n; ++u)
        for (int x = 0; x < n; ++x) {
          Dist d = level_dist(u, x, k);
          if (d != kInf && d % 3 == j) m(u, x) = C(u, x);
        }
      X.push_back(prod(m, A[k]));
    }
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) {
        Dist d = level_dist(u, v, k);
        if (d == kInf) C(u, v) = 0;
        else if (d % 2 == 1) C(u, v) = X[(d - 1) % 3](u, v);
      }
  }
  return out;
}

CountMatrix count_mod_directed(const Graph& g0, std::uint64_t U, const CountOptions& opt) {
  if (U < 2) throw ValidationError("count modulus U must be >= 2");
  require_unweighted(g0, "count_mod_directed");
  const Graph g = g0.directed() ? g0 : as_directed(g0);
  CountMatrix out;
  out.mode = CountMode::mod;
  out.U = U;
  out.D = unweighted_distances(g, opt);
  if (g.n() == 0) return out;
  ModRing ring{U};
  int products = 0;
  out.C = slice_counts<std::uint64_t>(g, out.D, ring, opt.gamma_c, &products);
  return out;
}

ApproxCounts count_approx(const Graph& g0, std::uint64_t U, const CountOptions& opt) {
  if (U < 2) throw ValidationError("approximation parameter U must be >= 2");
  require_unweighted(g0, "count_approx");
  const Graph g = g0.directed() ? g0 : as_directed(g0);
  const int n = g.n();
  ApproxCounts out;
  out.U = U;
  // errors compound over at most n nested products
  out.internal_U = 4 * std::uint64_t(std::max(n, 1)) * U;
  out.D = g0.directed() ? unweighted_distances(g, opt) : seidel_apsp(g0);
  if (n == 0) return out;
  ApproxRing ring{out.internal_U, opt.engine.t ? opt.engine.t : default_group_size(n)};
  int products = 0;
  out.C = slice_counts<ApproxCount>(g, out.D, ring, opt.gamma_c, &products);
  return out;
}

Rational betweenness_from_counts(const CountResult& r, int v) {
  const int n = static_cast<int>(r.D.rows());
  if (v < 0 || v >= n) throw InvalidArgument("vertex out of range");
  Rational bc = 0;
  for (int s = 0; s < n; ++s) {
    if (s == v || r.D(s, v) == kInf) continue;
    for (int t = 0; t < n; ++t) {
      if (t == v || t == s || r.D(v, t) == kInf || r.D(s, t) == kInf) continue;
      if (r.D(s, v) + r.D(v, t) != r.D(s, t)) continue;
      Rational q(BigInt(r.C(s, v) * r.C(v, t)), r.C(s, t));
      q.canonicalize();
      bc += q;
    }
  }
  return bc;
}

double betweenness_from_counts(const ApproxCounts& r, int v) {
  const int n = static_cast<int>(r.D.rows());
  if (v < 0 || v >= n) throw InvalidArgument("vertex out of range");
  double bc = 0;
  for (int s = 0; s < n; ++s) {
    if (s == v || r.D(s, v) == kInf) continue;
    for (int t = 0; t < n; ++t) {
      if (t == v || t == s || r.D(v, t) == kInf || r.D(s, t) == kInf) continue;
      if (r.D(s, v) + r.D(v, t) != r.D(s, t)) continue;
      const ApproxCount num = r.C(s, v) * r.C(v, t);
      const ApproxCount& den = r.C(s, t);
      if (num.is_zero() || den.is_zero()) continue;
      bc += num.mant / den.mant * std::ldexp(1.0, static_cast<int>(num.exp - den.exp));
    }
  }
  return bc;
}

BCValue betweenness(const Graph& g, int v, CountMode mode, std::uint64_t U,
                    const CountOptions& opt) {
  if (v < 0 || v >= g.n()) throw InvalidArgument("vertex out of range");
  BCValue out;
  if (mode == CountMode::exact) {
    out.value = betweenness_from_counts(count_exact(g, opt), v);
    return out;
  }
  if (mode != CountMode::approx) throw InvalidArgument("betweenness supports exact and approx modes");
  out.exact = false;
  out.approx = betweenness_from_counts(count_approx(g, U, opt), v);
  return out;
}

}  // namespace apspkit
