#include "apspkit/minplus.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <numeric>
#include <limits>
#include <random>

#include "apspkit/kernels.hpp"

namespace apspkit {

const char* engine_name(EngineKind k) {
  switch (k) {
    case EngineKind::brute: return "brute";
    case EngineKind::blocked: return "blocked";
    case EngineKind::scaled: return "scaled";
    case EngineKind::automatic: return "auto";
  }
  return "?";
}

EngineKind parse_engine(const std::string& s) {
  if (s == "brute") return EngineKind::brute;
  if (s == "blocked") return EngineKind::blocked;
  if (s == "scaled") return EngineKind::scaled;
  if (s == "auto") return EngineKind::automatic;
  throw InvalidArgument("unknown engine '" + s + "'");
}

namespace {

}  // namespace

std::size_t default_group_size(std::size_t n2) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(std::sqrt(double(n2)))));
}

namespace {

void check_dims(const DistMatrix& a, const DistMatrix& b) {
  if (a.cols() != b.rows())
    throw InvalidArgument("dimension mismatch: " + std::to_string(a.cols()) + " vs " +
                          std::to_string(b.rows()));
}

ProductResult brute_product(const DistMatrix& a, const DistMatrix& b) {
  const std::size_t n1 = a.rows(), n2 = a.cols(), n3 = b.cols();
  ProductResult r{DistMatrix(n1, n3, kInf), IndexMatrix(n1, n3, kNoWitness)};
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n3; ++j) {
      Dist best = kInf;
      std::int32_t w = kNoWitness;
      for (std::size_t k = 0; k < n2; ++k) {
        Dist x = a(i, k), y = b(k, j);
        if (x == kInf || y == kInf) continue;
        if (x + y < best) {
          best = x + y;
          w = static_cast<std::int32_t>(k);
        }
      }
      r.C(i, j) = best;
      r.W(i, j) = w;
    }
  return r;
}

ProductResult blocked_product(const DistMatrix& a, const DistMatrix& b, std::size_t bs) {
  const std::size_t n1 = a.rows(), n2 = a.cols(), n3 = b.cols();
  ProductResult r{DistMatrix(n1, n3, kInf), IndexMatrix(n1, n3, kNoWitness)};
  const auto& kt = kernels::active();
  bs = std::max<std::size_t>(bs, 1);
  // k-blocks in increasing order keep the smallest argmin on ties
  for (std::size_t j0 = 0; j0 < n3; j0 += bs) {
    std::size_t jl = std::min(n3, j0 + bs);
    for (std::size_t k0 = 0; k0 < n2; k0 += bs) {
      std::size_t kl = std::min(n2, k0 + bs);
      for (std::size_t i = 0; i < n1; ++i) {
        const Dist* arow = a.row(i);
        Dist* crow = r.C.row(i) + j0;
        std::int32_t* wrow = r.W.row(i) + j0;
        for (std::size_t k = k0; k < kl; ++k) {
          if (arow[k] == kInf) continue;
          kt.minplus_row(b.row(k) + j0, arow[k], static_cast<std::int32_t>(k), crow, wrow, jl - j0);
        }
      }
    }
  }
  return r;
}

DistMatrix blocked_values(const DistMatrix& a, const DistMatrix& b, std::size_t bs) {
  const std::size_t n1 = a.rows(), n2 = a.cols(), n3 = b.cols();
  DistMatrix c(n1, n3, kInf);
  const auto& kt = kernels::active();
  bs = std::max<std::size_t>(bs, 1);
  for (std::size_t j0 = 0; j0 < n3; j0 += bs) {
    std::size_t jl = std::min(n3, j0 + bs);
    for (std::size_t k0 = 0; k0 < n2; k0 += bs) {
      std::size_t kl = std::min(n2, k0 + bs);
      for (std::size_t i = 0; i < n1; ++i) {
        const Dist* arow = a.row(i);
        Dist* crow = c.row(i) + j0;
        for (std::size_t k = k0; k < kl; ++k)
          if (arow[k] != kInf) kt.minplus_row_nw(b.row(k) + j0, arow[k], crow, jl - j0);
      }
    }
  }
  return c;
}

// ---- scaled encoding -------------------------------------------------------

// one pass of the encoded product over the k allowed by kmask. With at_exp ==
// nullptr it reports the lowest nonzero digit position and its digit; else the
// digit at the given exponent for each cell.
ScaledCounts scaled_pass(const DistMatrix& a, const DistMatrix& b, Dist ell,
                         const std::vector<char>* kmask, const DistMatrix* at_exp) {
  const std::size_t n1 = a.rows(), n2 = a.cols(), n3 = b.cols();
  ScaledCounts out{DistMatrix(n1, n3, kInf), Matrix<std::uint64_t>(n1, n3, 0)};
  if (at_exp) out.C = *at_exp;
  if (n2 == 0) return out;
  auto allowed = [&](std::size_t k) { return !kmask || (*kmask)[k]; };
  const unsigned w = static_cast<unsigned>(std::bit_width(static_cast<std::uint64_t>(n2)));
  const Dist top = 2 * ell;  // largest exponent a product term can have

  if (static_cast<std::uint64_t>(w) * static_cast<std::uint64_t>(top + 1) <= 128) {
    // packed path: digit width w bits, so base 2^w >= n2+1 and digits never carry
    using u128 = unsigned __int128;
    auto enc = [&](Dist e) -> u128 { return e == kInf ? u128(0) : (u128(1) << (w * e)); };
    std::vector<u128> eb(n2 * n3);
    for (std::size_t k = 0; k < n2; ++k)
      for (std::size_t j = 0; j < n3; ++j) eb[k * n3 + j] = enc(b(k, j));
    std::vector<u128> acc(n3);
    const u128 dmask = (u128(1) << w) - 1;
    for (std::size_t i = 0; i < n1; ++i) {
      std::fill(acc.begin(), acc.end(), u128(0));
      for (std::size_t k = 0; k < n2; ++k) {
        if (!allowed(k) || a(i, k) == kInf) continue;
        u128 ea = enc(a(i, k));
        const u128* brow = eb.data() + k * n3;
        for (std::size_t j = 0; j < n3; ++j) acc[j] += ea * brow[j];
      }
      for (std::size_t j = 0; j < n3; ++j) {
        u128 x = acc[j];
        if (at_exp) {
          Dist s = (*at_exp)(i, j);
          out.digit(i, j) = s == kInf ? 0 : static_cast<std::uint64_t>((x >> (w * s)) & dmask);
          continue;
        }
        if (x == 0) continue;
        std::uint64_t lo = static_cast<std::uint64_t>(x), hi = static_cast<std::uint64_t>(x >> 64);
        unsigned tz = lo ? static_cast<unsigned>(std::countr_zero(lo))
                         : 64u + static_cast<unsigned>(std::countr_zero(hi));
        Dist s = tz / w;
        out.C(i, j) = s;
        out.digit(i, j) = static_cast<std::uint64_t>((x >> (w * s)) & dmask);
      }
    }
    return out;
  }

  // big-integer path with base n2+1 exactly as the encoding is stated
  const BigInt base = static_cast<unsigned long>(n2 + 1);
  std::vector<BigInt> pw(static_cast<std::size_t>(top) + 1);
  pw[0] = 1;
  for (Dist e = 1; e <= top; ++e) pw[e] = pw[e - 1] * base;
  std::vector<BigInt> acc(n3);
  BigInt q;
  for (std::size_t i = 0; i < n1; ++i) {
    for (auto& x : acc) x = 0;
    for (std::size_t k = 0; k < n2; ++k) {
      if (!allowed(k) || a(i, k) == kInf) continue;
      const BigInt& ea = pw[a(i, k)];
      for (std::size_t j = 0; j < n3; ++j) {
        Dist y = b(k, j);
        if (y == kInf) continue;
        mpz_addmul(acc[j].get_mpz_t(), ea.get_mpz_t(), pw[y].get_mpz_t());
      }
    }
    for (std::size_t j = 0; j < n3; ++j) {
      const BigInt& x = acc[j];
      Dist s;
      if (at_exp) {
        s = (*at_exp)(i, j);
        if (s == kInf) continue;
      } else {
        if (x == 0) continue;
        // largest s with base^s | x, found by bisection
        Dist lo = 0, hi = top;
        while (lo < hi) {
          Dist mid = (lo + hi + 1) / 2;
          if (mpz_divisible_p(x.get_mpz_t(), pw[mid].get_mpz_t())) lo = mid;
          else hi = mid - 1;
        }
        s = lo;
        out.C(i, j) = s;
      }
      mpz_tdiv_q(q.get_mpz_t(), x.get_mpz_t(), pw[s].get_mpz_t());
      out.digit(i, j) = mpz_fdiv_ui(q.get_mpz_t(), n2 + 1);
    }
  }
  return out;
}

void require_scaled_bounds(const DistMatrix& a, const DistMatrix& b, const EntryBounds& bd,
                           Dist& ell) {
  Dist mx = 0;
  for (const DistMatrix* m : {&a, &b})
    for (Dist x : m->storage()) {
      if (x == kInf) continue;
      if (x < 0) throw BoundViolation("scaled product needs non-negative entries");
      mx = std::max(mx, x);
    }
  if (bd.max_finite_a && !check_bounds(a, bd.max_finite_a))
    throw BoundViolation("left matrix exceeds declared entry bound");
  if (bd.max_finite_b && !check_bounds(b, bd.max_finite_b))
    throw BoundViolation("right matrix exceeds declared entry bound");
  ell = mx;
}


DistMatrix shifted_by(const DistMatrix& m, Dist delta) {
  DistMatrix r = m;
  Dist* p = r.data();
  for (std::size_t q = 0, e = r.rows() * r.cols(); q < e; ++q)
    if (p[q] != kInf) p[q] -= delta;
  return r;
}

ScaledCounts scaled_counts_shifted(const DistMatrix& a, const DistMatrix& b) {
  Dist ma = min_finite(a), mb = min_finite(b);
  if (ma == kInf || mb == kInf)
    return {DistMatrix(a.rows(), b.cols(), kInf), Matrix<std::uint64_t>(a.rows(), b.cols(), 0)};
  DistMatrix sa = shifted_by(a, ma), sb = shifted_by(b, mb);
  Dist ell = std::max(max_finite(sa), max_finite(sb));
  ScaledCounts r = scaled_pass(sa, sb, ell, nullptr, nullptr);
  for (std::size_t i = 0; i < r.C.rows(); ++i)
    for (std::size_t j = 0; j < r.C.cols(); ++j)
      if (r.C(i, j) != kInf) r.C(i, j) += ma + mb;
  return r;
}

// witnesses from bit-masked passes; cells with several minimizers get a scan
IndexMatrix scaled_witnesses(const DistMatrix& a, const DistMatrix& b, Dist ell,
                             const ScaledCounts& full) {
  const std::size_t n1 = a.rows(), n2 = a.cols(), n3 = b.cols();
  IndexMatrix w(n1, n3, kNoWitness);
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n3; ++j)
      if (full.C(i, j) != kInf && full.digit(i, j) == 1) w(i, j) = 0;
  const unsigned bits = n2 > 1 ? static_cast<unsigned>(std::bit_width(n2 - 1)) : 0;
  std::vector<char> mask(n2);
  for (unsigned bit = 0; bit < bits; ++bit) {
    for (std::size_t k = 0; k < n2; ++k) mask[k] = (k >> bit) & 1u;
    ScaledCounts part = scaled_pass(a, b, ell, &mask, &full.C);
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t j = 0; j < n3; ++j)
        if (w(i, j) != kNoWitness && part.digit(i, j) > 0) w(i, j) |= std::int32_t(1) << bit;
  }
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n3; ++j) {
      Dist c = full.C(i, j);
      if (c == kInf || full.digit(i, j) == 1) continue;
      for (std::size_t k = 0; k < n2; ++k)
        if (a(i, k) != kInf && b(k, j) != kInf && a(i, k) + b(k, j) == c) {
          w(i, j) = static_cast<std::int32_t>(k);
          break;
        }
    }
  return w;
}

ProductResult scaled_product_any(const DistMatrix& a, const DistMatrix& b) {
  Dist ma = min_finite(a), mb = min_finite(b);
  if (ma == kInf || mb == kInf)
    return {DistMatrix(a.rows(), b.cols(), kInf), IndexMatrix(a.rows(), b.cols(), kNoWitness)};
  DistMatrix sa = shifted_by(a, ma), sb = shifted_by(b, mb);
  Dist ell = std::max(max_finite(sa), max_finite(sb));
  ScaledCounts full = scaled_pass(sa, sb, ell, nullptr, nullptr);
  IndexMatrix w = scaled_witnesses(sa, sb, ell, full);
  for (std::size_t i = 0; i < full.C.rows(); ++i)
    for (std::size_t j = 0; j < full.C.cols(); ++j)
      if (full.C(i, j) != kInf) full.C(i, j) += ma + mb;
  return {std::move(full.C), std::move(w)};
}

}  // namespace

DistMatrix minplus_scaled(const DistMatrix& a, const DistMatrix& b, const EntryBounds& bounds) {
  check_dims(a, b);
  Dist ell = 0;
  require_scaled_bounds(a, b, bounds, ell);
  return scaled_pass(a, b, ell, nullptr, nullptr).C;
}

ScaledCounts minplus_scaled_counts(const DistMatrix& a, const DistMatrix& b,
                                   const EntryBounds& bounds) {
  check_dims(a, b);
  Dist ell = 0;
  require_scaled_bounds(a, b, bounds, ell);
  return scaled_pass(a, b, ell, nullptr, nullptr);
}

ProductResult minplus_scaled_witness(const DistMatrix& a, const DistMatrix& b,
                                     const EntryBounds& bounds) {
  check_dims(a, b);
  Dist ell = 0;
  require_scaled_bounds(a, b, bounds, ell);
  ScaledCounts full = scaled_pass(a, b, ell, nullptr, nullptr);
  IndexMatrix w = scaled_witnesses(a, b, ell, full);
  return {std::move(full.C), std::move(w)};
}

std::vector<std::uint64_t> scaled_cell_digits(const DistMatrix& a, const DistMatrix& b, int i,
                                              int j) {
  check_dims(a, b);
  Dist ell = 0;
  require_scaled_bounds(a, b, {}, ell);
  const unsigned long base = static_cast<unsigned long>(a.cols() + 1);
  BigInt acc = 0, bb = base, t1, t2;
  for (std::size_t k = 0; k < a.cols(); ++k) {
    if (a(i, k) == kInf || b(k, j) == kInf) continue;
    mpz_pow_ui(t1.get_mpz_t(), bb.get_mpz_t(), static_cast<unsigned long>(a(i, k)));
    mpz_pow_ui(t2.get_mpz_t(), bb.get_mpz_t(), static_cast<unsigned long>(b(k, j)));
    acc += t1 * t2;
  }
  std::vector<std::uint64_t> digits(static_cast<std::size_t>(2 * ell + 1), 0);
  for (auto& d : digits) {
    d = mpz_fdiv_q_ui(acc.get_mpz_t(), acc.get_mpz_t(), base);
  }
  return digits;
}

EngineKind resolve_engine(const DistMatrix& a, const DistMatrix& b, const ProductEngine& e,
                          const CostModel& cm) {
  if (e.kind != EngineKind::automatic) return e.kind;
  Dist ma = min_finite(a), mb = min_finite(b);
  if (ma == kInf || mb == kInf) return EngineKind::blocked;
  Dist ell = std::max(max_finite(a) - ma, max_finite(b) - mb);
  double ops = double(a.rows()) * double(a.cols()) * double(b.cols());
  double digit_bits = double(2 * ell + 1) * std::bit_width(a.cols() + 1);
  double words = std::max(1.0, digit_bits / 64.0);
  double scaled_cost = ops * cm.scaled_ns_per_digit_op * words;
  double brute_cost = ops * cm.brute_ns_per_op;
  return scaled_cost < brute_cost ? EngineKind::scaled : EngineKind::blocked;
}

ProductResult minplus(const DistMatrix& a, const DistMatrix& b, const ProductEngine& e) {
  check_dims(a, b);
  switch (resolve_engine(a, b, e)) {
    case EngineKind::brute: return brute_product(a, b);
    case EngineKind::scaled: return scaled_product_any(a, b);
    default: return blocked_product(a, b, e.block_size);
  }
}

DistMatrix minplus_values(const DistMatrix& a, const DistMatrix& b, const ProductEngine& e) {
  check_dims(a, b);
  switch (resolve_engine(a, b, e)) {
    case EngineKind::brute: return brute_product(a, b).C;
    case EngineKind::scaled: return scaled_counts_shifted(a, b).C;
    default: return blocked_values(a, b, e.block_size);
  }
}

CostModel& default_cost_model() {
  static CostModel cm;
  return cm;
}

void calibrate(CostModel& cm) {
  std::mt19937_64 rng(12345);
  auto rnd = [&](std::size_t r, std::size_t c, Dist hi) {
    DistMatrix m(r, c);
    std::uniform_int_distribution<Dist> d(0, hi);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
    return m;
  };
  using clk = std::chrono::steady_clock;
  DistMatrix a = rnd(128, 128, 100), b = rnd(128, 128, 100);
  auto t0 = clk::now();
  volatile Dist sink = blocked_values(a, b, 64)(0, 0);
  double ns = std::chrono::duration<double, std::nano>(clk::now() - t0).count();
  cm.brute_ns_per_op = ns / (128.0 * 128 * 128);
  DistMatrix sa = rnd(64, 64, 3), sb = rnd(64, 64, 3);
  t0 = clk::now();
  sink = scaled_pass(sa, sb, 3, nullptr, nullptr).C(0, 0);
  ns = std::chrono::duration<double, std::nano>(clk::now() - t0).count();
  (void)sink;
  cm.scaled_ns_per_digit_op = ns / (64.0 * 64 * 64);
  cm.calibrated = true;
}

// ---- rank-grouped sparse range product ------------------------------------

namespace {

struct ColumnGroups {
  // ranked (value, row) for the finite entries of one column
  std::vector<std::pair<Dist, int>> ranked;
  std::size_t first_group = 0;  // global index of this column's group 0
  std::size_t groups = 0;       // full groups; the tail past groups*t is leftover
};


}  // namespace

std::vector<Dist> minplus_sparse_range(const DistMatrix& a, const DistMatrix& b,
                                       const EntryBounds& bounds, const std::vector<Cell>& wanted,
                                       std::size_t t, const ProductEngine& inner) {
  check_dims(a, b);
  if (t < 1) throw InvalidArgument("group size t must be >= 1");
  std::vector<Dist> out(wanted.size(), kInf);
  if (wanted.empty()) return out;
  const std::size_t n1 = a.rows(), n2 = a.cols(), n3 = b.cols();
  Dist ell1 = 0;
  for (Dist x : a.storage()) {
    if (x == kInf) continue;
    if (x < 0) throw BoundViolation("sparse range product needs A entries >= 0");
    ell1 = std::max(ell1, x);
  }
  if (bounds.max_finite_a && ell1 > *bounds.max_finite_a)
    throw BoundViolation("left matrix exceeds declared entry bound");

  std::vector<char> needed(n3, 0);
  for (const Cell& c : wanted) needed[c.j] = 1;
  std::vector<ColumnGroups> cols(n3);
  std::size_t total_groups = 0;
  for (std::size_t j = 0; j < n3; ++j) {
    if (!needed[j]) continue;
    auto& cg = cols[j];
    for (std::size_t k = 0; k < n2; ++k)
      if (b(k, j) != kInf) cg.ranked.emplace_back(b(k, j), static_cast<int>(k));
    std::sort(cg.ranked.begin(), cg.ranked.end());  // ties by row index
    cg.groups = cg.ranked.size() / t;
    cg.first_group = total_groups;
    total_groups += cg.groups;
  }

  // reachability: does row i have a finite A entry on some row of group g
  BitMatrix afin(n1, n2), member(n2, total_groups);
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t k = 0; k < n2; ++k)
      if (a(i, k) != kInf) afin.set(i, k);
  // window matrix: B values in [x, x + ell1] relative to the group's max x
  DistMatrix window(n2, total_groups, kInf);
  std::vector<Dist> gmax(total_groups);
  for (std::size_t j = 0; j < n3; ++j) {
    const auto& cg = cols[j];
    for (std::size_t g = 0; g < cg.groups; ++g) {
      std::size_t gid = cg.first_group + g;
      for (std::size_t r = g * t; r < (g + 1) * t; ++r) member.set(cg.ranked[r].second, gid);
      Dist x = cg.ranked[(g + 1) * t - 1].first;
      gmax[gid] = x;
      for (std::size_t r = 0; r < cg.ranked.size(); ++r) {
        auto [v, k] = cg.ranked[r];
        if (v >= x && v - x <= ell1) window(k, gid) = v - x;
      }
    }
  }
  BitMatrix reach = bool_product(afin, member);
  DistMatrix win = minplus_values(a, window, inner);

  for (std::size_t q = 0; q < wanted.size(); ++q) {
    const int i = wanted[q].i, j = wanted[q].j;
    const auto& cg = cols[j];
    Dist best = kInf;
    auto scan = [&](std::size_t r0, std::size_t r1) {
      for (std::size_t r = r0; r < r1; ++r) {
        auto [v, k] = cg.ranked[r];
        if (a(i, k) != kInf) best = std::min(best, a(i, k) + v);
      }
    };
    std::size_t g = 0;
    while (g < cg.groups && !reach.get(i, cg.first_group + g)) ++g;
    if (g < cg.groups) {
      std::size_t gid = cg.first_group + g;
      scan(g * t, (g + 1) * t);
      if (win(i, gid) != kInf) best = std::min(best, win(i, gid) + gmax[gid]);
    }
    scan(cg.groups * t, cg.ranked.size());
    out[q] = best;
  }
  return out;
}

// ---- shifted modular product ----------------------------------------------

bool shifted_precondition_holds(const DistMatrix& a, const DistMatrix& b) {
  check_dims(a, b);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      // max_k (B[k,j] - A[i,k]) <= min_k' (A[i,k'] + B[k',j]) over finite A
      // INF entries of B stay INF after the shift, so they never matter
      Dist hi = std::numeric_limits<Dist>::min(), lo = kInf;
      for (std::size_t k = 0; k < a.cols(); ++k) {
        if (a(i, k) == kInf || b(k, j) == kInf) continue;
        hi = std::max(hi, b(k, j) - a(i, k));
        lo = std::min(lo, a(i, k) + b(k, j));
      }
      if (lo == kInf) continue;
      if (hi > lo) return false;
    }
  return true;
}

DistMatrix minplus_shifted(const DistMatrix& a, const DistMatrix& b, Dist ell,
                           const ShiftedOptions& opt) {
  check_dims(a, b);
  for (Dist x : a.storage())
    if (x != kInf && (x < 0 || x > ell))
      throw BoundViolation("shifted product: A entry outside [0, ell]");
  if (opt.verify_precondition && !shifted_precondition_holds(a, b))
    throw PreconditionViolation("shifted product: B[k,j] <= A[i,k]+A[i,k']+B[k',j] violated");
  const std::size_t n1 = a.rows(), n2 = a.cols(), n3 = b.cols();
  ell = std::max<Dist>(ell, 1);
  const Dist period = 6 * ell;
  auto wrap = [&](Dist v) { return ((v % period) + period) % period; };

  // any k with both sides finite anchors the window; the witness of any
  // shifted product is such a k
  std::vector<DistMatrix> bt(6), pt(6);
  IndexMatrix anchor;
  for (int s = 0; s < 6; ++s) {
    bt[s] = DistMatrix(n2, n3, kInf);
    for (std::size_t k = 0; k < n2; ++k)
      for (std::size_t j = 0; j < n3; ++j)
        if (b(k, j) != kInf) bt[s](k, j) = wrap(b(k, j) + s * ell);
    if (s == 0) {
      ProductResult r = minplus(a, bt[0], opt.inner);
      pt[0] = std::move(r.C);
      anchor = std::move(r.W);
    } else {
      pt[s] = minplus_values(a, bt[s], opt.inner);
    }
  }

  DistMatrix c(n1, n3, kInf);
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n3; ++j) {
      int k0 = anchor(i, j);
      if (k0 == kNoWitness) continue;
      Dist b0 = b(k0, j);
      for (int s = 0; s < 6; ++s) {
        Dist v = bt[s](k0, j);
        if (v < 2 * ell || v > 3 * ell) continue;
        c(i, j) = pt[s](i, j) + (b0 - v);
        break;
      }
    }
  return c;
}

// ---- funny products -------------------------------------------------------

namespace {

PairMatrix funny_direct(const PairMatrix& x, const PairMatrix& y, std::uint64_t cap) {
  const std::size_t n1 = x.rows(), n2 = x.cols(), n3 = y.cols();
  PairMatrix r(n1, n3);
  for (std::size_t i = 0; i < n1; ++i) {
    Dist* rd = r.D.row(i);
    std::uint64_t* rc = r.C.row(i);
    for (std::size_t k = 0; k < n2; ++k) {
      Dist a = x.D(i, k);
      std::uint64_t ac = x.C(i, k);
      if (a == kInf || ac == 0) continue;
      const Dist* yd = y.D.row(k);
      const std::uint64_t* yc = y.C.row(k);
      for (std::size_t j = 0; j < n3; ++j) {
        if (yd[j] == kInf || yc[j] == 0) continue;
        Dist s = a + yd[j];
        std::uint64_t p = cap_mul(ac, yc[j], cap);
        if (s < rd[j]) {
          rd[j] = s;
          rc[j] = p;
        } else if (s == rd[j]) {
          rc[j] = cap_add(rc[j], p, cap);
        }
      }
    }
  }
  return r;
}

// A'·M^A encoding: one big-integer product, then lowest nonzero base-M digit
PairMatrix funny_encoded(const PairMatrix& x, const PairMatrix& y, std::uint64_t cap) {
  const std::size_t n1 = x.rows(), n2 = x.cols(), n3 = y.cols();
  PairMatrix r(n1, n3);
  Dist mx = kInf, my = kInf, hx = 0, hy = 0;
  std::uint64_t cx = 0, cy = 0;
  for (std::size_t q = 0; q < n1 * n2; ++q)
    if (x.D.data()[q] != kInf && x.C.data()[q]) {
      mx = std::min(mx, x.D.data()[q]);
      hx = std::max(hx, x.D.data()[q]);
      cx = std::max(cx, x.C.data()[q]);
    }
  for (std::size_t q = 0; q < n2 * n3; ++q)
    if (y.D.data()[q] != kInf && y.C.data()[q]) {
      my = std::min(my, y.D.data()[q]);
      hy = std::max(hy, y.D.data()[q]);
      cy = std::max(cy, y.C.data()[q]);
    }
  if (mx == kInf || my == kInf) return r;
  // every digit is a sum of at most n2 products of counts, so M above that never carries
  BigInt m = BigInt(static_cast<unsigned long>(n2)) * BigInt(static_cast<unsigned long>(cx)) *
                 BigInt(static_cast<unsigned long>(cy)) + 1;
  const Dist top = (hx - mx) + (hy - my);
  std::vector<BigInt> pw(static_cast<std::size_t>(top) + 1);
  pw[0] = 1;
  for (Dist e = 1; e <= top; ++e) pw[e] = pw[e - 1] * m;
  auto enc = [&](Dist d, std::uint64_t c, Dist off) -> BigInt {
    if (d == kInf || c == 0) return 0;
    return pw[d - off] * BigInt(static_cast<unsigned long>(c));
  };
  std::vector<BigInt> ex(n1 * n2), ey(n2 * n3);
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t k = 0; k < n2; ++k) ex[i * n2 + k] = enc(x.D(i, k), x.C(i, k), mx);
  for (std::size_t k = 0; k < n2; ++k)
    for (std::size_t j = 0; j < n3; ++j) ey[k * n3 + j] = enc(y.D(k, j), y.C(k, j), my);
  BigInt acc, q, digit;
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n3; ++j) {
      acc = 0;
      for (std::size_t k = 0; k < n2; ++k) {
        const BigInt& u = ex[i * n2 + k];
        const BigInt& v = ey[k * n3 + j];
        if (u == 0 || v == 0) continue;
        mpz_addmul(acc.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t());
      }
      if (acc == 0) continue;
      Dist lo = 0, hi = top;
      while (lo < hi) {
        Dist mid = (lo + hi + 1) / 2;
        if (mpz_divisible_p(acc.get_mpz_t(), pw[mid].get_mpz_t())) lo = mid;
        else hi = mid - 1;
      }
      mpz_tdiv_q(q.get_mpz_t(), acc.get_mpz_t(), pw[lo].get_mpz_t());
      mpz_fdiv_r(digit.get_mpz_t(), q.get_mpz_t(), m.get_mpz_t());
      r.D(i, j) = lo + mx + my;
      r.C(i, j) = mpz_cmp_ui(digit.get_mpz_t(), cap) >= 0 ? cap : digit.get_ui();
    }
  return r;
}

}  // namespace

PairMatrix funny_product(const PairMatrix& x, const PairMatrix& y, std::uint64_t cap,
                         FunnyEngine engine) {
  if (x.cols() != y.rows()) throw InvalidArgument("dimension mismatch in funny product");
  PairMatrix r = engine == FunnyEngine::encoded ? funny_encoded(x, y, cap) : funny_direct(x, y, cap);
  if (cap == kUncapped)
    for (std::uint64_t c : r.C.storage())
      if (c == kUncapped) throw Error("uncapped funny product overflowed 64-bit counts");
  return r;
}

Matrix<std::uint64_t> witness_count_product(const DistMatrix& a, const DistMatrix& b) {
  check_dims(a, b);
  const std::size_t n1 = a.rows(), n2 = a.cols(), n3 = b.cols();
  Matrix<std::uint64_t> cnt(n1, n3, 0);
  std::vector<Dist> best(n3);
  for (std::size_t i = 0; i < n1; ++i) {
    std::fill(best.begin(), best.end(), kInf);
    std::uint64_t* rc = cnt.row(i);
    for (std::size_t k = 0; k < n2; ++k) {
      if (a(i, k) == kInf) continue;
      for (std::size_t j = 0; j < n3; ++j) {
        if (b(k, j) == kInf) continue;
        Dist s = a(i, k) + b(k, j);
        if (s < best[j]) {
          best[j] = s;
          rc[j] = 1;
        } else if (s == best[j]) {
          ++rc[j];
        }
      }
    }
  }
  return cnt;
}

// ---- approximate counting product -----------------------------------------

std::vector<ApproxCount> approx_count_product_naive(const ApproxMatrix& a, const ApproxMatrix& b,
                                                    const std::vector<Cell>& wanted) {
  std::vector<ApproxCount> out(wanted.size());
  for (std::size_t q = 0; q < wanted.size(); ++q)
    for (std::size_t k = 0; k < a.cols(); ++k)
      out[q] += a(wanted[q].i, k) * b(k, wanted[q].j);
  return out;
}

std::vector<ApproxCount> approx_count_product(const ApproxMatrix& a, const ApproxMatrix& b,
                                              std::uint64_t U, const std::vector<Cell>& wanted,
                                              std::size_t t) {
  if (a.cols() != b.rows()) throw InvalidArgument("dimension mismatch in approx product");
  if (t < 1) throw InvalidArgument("group size t must be >= 1");
  std::vector<ApproxCount> out(wanted.size());
  if (wanted.empty()) return out;
  const std::size_t n1 = a.rows(), n2 = a.cols(), n3 = b.cols();

  // magnitude spread of A's nonzero entries plays the role of 2^{ell_1}
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& x : a.storage())
    if (!x.is_zero()) {
      lo = std::min(lo, x.log2());
      hi = std::max(hi, x.log2());
    }
  if (hi < lo) return out;  // A is all zero
  const double spread = std::ceil(hi - lo) + 1.0;
  const double cut_log2 = spread + std::log2(double(n2)) + std::log2(double(U));
  const std::int64_t a_exp = static_cast<std::int64_t>(std::floor(hi)) + 1;

  std::vector<char> needed(n3, 0);
  for (const Cell& c : wanted) needed[c.j] = 1;
  struct Col {
    std::vector<std::pair<ApproxCount, int>> ranked;
    std::size_t first_group = 0, groups = 0;
  };
  std::vector<Col> cols(n3);
  std::size_t total = 0;
  for (std::size_t j = 0; j < n3; ++j) {
    if (!needed[j]) continue;
    auto& c = cols[j];
    for (std::size_t k = 0; k < n2; ++k)
      if (!b(k, j).is_zero()) c.ranked.emplace_back(b(k, j), static_cast<int>(k));
    std::sort(c.ranked.begin(), c.ranked.end(), [](const auto& p, const auto& q) {
      if (p.first < q.first) return true;
      if (q.first < p.first) return false;
      return p.second < q.second;
    });
    c.groups = c.ranked.size() / t;
    c.first_group = total;
    total += c.groups;
  }

  BitMatrix anz(n1, n2), member(n2, total);
  Matrix<double> ad(n1, n2, 0.0), window(n2, total, 0.0);
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t k = 0; k < n2; ++k)
      if (!a(i, k).is_zero()) {
        anz.set(i, k);
        ad(i, k) = a(i, k).shifted(-a_exp).to_double();
      }
  std::vector<ApproxCount> gmin(total);
  for (std::size_t j = 0; j < n3; ++j) {
    const auto& c = cols[j];
    for (std::size_t g = 0; g < c.groups; ++g) {
      std::size_t gid = c.first_group + g;
      for (std::size_t r = g * t; r < (g + 1) * t; ++r) member.set(c.ranked[r].second, gid);
      const ApproxCount x = c.ranked[g * t].first;
      gmin[gid] = x;
      // ranks below the group whose value is within the cut of x
      for (std::size_t r = g * t; r-- > 0;) {
        const ApproxCount& v = c.ranked[r].first;
        double rel = v.log2() - x.log2();
        if (rel < -cut_log2) break;
        window(c.ranked[r].second, gid) =
            std::ldexp(v.mant / x.mant, static_cast<int>(v.exp - x.exp));
      }
    }
  }
  BitMatrix reach = bool_product(anz, member);
  Matrix<double> win(n1, total, 0.0);
  const auto& kt = kernels::active();
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t k = 0; k < n2; ++k)
      if (ad(i, k) != 0.0) kt.axpy(win.row(i), window.row(k), ad(i, k), total);

  for (std::size_t q = 0; q < wanted.size(); ++q) {
    const int i = wanted[q].i, j = wanted[q].j;
    const auto& c = cols[j];
    ApproxCount sum;
    auto add_ranks = [&](std::size_t r0, std::size_t r1) {
      for (std::size_t r = r0; r < r1; ++r) sum += a(i, c.ranked[r].second) * c.ranked[r].first;
    };
    std::size_t g = c.groups;
    while (g > 0 && !reach.get(i, c.first_group + g - 1)) --g;
    if (g > 0) {
      std::size_t gid = c.first_group + g - 1;
      add_ranks((g - 1) * t, g * t);
      sum += (ApproxCount::from_double(win(i, gid)) * gmin[gid]).shifted(a_exp);
    }
    add_ranks(c.groups * t, c.ranked.size());
    out[q] = sum;
  }
  return out;
}

// ---- ring products ----------------------------------------------------------

CountMatrix64 mod_product(const CountMatrix64& a, const CountMatrix64& b, std::uint64_t mod) {
  if (a.cols() != b.rows()) throw InvalidArgument("dimension mismatch in mod product");
  const std::size_t n1 = a.rows(), n2 = a.cols(), n3 = b.cols();
  CountMatrix64 c(n1, n3, 0);
  std::vector<unsigned __int128> acc(n3);
  for (std::size_t i = 0; i < n1; ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t k = 0; k < n2; ++k) {
      std::uint64_t x = a(i, k);
      if (!x) continue;
      const std::uint64_t* br = b.row(k);
      for (std::size_t j = 0; j < n3; ++j) acc[j] += static_cast<unsigned __int128>(x) * br[j];
    }
    for (std::size_t j = 0; j < n3; ++j) c(i, j) = static_cast<std::uint64_t>(acc[j] % mod);
  }
  return c;
}

CountMatrix64 capped_product(const CountMatrix64& a, const CountMatrix64& b, std::uint64_t cap) {
  if (a.cols() != b.rows()) throw InvalidArgument("dimension mismatch in capped product");
  const std::size_t n1 = a.rows(), n2 = a.cols(), n3 = b.cols();
  CountMatrix64 c(n1, n3, 0);
  for (std::size_t i = 0; i < n1; ++i) {
    std::uint64_t* cr = c.row(i);
    for (std::size_t k = 0; k < n2; ++k) {
      std::uint64_t x = a(i, k);
      if (!x) continue;
      const std::uint64_t* br = b.row(k);
      for (std::size_t j = 0; j < n3; ++j)
        if (br[j]) cr[j] = cap_add(cr[j], cap_mul(x, br[j], cap), cap);
    }
  }
  return c;
}

std::vector<std::uint64_t> mod_product_wanted(const CountMatrix64& a, const CountMatrix64& b,
                                              std::uint64_t mod, const std::vector<Cell>& wanted) {
  if (a.cols() != b.rows()) throw InvalidArgument("dimension mismatch in mod product");
  std::vector<std::vector<int>> nz(a.rows());
  std::vector<char> seen(a.rows(), 0);
  for (const Cell& c : wanted) {
    if (seen[c.i]) continue;
    seen[c.i] = 1;
    for (std::size_t k = 0; k < a.cols(); ++k)
      if (a(c.i, k)) nz[c.i].push_back(static_cast<int>(k));
  }
  std::vector<std::uint64_t> out(wanted.size());
  for (std::size_t q = 0; q < wanted.size(); ++q) {
    unsigned __int128 acc = 0;
    for (int k : nz[wanted[q].i])
      acc += static_cast<unsigned __int128>(a(wanted[q].i, k)) * b(k, wanted[q].j);
    out[q] = static_cast<std::uint64_t>(acc % mod);
  }
  return out;
}

BitMatrix bool_product(const BitMatrix& a, const BitMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidArgument("dimension mismatch in boolean product");
  BitMatrix c(a.rows(), b.cols());
  const auto& kt = kernels::active();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::uint64_t* cr = c.row(i);
    a.for_each_in_row(i, [&](std::size_t k) { kt.or_row(cr, b.row(k), b.words()); });
  }
  return c;
}

}  // namespace apspkit
