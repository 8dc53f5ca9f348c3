#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

namespace apspkit {

using BigInt = mpz_class;
using Rational = mpq_class;

inline constexpr std::uint64_t kUncapped = std::numeric_limits<std::uint64_t>::max();

// saturating arithmetic for the capped semiring {0..U}
inline std::uint64_t cap_add(std::uint64_t a, std::uint64_t b, std::uint64_t cap) {
  std::uint64_t s;
  if (__builtin_add_overflow(a, b, &s)) return cap;
  return s < cap ? s : cap;
}
inline std::uint64_t cap_mul(std::uint64_t a, std::uint64_t b, std::uint64_t cap) {
  std::uint64_t p;
  if (__builtin_mul_overflow(a, b, &p)) return cap;
  return p < cap ? p : cap;
}
inline std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}
inline std::uint64_t mod_add(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  std::uint64_t s = a + b;  // a, b < m < 2^63
  return s >= m ? s - m : s;
}

// value = mant * 2^exp with mant in [0.5, 1) (frexp convention) or exactly 0
struct ApproxCount {
  double mant = 0.0;
  std::int64_t exp = 0;

  static ApproxCount zero() { return {}; }
  static ApproxCount from_double(double x) {
    ApproxCount r;
    if (x == 0.0) return r;
    int e = 0;
    r.mant = std::frexp(x, &e);
    r.exp = e;
    return r;
  }
  static ApproxCount from_u64(std::uint64_t x) { return from_double(static_cast<double>(x)); }
  static ApproxCount from_big(const BigInt& x) {
    if (x == 0) return {};
    long e = 0;
    double d = mpz_get_d_2exp(&e, x.get_mpz_t());
    ApproxCount r;
    r.mant = d;
    r.exp = e;
    return r;
  }

  bool is_zero() const { return mant == 0.0; }

  friend ApproxCount operator*(const ApproxCount& a, const ApproxCount& b) {
    if (a.is_zero() || b.is_zero()) return {};
    ApproxCount r = from_double(a.mant * b.mant);
    r.exp += a.exp + b.exp;
    return r;
  }
  friend ApproxCount operator+(const ApproxCount& a, const ApproxCount& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const ApproxCount& hi = a.exp >= b.exp ? a : b;
    const ApproxCount& lo = a.exp >= b.exp ? b : a;
    std::int64_t gap = hi.exp - lo.exp;
    if (gap > 1100) return hi;
    ApproxCount r = from_double(hi.mant + std::ldexp(lo.mant, static_cast<int>(-gap)));
    r.exp += hi.exp;
    return r;
  }
  ApproxCount& operator+=(const ApproxCount& o) { return *this = *this + o; }

  // scale by 2^k
  ApproxCount shifted(std::int64_t k) const {
    ApproxCount r = *this;
    if (!is_zero()) r.exp += k;
    return r;
  }
  // only meaningful when the exponent is within double range
  double to_double() const { return is_zero() ? 0.0 : std::ldexp(mant, static_cast<int>(exp)); }
  double log2() const { return std::log2(mant) + static_cast<double>(exp); }

  // |this/exact - 1|, exact > 0
  double relative_error(const BigInt& exact) const;
  std::string str() const;
};

bool operator<(const ApproxCount& a, const ApproxCount& b);

}  // namespace apspkit
