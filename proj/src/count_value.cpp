#include "apspkit/count_value.hpp"

#include <cstdio>

namespace apspkit {

double ApproxCount::relative_error(const BigInt& exact) const {
  ApproxCount e = from_big(exact);
  if (e.is_zero()) return is_zero() ? 0.0 : INFINITY;
  if (is_zero()) return 1.0;
  // ratio mant/e.mant * 2^(exp - e.exp); the exponents differ by at most a few
  double r = std::ldexp(mant / e.mant, static_cast<int>(exp - e.exp));
  return std::fabs(r - 1.0);
}

std::string ApproxCount::str() const {
  if (is_zero()) return "0";
  double l10 = log2() * 0.30102999566398120;
  if (l10 < 15) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", to_double());
    return buf;
  }
  double e10 = std::floor(l10);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6fe%.0f", std::pow(10.0, l10 - e10), e10);
  return buf;
}

bool operator<(const ApproxCount& a, const ApproxCount& b) {
  if (a.is_zero()) return !b.is_zero();
  if (b.is_zero()) return false;
  if (a.exp != b.exp) return a.exp < b.exp;
  return a.mant < b.mant;
}

}  // namespace apspkit
