#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace apspkit {

// distances are signed so that [-c0, c0] graphs fit; INF is the top value
using Dist = std::int64_t;
inline constexpr Dist kInf = std::numeric_limits<Dist>::max();
inline constexpr std::int32_t kNoWitness = -1;

inline constexpr bool is_inf(Dist x) { return x == kInf; }

inline constexpr Dist add_sat(Dist a, Dist b) {
  if (a == kInf || b == kInf) return kInf;
  return a + b;
}

inline constexpr Dist min_d(Dist a, Dist b) { return a < b ? a : b; }

// error taxonomy; exit codes in the CLI key off these types
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidArgument : Error {
  using Error::Error;
};
struct ParseError : Error {
  ParseError(const std::string& what, int line)
      : Error("line " + std::to_string(line) + ": " + what), line(line) {}
  int line;
};
struct ValidationError : Error {
  using Error::Error;
};
struct BoundViolation : ValidationError {
  using ValidationError::ValidationError;
};
struct PreconditionViolation : Error {
  using Error::Error;
};
struct NegativeCycle : Error {
  NegativeCycle(const std::string& what, std::vector<int> cyc)
      : Error(what), cycle(std::move(cyc)) {}
  std::vector<int> cycle;
};
struct SamplingFailure : Error {
  using Error::Error;
};
struct ProbabilisticFailure : Error {
  using Error::Error;
};
struct NoPath : Error {
  using Error::Error;
};
// a configured constant was too small for a deterministic selection step
struct ConstantTooSmall : Error {
  using Error::Error;
};

}  // namespace apspkit
