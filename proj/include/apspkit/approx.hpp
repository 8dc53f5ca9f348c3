#pragma once

#include <cstdint>
#include <vector>

#include "apspkit/apsp_exact.hpp"
#include "apspkit/graph.hpp"

namespace apspkit {

// additive error allowance f: either x^p or a table f(1..T) extended
// linearly past T (which keeps x/f(x) constant there)
class ErrorProfile {
 public:
  static ErrorProfile power(double p);
  static ErrorProfile table(std::vector<double> values);

  double operator()(Dist x) const;
  // f(x) >= 0, f nondecreasing and x / f(x) nondecreasing on [1, upto]
  void validate(Dist upto) const;
  bool is_power() const { return table_.empty(); }
  double exponent() const { return p_; }

 private:
  double p_ = 0.0;
  std::vector<double> table_;  // table_[x-1] = f(x)
};

struct ApproxOptions {
  ProductEngine engine{};
  SampleOptions sample{};
  // divide every rounding granularity by 2^refine (finer rounding)
  int refine = 0;
  // false turns rounding off entirely, making the output exact
  bool rounding = true;
};

struct ApproxCertificate {
  // estimate <= D + K f(D) for every pair
  int K = 1;
  std::uint64_t seed_used = 0;
  int attempts = 0;
  std::vector<Dist> levels;         // stage lengths used
  std::vector<Dist> granularity;    // rounding step of each product stage
  std::vector<std::size_t> bridge;  // bridge-set size per stage
};

struct ApproxResult {
  DistMatrix estimate;
  ApproxCertificate cert;
  // rows of the phase-1 matrices, exact for pairs with a shortest path of
  // at most levels[j] hops
  std::vector<std::vector<int>> phase1_rows;
  std::vector<DistMatrix> phase1;
  // provenance used by approx_paths
  struct Source {
    std::int8_t kind = 0;  // 0 edge/diagonal, 1 phase-1 row matrix, 2 column matrix, 3 product
    std::int16_t level = 0;
    std::int32_t mid = -1;
  };
  Matrix<Source> source;
  std::vector<IndexMatrix> row_wit, col_wit;  // per level, -1 inherited, -2 edge, else vertex
  std::vector<DistMatrix> cols;               // phase-1 column matrices
};

// D <= estimate <= D + f(D) on graphs with weights in [1, c0]
ApproxResult approx_apsp(const Graph& g, const ErrorProfile& f, const ApproxOptions& opt = {});

// a simple path from u to v of length at most estimate(u, v)
std::vector<int> approx_path(const Graph& g, const ApproxResult& r, int u, int v);
std::vector<int> approx_paths(const Graph& g, const ErrorProfile& f, int u, int v,
                              const ApproxOptions& opt = {});

}  // namespace apspkit
