#pragma once

#include <cstdint>
#include <vector>

#include "apspkit/bitmatrix.hpp"
#include "apspkit/count_value.hpp"
#include "apspkit/matrix.hpp"

namespace apspkit {

enum class EngineKind { brute, blocked, scaled, automatic };

struct ProductEngine {
  EngineKind kind = EngineKind::blocked;
  std::size_t block_size = 64;
  // group size for rank-grouped products; 0 picks round(sqrt(n2))
  std::size_t t = 0;
};

const char* engine_name(EngineKind k);
EngineKind parse_engine(const std::string& s);

struct ProductResult {
  DistMatrix C;
  IndexMatrix W;  // kNoWitness where C is INF
};

struct Cell {
  int i, j;
};

// C[i,j] = min_k A[i,k] + B[k,j]; witness is the smallest minimizing k for
// every engine, so outputs are identical across engines
ProductResult minplus(const DistMatrix& a, const DistMatrix& b, const ProductEngine& e = {});
DistMatrix minplus_values(const DistMatrix& a, const DistMatrix& b, const ProductEngine& e = {});

// the engine auto resolves to for these operands
EngineKind resolve_engine(const DistMatrix& a, const DistMatrix& b, const ProductEngine& e,
                          const CostModel& cm = default_cost_model());

// scaled-integer encoding: entry e -> (n2+1)^e, integer product, lowest
// nonzero digit. Entries must be finite-in-[0, bound] or INF.
DistMatrix minplus_scaled(const DistMatrix& a, const DistMatrix& b, const EntryBounds& bounds);
ProductResult minplus_scaled_witness(const DistMatrix& a, const DistMatrix& b,
                                     const EntryBounds& bounds);
// min value together with the digit at that exponent (= number of minimizing k)
struct ScaledCounts {
  DistMatrix C;
  Matrix<std::uint64_t> digit;
};
ScaledCounts minplus_scaled_counts(const DistMatrix& a, const DistMatrix& b,
                                   const EntryBounds& bounds);
// every base-(n2+1) digit of one encoded output cell, lowest first
std::vector<std::uint64_t> scaled_cell_digits(const DistMatrix& a, const DistMatrix& b, int i,
                                              int j);

// rank-grouped product for wanted cells only; A has small entries, B may not.
// Output is aligned with `wanted`.
std::vector<Dist> minplus_sparse_range(const DistMatrix& a, const DistMatrix& b,
                                       const EntryBounds& bounds, const std::vector<Cell>& wanted,
                                       std::size_t t, const ProductEngine& inner = {});
// round(sqrt(n2)), at least 1
std::size_t default_group_size(std::size_t n2);

struct ShiftedOptions {
  bool verify_precondition = false;
  ProductEngine inner{};
};
// six shifted mod-6ℓ products; valid when B[k,j] <= A[i,k] + A[i,k'] + B[k',j]
DistMatrix minplus_shifted(const DistMatrix& a, const DistMatrix& b, Dist ell,
                           const ShiftedOptions& opt = {});
// true iff the shifted-product precondition holds (O(n1 n2^2 n3))
bool shifted_precondition_holds(const DistMatrix& a, const DistMatrix& b);

// (distance, count) pairs; count is 0 exactly where distance is INF
struct PairMatrix {
  DistMatrix D;
  Matrix<std::uint64_t> C;
  PairMatrix() = default;
  PairMatrix(std::size_t r, std::size_t c) : D(r, c, kInf), C(r, c, 0) {}
  std::size_t rows() const { return D.rows(); }
  std::size_t cols() const { return D.cols(); }
};

enum class FunnyEngine { direct, encoded };
// distance part: min-plus; count part: sum of products over minimizing k, capped at cap
PairMatrix funny_product(const PairMatrix& x, const PairMatrix& y, std::uint64_t cap,
                         FunnyEngine engine = FunnyEngine::direct);
// number of minimizing k per cell (0 where no finite term)
Matrix<std::uint64_t> witness_count_product(const DistMatrix& a, const DistMatrix& b);

using ApproxMatrix = Matrix<ApproxCount>;
// sum_k A[i,k]B[k,j] within factor (1+1/U) on wanted cells; aligned with `wanted`
std::vector<ApproxCount> approx_count_product(const ApproxMatrix& a, const ApproxMatrix& b,
                                              std::uint64_t U, const std::vector<Cell>& wanted,
                                              std::size_t t);
// exact sum by the same double arithmetic, all terms kept (reference for tests)
std::vector<ApproxCount> approx_count_product_naive(const ApproxMatrix& a, const ApproxMatrix& b,
                                                    const std::vector<Cell>& wanted);

// ring products over counts
using CountMatrix64 = Matrix<std::uint64_t>;
CountMatrix64 mod_product(const CountMatrix64& a, const CountMatrix64& b, std::uint64_t mod);
CountMatrix64 capped_product(const CountMatrix64& a, const CountMatrix64& b, std::uint64_t cap);
// only the wanted cells, via sparse dot products
std::vector<std::uint64_t> mod_product_wanted(const CountMatrix64& a, const CountMatrix64& b,
                                              std::uint64_t mod, const std::vector<Cell>& wanted);

}  // namespace apspkit
