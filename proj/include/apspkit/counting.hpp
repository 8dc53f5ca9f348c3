#pragma once

#include <cstdint>
#include <vector>

#include "apspkit/apsp_exact.hpp"
#include "apspkit/oracles.hpp"

namespace apspkit {

enum class CountMode { exact, capped, mod, approx };
const char* count_mode_name(CountMode m);

// capped or modular counts with their distance matrix
struct CountMatrix {
  CountMode mode = CountMode::capped;
  std::uint64_t U = 0;
  DistMatrix D;
  Matrix<std::uint64_t> C;
};

struct ApproxCounts {
  std::uint64_t U = 0;           // requested accuracy: factor 1 + 1/U
  std::uint64_t internal_U = 0;  // accuracy used by each product
  DistMatrix D;
  Matrix<ApproxCount> C;
};

struct CountOptions {
  ProductEngine engine{};
  SampleOptions sample{};
  FunnyEngine funny = FunnyEngine::direct;
  double gamma_c = 1.0;
  int workers = 0;  // threads for per-source passes; 0 = hardware concurrency
};

struct CountStats {
  std::uint64_t seed_used = 0;
  int attempts = 0;
  int products = 0;
  std::vector<std::size_t> chain_length;  // capped solver: b per level
};

// exact big-integer counts by per-source band doubling (unweighted graphs)
CountResult count_exact(const Graph& g, const CountOptions& opt = {});

// min(count, U) for directed unweighted graphs via funny-product chains
CountMatrix count_capped_directed(const Graph& g, std::uint64_t U, const CountOptions& opt = {},
                                  CountStats* stats = nullptr);

// counts mod U or capped at U through the squaring recursion (undirected)
CountMatrix count_undirected_seidel(const Graph& g, CountMode mode, std::uint64_t U);

// counts mod U through distance slices (directed unweighted)
CountMatrix count_mod_directed(const Graph& g, std::uint64_t U, const CountOptions& opt = {});

// counts within factor 1 + 1/U (unweighted, either orientation)
ApproxCounts count_approx(const Graph& g, std::uint64_t U, const CountOptions& opt = {});

// true iff C is min(count, U) for the given exact distances, checked through
// the last-edge recurrence
bool certify_capped_counts(const Graph& g, const DistMatrix& D, const Matrix<std::uint64_t>& C,
                           std::uint64_t U);

struct BCValue {
  bool exact = true;
  Rational value;      // exact mode
  double approx = 0.0;  // approximate mode
  double as_double() const { return exact ? value.get_d() : approx; }
};

// sum over ordered pairs s != t, both != v, of the fraction of shortest
// s-t paths through v
BCValue betweenness(const Graph& g, int v, CountMode mode = CountMode::exact,
                    std::uint64_t U = 100, const CountOptions& opt = {});
Rational betweenness_from_counts(const CountResult& r, int v);
double betweenness_from_counts(const ApproxCounts& r, int v);

}  // namespace apspkit
