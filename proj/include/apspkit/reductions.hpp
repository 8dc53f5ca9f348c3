#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "apspkit/approx.hpp"
#include "apspkit/counting.hpp"
#include "apspkit/graph.hpp"

namespace apspkit {

// A (n1 x n2) and B (n2 x n3) with finite entries in [1, M]
struct MinPlusInstance {
  DistMatrix A, B;
  Dist M = 0;
  std::size_t n1() const { return A.rows(); }
  std::size_t n2() const { return A.cols(); }
  std::size_t n3() const { return B.cols(); }
};

// throws ValidationError on shape mismatch or entries outside [1, M]
void validate_instance(const MinPlusInstance& inst);
// text format: `minplus n1 n2 n3 M`, then n1 rows of A and n2 rows of B
MinPlusInstance read_instance(std::istream& is);
MinPlusInstance load_instance(const std::string& path);
void write_instance(std::ostream& os, const MinPlusInstance& inst);
void save_instance(const MinPlusInstance& inst, const std::string& path);

// plain triple loop
DistMatrix brute_minplus(const MinPlusInstance& inst);

// value = round((scale * dist + offset) / divisor), INF stays INF
struct DecodeMap {
  std::string gadget;
  Dist offset = 0, scale = 1, divisor = 1;
  bool secondary = false;  // decode the secondary lexicographic component
  int budget = 0;          // red-edge budget the gadget expects (colored gadgets)
  std::vector<int> rows, cols;  // vertex ids standing for A's rows and B's columns
  Dist apply(Dist dist) const;
};

struct GadgetGraph {
  Graph graph;
  DecodeMap decode;
  // spine[p] lists the path vertices for inner index p, outermost A side first
  std::vector<std::vector<int>> spine;
};

// directed unweighted; distance(i, j) = 2 + (A*B)[i, j]
GadgetGraph encode_minplus_as_uapsp(const MinPlusInstance& inst);
// DAG with unit weights on the complemented instance; longest paths decode
GadgetGraph encode_minplus_as_dag_aplp(const MinPlusInstance& inst);
// undirected colored; with budget c > 2 a red pendant path of c - 2 edges
// hangs off every row vertex and becomes its source
GadgetGraph encode_minplus_as_2red(const MinPlusInstance& inst, int budget = 2);
// red -> weight 1, blue -> weight 0; lightest shortest path hop count decodes
GadgetGraph encode_minplus_as_aplsp01(const MinPlusInstance& inst);
// uncolored, vertex weights 1 on spines and 2M on row/column vertices
GadgetGraph encode_minplus_as_vertex_weighted(const MinPlusInstance& inst);
// directed unweighted with stretched spines; an f-additive estimate decodes.
// Strict mode rejects entries above ell / (12 f(ell)); relaxed mode only
// requires the decode window to stay unambiguous.
GadgetGraph encode_minplus_additive_lb(const MinPlusInstance& inst, const ErrorProfile& f,
                                       Dist ell, bool relaxed = false);

// decoded n1 x n3 matrix from a full distance matrix of the gadget
DistMatrix decode_distances(const DecodeMap& map, const DistMatrix& dist);
DistMatrix decode_lex(const DecodeMap& map, const Lex2Matrix& dist);

void write_decode_map(std::ostream& os, const DecodeMap& map);
DecodeMap read_decode_map(std::istream& is);

// solvers used by the gadgets that need something beyond apsp-exact
DistMatrix dag_longest_paths(const Graph& g);   // -INF never appears; unreachable = INF
DistMatrix vertex_weighted_apsp(const Graph& g);  // path weight counts both endpoints

// minimum equality witness
struct MinWitnessEncoding {
  DistMatrix A, B;      // square, padded
  std::size_t n1 = 0, n2 = 0, n3 = 0;
  Dist M = 0;
  DistMatrix decode(const IndexMatrix& witness) const;
};
MinWitnessEncoding encode_minplus_as_minwitness_eq(const MinPlusInstance& inst);
// smallest k with A[i,k] == B[k,j], -1 when none
IndexMatrix brute_minwitness_eq(const DistMatrix& a, const DistMatrix& b);

// counting oracle injected into the unique-product reduction: counts between
// all vertex pairs of an unweighted directed graph, mod U or capped at U
struct CountingTarget {
  CountMode mode = CountMode::mod;
  std::uint64_t U = 2;
  std::function<Matrix<std::uint64_t>(const Graph&)> solve;
};
CountingTarget default_counting_target(CountMode mode, std::uint64_t U,
                                       const CountOptions& opt = {});

struct UniqueMinPlusOptions {
  std::uint64_t seed = 1;
  double rounds_c = 3.0;  // rounds per stage = ceil(rounds_c * log2(n1 n2 n3 + 2))
  int rounds = 0;         // overrides rounds_c when positive
};

struct UniqueMinPlusStats {
  std::uint64_t seed = 0;
  int stages = 0, rounds_per_stage = 0, solver_calls = 0;
  std::vector<std::size_t> isolated_per_stage;  // cells whose probe showed one witness
  std::size_t unresolved = 0;
};

// recovers A*B through counting probes; throws ProbabilisticFailure when some
// finite cell never saw an isolated witness
DistMatrix unique_minplus_via_counting(const MinPlusInstance& inst, const CountingTarget& target,
                                       const UniqueMinPlusOptions& opt = {},
                                       UniqueMinPlusStats* stats = nullptr);

}  // namespace apspkit
