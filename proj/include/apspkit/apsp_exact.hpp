#pragma once

#include <cstdint>
#include <vector>

#include "apspkit/bitmatrix.hpp"
#include "apspkit/graph.hpp"
#include "apspkit/minplus.hpp"

namespace apspkit {

struct SampleOptions {
  std::uint64_t seed = 1;
  double c = 4.0;
  int retries = 16;
};

struct ZwickOptions {
  ProductEngine engine{};
  SampleOptions sample{};
  // switch to the per-sample Dijkstra pass at the first stage length >= this;
  // 0 picks ceil(sqrt n) rounded up to a stage length
  Dist crossover_L = 0;
};

struct ZwickStats {
  std::uint64_t seed_used = 0;
  int attempts = 0;
  Dist crossover = 0;
  int product_stages = 0;
  bool used_dijkstra_pass = false;
};

DistMatrix zwick_apsp(const Graph& g, const ZwickOptions& opt = {}, ZwickStats* stats = nullptr);

// true iff D is exactly the distance matrix of g, given that every finite
// entry of D is the length of some walk: zero diagonal plus the triangle
// inequality over every edge
bool certify_distances(const Graph& g, const DistMatrix& D);

// next hop toward v on a shortest path, from the witness product W * D;
// -1 on the diagonal and for unreachable pairs
IndexMatrix successor_matrix(const Graph& g, const DistMatrix& D,
                             const ProductEngine& engine = {});
// walks successors; falls back to a search over tight edges if a zero-weight
// cycle makes the successor chain revisit a vertex
std::vector<int> shortest_path(const Graph& g, const DistMatrix& D, const IndexMatrix& succ, int u,
                               int v);

DistMatrix seidel_apsp(const Graph& g);

struct SmallWeightOptions {
  ProductEngine engine{};
  SampleOptions sample{};
  bool verify_shifted = false;
};
DistMatrix undirected_small_weight_apsp(const Graph& g, const SmallWeightOptions& opt = {});

// shortest distances over paths using at most `budget` red edges
DistMatrix cred_apsp(const Graph& g, int budget, bool use_bfs = false, const ZwickOptions& opt = {});
// layered graph used by cred_apsp: copies 0..budget, red edges step up one copy
Graph cred_layered_graph(const Graph& g, int budget);

struct OneRedTrace {
  DistMatrix half;  // distances in the squared colored graph
  DistMatrix dbar;  // the one-sided estimate before symmetrizing
};
DistMatrix one_red_apsp(const Graph& g, OneRedTrace* trace = nullptr);

}  // namespace apspkit
