#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "apspkit/graph.hpp"
#include "apspkit/reductions.hpp"

namespace apspkit::gen {

struct Params {
  std::string kind;  // random-digraph, random-undirected, colored, dual-weight, bigcount-layered, minplus
  int n = 64;
  std::uint64_t seed = 1;
  double p = -1.0;          // edge probability; negative picks ~4 ln(n) / n
  Dist w1_lo = 1, w1_hi = 1;  // primary weight range
  Dist w2_lo = 0, w2_hi = 3;  // secondary weight range (dual-weight)
  bool directed = true;       // dual-weight and bigcount-layered
  double red_fraction = 0.3;  // colored
  int n1 = 8, n2 = 4, n3 = 8;  // minplus
  Dist M = 6;
};

const std::vector<std::string>& kinds();

Graph random_digraph(int n, double p, std::uint64_t seed, Dist w_lo = 1, Dist w_hi = 1);
Graph random_undirected(int n, double p, std::uint64_t seed, Dist w_lo = 1, Dist w_hi = 1);
Graph colored_graph(int n, double p, double red_fraction, std::uint64_t seed);
Graph dual_weight_graph(int n, double p, bool directed, Dist w1_lo, Dist w1_hi, Dist w2_lo,
                        Dist w2_hi, std::uint64_t seed);
// layers of two vertices joined by complete bipartite graphs, then two wide
// layers joined by a matching; end-to-end counts have about n/3 bits
Graph bigcount_layered(int n, bool directed = true);
MinPlusInstance random_instance(int n1, int n2, int n3, Dist M, std::uint64_t seed);

// graph kinds only; throws InvalidArgument for minplus or unknown kinds
Graph make_graph(const Params& p);
// writes the instance or graph to `path`; throws InvalidArgument on unknown kinds
void gen_instance(const Params& p, const std::string& path);

}  // namespace apspkit::gen
