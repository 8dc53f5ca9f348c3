#pragma once

#include <cstdint>

#include "apspkit/apsp_exact.hpp"
#include "apspkit/hitting.hpp"
#include "apspkit/oracles.hpp"

namespace apspkit {

struct Lex2Options {
  ProductEngine engine{};
  SampleOptions sample{};
  // directed solver: stage length where Dijkstra takes over; 0 = ceil(n^0.342)
  Dist crossover_L = 0;
  // group size for the rank-grouped products; 0 = round(sqrt(n2))
  std::size_t t = 0;
  // undirected solver: sources of degree > n / degree_L count as high; 0 = ceil(n^0.42)
  int degree_L = 0;
  // gamma selection constant (doubled until a gamma exists)
  double gamma_c = 1.0;
};

struct Lex2Stats {
  std::uint64_t seed_used = 0;
  int attempts = 0;
  Dist crossover = 0;
  int products = 0;
  // undirected solver
  std::size_t high = 0, clusters = 0;
  // gamma solver
  GammaScale gamma{};
};

// pairs matrix entry: lexicographic comparison helper
inline bool lex_less(Dist a1, Dist a2, Dist b1, Dist b2) {
  return a1 < b1 || (a1 == b1 && a2 < b2);
}

// true iff M holds the exact lexicographic distances of g (zero diagonal, no
// edge improves an entry, every finite entry reached over tight edges)
bool certify_lex2(const Graph& g, const Lex2Matrix& M);

// slice of M at primary distance ell: d2 where d1 == ell, INF elsewhere
DistMatrix level_slice(const Lex2Matrix& M, Dist ell);

// w1 in [0, c0], w2 >= 0
Lex2Matrix lex2_directed(const Graph& g, const Lex2Options& opt = {}, Lex2Stats* stats = nullptr);
// undirected, w1 in [1, c0], w2 >= 0
Lex2Matrix lex2_undirected_positive(const Graph& g, const Lex2Options& opt = {},
                                    Lex2Stats* stats = nullptr);
// w1 in [1, c0], w2 >= 0; undirected input is treated as symmetric arcs
Lex2Matrix lex2_gamma(const Graph& g, const Lex2Options& opt = {}, Lex2Stats* stats = nullptr);

// primary = w1, secondary = 1 per edge
Lex2Matrix aplsp(const Graph& g, const Lex2Options& opt = {});
// primary = 1 per edge, secondary = w1
Lex2Matrix apslp(const Graph& g, const Lex2Options& opt = {});
// picks the solver whose preconditions hold
Lex2Matrix lex2_solve(const Graph& g, const Lex2Options& opt = {});

// copy with every undirected edge replaced by two arcs
Graph as_directed(const Graph& g);

}  // namespace apspkit
