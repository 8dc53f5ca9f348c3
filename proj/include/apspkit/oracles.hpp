#pragma once

#include <vector>

#include "apspkit/count_value.hpp"
#include "apspkit/graph.hpp"

namespace apspkit {

// (primary, secondary) distance pairs; d2 is INF wherever d1 is
struct Lex2Matrix {
  DistMatrix d1, d2;
  bool operator==(const Lex2Matrix& o) const { return d1 == o.d1 && d2 == o.d2; }
};

// hop distances from one source (reverse = follow arcs backwards)
std::vector<Dist> bfs(const Graph& g, int s, bool reverse = false);
DistMatrix bfs_apsp(const Graph& g);

// non-negative reduced weights w1 + pot[u] - pot[v]; pot may be null
std::vector<Dist> dijkstra(const Graph& g, int s, bool reverse = false,
                           const std::vector<Dist>* pot = nullptr);
DistMatrix dijkstra_apsp(const Graph& g);

// potentials from a virtual source; throws NegativeCycle with a witness cycle
std::vector<Dist> bellman_ford_potentials(const Graph& g);
std::vector<Dist> bellman_ford(const Graph& g, int s);
DistMatrix bellman_ford_apsp(const Graph& g);
DistMatrix johnson_apsp(const Graph& g);
DistMatrix floyd_warshall(const Graph& g);

// picks BFS / Dijkstra / Johnson by the weights present
DistMatrix oracle_apsp(const Graph& g);

// lexicographic (w1, w2) Dijkstra; needs w1, w2 >= 0
Lex2Matrix lex_dijkstra_apsp(const Graph& g);
void lex_dijkstra(const Graph& g, int s, bool reverse, std::vector<Dist>& d1,
                  std::vector<Dist>& d2);

struct CountResult {
  DistMatrix D;
  Matrix<BigInt> C;
};
// per-source BFS layering plus a DP over the shortest-path DAG; unweighted
CountResult oracle_count(const Graph& g);

// shortest distances over paths with at most `budget` red edges (unit weights)
DistMatrix budgeted_bfs_apsp(const Graph& g, int budget);

// sum over ordered pairs s != t, both != v, of sigma_st(v)/sigma_st
std::vector<Rational> brandes_bc(const Graph& g);

}  // namespace apspkit
