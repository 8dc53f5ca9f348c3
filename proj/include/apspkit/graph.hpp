#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "apspkit/matrix.hpp"

namespace apspkit {

enum class Color : std::uint8_t { none, red, blue };

struct Edge {
  int u = 0, v = 0;
  Dist w1 = 1;
  Dist w2 = 0;
  Color color = Color::none;
};

// one direction of an edge as seen from its tail
struct Arc {
  int to;
  Dist w1, w2;
  Color color;
  int edge;
};

class Graph {
 public:
  Graph() = default;
  Graph(int n, bool directed);

  int n() const { return n_; }
  bool directed() const { return directed_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t m() const { return edges_.size(); }

  bool has_colors = false;
  bool has_dual = false;
  bool has_vweights = false;
  std::vector<Dist> vweights;

  void add_edge(int u, int v, Dist w1 = 1, Dist w2 = 0, Color c = Color::none);
  void allow_self_loops(bool on) { loops_ok_ = on; }

  // arcs leaving u (for undirected graphs both endpoints see the edge)
  const Arc* out_begin(int u) const { ensure(); return out_.data() + out_off_[u]; }
  const Arc* out_end(int u) const { ensure(); return out_.data() + out_off_[u + 1]; }
  // arcs entering u, stored with `to` = the tail
  const Arc* in_begin(int u) const { ensure(); return in_.data() + in_off_[u]; }
  const Arc* in_end(int u) const { ensure(); return in_.data() + in_off_[u + 1]; }
  std::size_t out_degree(int u) const { ensure(); return out_off_[u + 1] - out_off_[u]; }

  bool unweighted() const;
  Dist min_w1() const;  // kInf on an edgeless graph
  Dist max_w1() const;  // kInf on an edgeless graph
  bool all_colored() const;

 private:
  void ensure() const;
  int n_ = 0;
  bool directed_ = true;
  bool loops_ok_ = false;
  std::vector<Edge> edges_;
  mutable bool built_ = false;
  mutable std::vector<std::size_t> out_off_, in_off_;
  mutable std::vector<Arc> out_, in_;
};

struct GraphRange {
  Dist lo, hi;
};

// text format: `graph <directed|undirected> <n> <m> [colors] [dual] [vweights]`,
// optional `vw ...` line, then m lines `u v w1 [w2] [red|blue]`
Graph read_graph(std::istream& is, std::optional<GraphRange> w1_range = std::nullopt);
Graph load_graph(const std::string& path, std::optional<GraphRange> w1_range = std::nullopt);
void write_graph(std::ostream& os, const Graph& g);
void save_graph(const Graph& g, const std::string& path);

// throws ValidationError when some w1 lies outside [lo, hi]
void require_w1_range(const Graph& g, Dist lo, Dist hi, const char* who);
void require_unweighted(const Graph& g, const char* who);
void require_undirected(const Graph& g, const char* who);
void require_directed(const Graph& g, const char* who);

// W[u][v] = lightest u->v edge, 0 on the diagonal, INF elsewhere
DistMatrix weight_matrix(const Graph& g);
// same graph with w1 replaced by 1 (colors and w2 kept)
Graph unit_weights(const Graph& g);
Graph reversed(const Graph& g);

}  // namespace apspkit
