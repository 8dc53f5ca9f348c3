#include "apspkit/graph.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace apspkit {

Graph::Graph(int n, bool directed) : n_(n), directed_(directed) {
  if (n < 0) throw InvalidArgument("vertex count must be non-negative");
}

void Graph::add_edge(int u, int v, Dist w1, Dist w2, Color c) {
  if (u < 0 || v < 0 || u >= n_ || v >= n_)
    throw InvalidArgument("edge endpoint out of range: " + std::to_string(u) + " " +
                          std::to_string(v));
  if (u == v && !loops_ok_) throw InvalidArgument("self-loop at " + std::to_string(u));
  if (w1 == kInf || w2 == kInf) throw InvalidArgument("edge weight must be finite");
  edges_.push_back({u, v, w1, w2, c});
  built_ = false;
}

void Graph::ensure() const {
  if (built_) return;
  std::vector<std::size_t> od(n_ + 1, 0), id(n_ + 1, 0);
  for (const Edge& e : edges_) {
    ++od[e.u + 1];
    ++id[e.v + 1];
    if (!directed_) {
      ++od[e.v + 1];
      ++id[e.u + 1];
    }
  }
  for (int i = 0; i < n_; ++i) {
    od[i + 1] += od[i];
    id[i + 1] += id[i];
  }
  out_.assign(od[n_], Arc{});
  in_.assign(id[n_], Arc{});
  std::vector<std::size_t> po(od.begin(), od.end() - 1), pi(id.begin(), id.end() - 1);
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const Edge& e = edges_[k];
    const int ei = static_cast<int>(k);
    out_[po[e.u]++] = {e.v, e.w1, e.w2, e.color, ei};
    in_[pi[e.v]++] = {e.u, e.w1, e.w2, e.color, ei};
    if (!directed_) {
      out_[po[e.v]++] = {e.u, e.w1, e.w2, e.color, ei};
      in_[pi[e.u]++] = {e.v, e.w1, e.w2, e.color, ei};
    }
  }
  out_off_ = std::move(od);
  in_off_ = std::move(id);
  built_ = true;
}

bool Graph::unweighted() const {
  for (const Edge& e : edges_)
    if (e.w1 != 1) return false;
  return true;
}

Dist Graph::min_w1() const {
  Dist r = kInf;
  for (const Edge& e : edges_) r = std::min(r, e.w1);
  return r;
}

Dist Graph::max_w1() const {
  Dist r = kInf;
  for (const Edge& e : edges_) r = (r == kInf || e.w1 > r) ? e.w1 : r;
  return r;
}

bool Graph::all_colored() const {
  for (const Edge& e : edges_)
    if (e.color == Color::none) return false;
  return true;
}

namespace {

bool next_line(std::istream& is, std::string& out, int& lineno) {
  while (std::getline(is, out)) {
    ++lineno;
    auto p = out.find_first_not_of(" \t\r");
    if (p == std::string::npos || out[p] == '#') continue;
    return true;
  }
  return false;
}

long long parse_int(const std::string& tok, int line, const char* what) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(std::string("bad ") + what + " '" + tok + "'", line);
  }
}

}  // namespace

Graph read_graph(std::istream& is, std::optional<GraphRange> range) {
  std::string line;
  int lineno = 0;
  if (!next_line(is, line, lineno)) throw ParseError("missing graph header", lineno);
  std::istringstream hs(line);
  std::string kw, dir;
  long long n = -1, m = -1;
  if (!(hs >> kw >> dir >> n >> m) || kw != "graph" || (dir != "directed" && dir != "undirected") ||
      n < 0 || m < 0)
    throw ParseError("expected 'graph <directed|undirected> <n> <m> [flags]'", lineno);
  Graph g(static_cast<int>(n), dir == "directed");
  std::string flag;
  while (hs >> flag) {
    if (flag == "colors") g.has_colors = true;
    else if (flag == "dual") g.has_dual = true;
    else if (flag == "vweights") g.has_vweights = true;
    else throw ParseError("unknown header flag '" + flag + "'", lineno);
  }
  if (g.has_vweights) {
    if (!next_line(is, line, lineno)) throw ParseError("missing vw line", lineno);
    std::istringstream ls(line);
    std::string tok;
    ls >> tok;
    if (tok != "vw") throw ParseError("expected 'vw' line", lineno);
    while (ls >> tok) g.vweights.push_back(parse_int(tok, lineno, "vertex weight"));
    if (g.vweights.size() != static_cast<std::size_t>(n))
      throw ParseError("vw line needs exactly n weights", lineno);
  }
  for (long long e = 0; e < m; ++e) {
    if (!next_line(is, line, lineno)) throw ParseError("missing edge line", lineno);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (toks.size() < 3) throw ParseError("edge line needs 'u v w1'", lineno);
    long long u = parse_int(toks[0], lineno, "vertex"), v = parse_int(toks[1], lineno, "vertex");
    if (u < 0 || v < 0 || u >= n || v >= n) throw ParseError("vertex out of range", lineno);
    if (u == v) throw ParseError("self-loop", lineno);
    Dist w1 = parse_int(toks[2], lineno, "weight"), w2 = 0;
    std::size_t at = 3;
    if (g.has_dual) {
      if (toks.size() <= at) throw ParseError("dual graph edge needs w2", lineno);
      w2 = parse_int(toks[at++], lineno, "secondary weight");
    }
    Color c = Color::none;
    if (at < toks.size()) {
      if (toks[at] == "red") c = Color::red;
      else if (toks[at] == "blue") c = Color::blue;
      else throw ParseError("unexpected token '" + toks[at] + "'", lineno);
      ++at;
      g.has_colors = true;
    }
    if (at != toks.size()) throw ParseError("trailing tokens on edge line", lineno);
    if (range && (w1 < range->lo || w1 > range->hi))
      throw ValidationError("line " + std::to_string(lineno) + ": weight " + std::to_string(w1) +
                            " outside [" + std::to_string(range->lo) + ", " +
                            std::to_string(range->hi) + "]");
    g.add_edge(static_cast<int>(u), static_cast<int>(v), w1, w2, c);
  }
  return g;
}

Graph load_graph(const std::string& path, std::optional<GraphRange> range) {
  std::ifstream f(path);
  if (!f) throw InvalidArgument("cannot open " + path);
  return read_graph(f, range);
}

void write_graph(std::ostream& os, const Graph& g) {
  bool colors = g.has_colors;
  for (const Edge& e : g.edges())
    if (e.color != Color::none) colors = true;
  os << "graph " << (g.directed() ? "directed" : "undirected") << ' ' << g.n() << ' ' << g.m();
  if (colors) os << " colors";
  if (g.has_dual) os << " dual";
  if (g.has_vweights) os << " vweights";
  os << '\n';
  if (g.has_vweights) {
    os << "vw";
    for (Dist w : g.vweights) os << ' ' << w;
    os << '\n';
  }
  for (const Edge& e : g.edges()) {
    os << e.u << ' ' << e.v << ' ' << e.w1;
    if (g.has_dual) os << ' ' << e.w2;
    if (e.color == Color::red) os << " red";
    if (e.color == Color::blue) os << " blue";
    os << '\n';
  }
}

void save_graph(const Graph& g, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw InvalidArgument("cannot write " + path);
  write_graph(f, g);
}

void require_w1_range(const Graph& g, Dist lo, Dist hi, const char* who) {
  for (const Edge& e : g.edges())
    if (e.w1 < lo || e.w1 > hi)
      throw ValidationError(std::string(who) + ": weight " + std::to_string(e.w1) + " outside [" +
                            std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

void require_unweighted(const Graph& g, const char* who) {
  if (!g.unweighted()) throw ValidationError(std::string(who) + " needs an unweighted graph");
}

void require_undirected(const Graph& g, const char* who) {
  if (g.directed()) throw InvalidArgument(std::string(who) + " needs an undirected graph");
}

void require_directed(const Graph& g, const char* who) {
  if (!g.directed()) throw InvalidArgument(std::string(who) + " needs a directed graph");
}

DistMatrix weight_matrix(const Graph& g) {
  DistMatrix w = minplus_identity(g.n());
  for (const Edge& e : g.edges()) {
    w(e.u, e.v) = std::min(w(e.u, e.v), e.w1);
    if (!g.directed()) w(e.v, e.u) = std::min(w(e.v, e.u), e.w1);
  }
  return w;
}

Graph unit_weights(const Graph& g) {
  Graph r(g.n(), g.directed());
  r.has_colors = g.has_colors;
  r.has_dual = g.has_dual;
  for (const Edge& e : g.edges()) r.add_edge(e.u, e.v, 1, e.w2, e.color);
  return r;
}

Graph reversed(const Graph& g) {
  Graph r(g.n(), g.directed());
  r.has_colors = g.has_colors;
  r.has_dual = g.has_dual;
  r.has_vweights = g.has_vweights;
  r.vweights = g.vweights;
  for (const Edge& e : g.edges()) r.add_edge(e.v, e.u, e.w1, e.w2, e.color);
  return r;
}

}  // namespace apspkit
