#include "generators.hpp"

#include <cmath>
#include <fstream>
#include <random>

namespace apspkit::gen {

const std::vector<std::string>& kinds() {
  static const std::vector<std::string> k{"random-digraph", "random-undirected", "colored",
                                          "dual-weight",    "bigcount-layered",  "minplus"};
  return k;
}

namespace {

double default_p(int n, double p) {
  if (p >= 0) return std::min(p, 1.0);
  return n <= 1 ? 0.0 : std::min(1.0, 4.0 * std::log(double(n)) / double(n));
}

template <class Add>
void random_pairs(int n, bool directed, double p, std::mt19937_64& rng, Add&& add) {
  std::bernoulli_distribution coin(p);
  for (int u = 0; u < n; ++u)
    for (int v = directed ? 0 : u + 1; v < n; ++v)
      if (u != v && coin(rng)) add(u, v);
}

}  // namespace

Graph random_digraph(int n, double p, std::uint64_t seed, Dist w_lo, Dist w_hi) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Dist> w(w_lo, w_hi);
  Graph g(n, true);
  random_pairs(n, true, default_p(n, p), rng, [&](int u, int v) { g.add_edge(u, v, w(rng)); });
  return g;
}

Graph random_undirected(int n, double p, std::uint64_t seed, Dist w_lo, Dist w_hi) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Dist> w(w_lo, w_hi);
  Graph g(n, false);
  random_pairs(n, false, default_p(n, p), rng, [&](int u, int v) { g.add_edge(u, v, w(rng)); });
  return g;
}

Graph colored_graph(int n, double p, double red_fraction, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution red(red_fraction);
  Graph g(n, false);
  g.has_colors = true;
  random_pairs(n, false, default_p(n, p), rng,
               [&](int u, int v) { g.add_edge(u, v, 1, 0, red(rng) ? Color::red : Color::blue); });
  return g;
}

Graph dual_weight_graph(int n, double p, bool directed, Dist w1_lo, Dist w1_hi, Dist w2_lo,
                        Dist w2_hi, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Dist> w1(w1_lo, w1_hi), w2(w2_lo, w2_hi);
  Graph g(n, directed);
  g.has_dual = true;
  random_pairs(n, directed, default_p(n, p), rng, [&](int u, int v) {
    Dist a = w1(rng);
    g.add_edge(u, v, a, w2(rng));
  });
  return g;
}

Graph bigcount_layered(int n, bool directed) {
  if (n < 6) throw InvalidArgument("bigcount-layered needs n >= 6");
  const int L = n / 3, W = n / 6;
  const int last = n - 2 * L - W;  // the final layer takes any remainder
  Graph g(n, directed);
  auto narrow = [](int layer, int s) { return 2 * layer + s; };
  for (int i = 0; i + 1 < L; ++i)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) g.add_edge(narrow(i, a), narrow(i + 1, b));
  const int wide = 2 * L, tail = wide + W;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < W; ++b) g.add_edge(narrow(L - 1, a), wide + b);
  for (int c = 0; c < last; ++c) g.add_edge(wide + c % W, tail + c);
  return g;
}

MinPlusInstance random_instance(int n1, int n2, int n3, Dist M, std::uint64_t seed) {
  if (n1 < 1 || n2 < 1 || n3 < 1 || M < 1) throw InvalidArgument("minplus: bad dimensions or M");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Dist> e(1, M);
  MinPlusInstance inst{DistMatrix(n1, n2), DistMatrix(n2, n3), M};
  for (auto* m : {&inst.A, &inst.B})
    for (std::size_t i = 0; i < m->rows(); ++i)
      for (std::size_t j = 0; j < m->cols(); ++j) (*m)(i, j) = e(rng);
  return inst;
}

Graph make_graph(const Params& p) {
  if (p.n < 0) throw InvalidArgument("n must be >= 0");
  if (p.kind == "random-digraph") return random_digraph(p.n, p.p, p.seed, p.w1_lo, p.w1_hi);
  if (p.kind == "random-undirected") return random_undirected(p.n, p.p, p.seed, p.w1_lo, p.w1_hi);
  if (p.kind == "colored") return colored_graph(p.n, p.p, p.red_fraction, p.seed);
  if (p.kind == "dual-weight")
    return dual_weight_graph(p.n, p.p, p.directed, p.w1_lo, p.w1_hi, p.w2_lo, p.w2_hi, p.seed);
  if (p.kind == "bigcount-layered") return bigcount_layered(p.n, p.directed);
  throw InvalidArgument("unknown graph kind '" + p.kind + "'");
}

void gen_instance(const Params& p, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw InvalidArgument("cannot write " + path);
  if (p.kind == "minplus") write_instance(f, random_instance(p.n1, p.n2, p.n3, p.M, p.seed));
  else write_graph(f, make_graph(p));
}

}  // namespace apspkit::gen
