#include "apspkit/apsp_exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>

#include "apspkit/hitting.hpp"
#include "apspkit/oracles.hpp"

namespace apspkit {

bool certify_distances(const Graph& g, const DistMatrix& D) {
  const int n = g.n();
  if (D.rows() != std::size_t(n) || D.cols() != std::size_t(n)) return false;
  std::vector<char> seen(n);
  std::vector<int> q;
  for (int u = 0; u < n; ++u) {
    const Dist* du = D.row(u);
    if (du[u] != 0) return false;
    // upper side: no edge can improve any entry
    for (int x = 0; x < n; ++x) {
      if (du[x] == kInf) continue;
      for (const Arc* a = g.out_begin(x); a != g.out_end(x); ++a)
        if (du[x] + a->w1 < du[a->to]) return false;
    }
    // lower side: every finite entry is reached from u over tight edges
    std::fill(seen.begin(), seen.end(), 0);
    q.assign(1, u);
    seen[u] = 1;
    for (std::size_t h = 0; h < q.size(); ++h) {
      int x = q[h];
      for (const Arc* a = g.out_begin(x); a != g.out_end(x); ++a)
        if (!seen[a->to] && du[a->to] != kInf && du[x] + a->w1 == du[a->to]) {
          seen[a->to] = 1;
          q.push_back(a->to);
        }
    }
    for (int v = 0; v < n; ++v)
      if (du[v] != kInf && !seen[v]) return false;
  }
  return true;
}

namespace {

Dist max_abs_weight(const Graph& g) {
  Dist c0 = 0;
  for (const Edge& e : g.edges()) c0 = std::max(c0, e.w1 < 0 ? -e.w1 : e.w1);
  return c0;
}

DistMatrix clipped(DistMatrix m, Dist bound) {
  Dist* p = m.data();
  for (std::size_t q = 0, e = m.rows() * m.cols(); q < e; ++q)
    if (p[q] != kInf && (p[q] > bound || p[q] < -bound)) p[q] = kInf;
  return m;
}

void min_into(DistMatrix& d, const DistMatrix& p) {
  Dist* a = d.data();
  const Dist* b = p.data();
  for (std::size_t q = 0, e = d.rows() * d.cols(); q < e; ++q) a[q] = std::min(a[q], b[q]);
}

std::vector<int> all_vertices(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace

DistMatrix zwick_apsp(const Graph& g, const ZwickOptions& opt, ZwickStats* stats) {
  require_directed(g, "zwick_apsp");
  const int n = g.n();
  if (n == 0) return {};
  const Dist c0 = max_abs_weight(g);
  std::vector<Dist> pot;
  const bool negative = g.m() && g.min_w1() < 0;
  if (negative) pot = bellman_ford_potentials(g);
  Dist L = opt.crossover_L > 0
               ? opt.crossover_L
               : level_at_least(static_cast<Dist>(std::ceil(std::sqrt(double(n)))));
  const auto levels = level_sequence(std::max(n - 1, 1));
  const DistMatrix W = weight_matrix(g);
  const auto everyone = all_vertices(n);

  for (int attempt = 0; attempt < opt.sample.retries; ++attempt) {
    const std::uint64_t seed = derive_seed(opt.sample.seed, attempt);
    HittingFamily fam(n, seed, opt.sample.c);
    DistMatrix D = W;
    ZwickStats st{seed, attempt + 1, L, 0, false};
    for (std::size_t k = 1; k < levels.size(); ++k) {
      if (levels[k - 1] >= n - 1) break;
      const auto bridge = fam.at(levels[k - 1]);
      if (levels[k] >= L) {
        // long paths all pass through the bridge set: exact distances to and
        // from it by Dijkstra, then one product over it
        DistMatrix to(n, bridge.size(), kInf), from(bridge.size(), n, kInf);
        for (std::size_t b = 0; b < bridge.size(); ++b) {
          auto f = dijkstra(g, bridge[b], false, negative ? &pot : nullptr);
          auto r = dijkstra(g, bridge[b], true, negative ? &pot : nullptr);
          for (int v = 0; v < n; ++v) {
            from(b, v) = f[v];
            to(v, b) = r[v];
          }
        }
        min_into(D, minplus_values(to, from, ProductEngine{EngineKind::blocked}));
        st.used_dijkstra_pass = true;
        break;
      }
      // both halves of a path of at most s_k hops split at a bridge vertex
      // have at most s_{k-1} hops
      const Dist clip = c0 * levels[k - 1];
      DistMatrix a = clipped(submatrix(D, everyone, bridge), clip);
      DistMatrix b = clipped(select_rows(D, bridge), clip);
      min_into(D, minplus_values(a, b, opt.engine));
      ++st.product_stages;
    }
    if (certify_distances(g, D)) {
      if (stats) *stats = st;
      return D;
    }
  }
  throw SamplingFailure("zwick_apsp: no sample certified after " +
                        std::to_string(opt.sample.retries) + " attempts");
}

IndexMatrix successor_matrix(const Graph& g, const DistMatrix& D, const ProductEngine& engine) {
  const int n = g.n();
  DistMatrix w = weight_matrix(g);
  for (int i = 0; i < n; ++i) w(i, i) = kInf;
  ProductResult r = minplus(w, D, engine);
  IndexMatrix s(n, n, kNoWitness);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && D(u, v) != kInf && r.C(u, v) == D(u, v)) s(u, v) = r.W(u, v);
  return s;
}

std::vector<int> shortest_path(const Graph& g, const DistMatrix& D, const IndexMatrix& succ, int u,
                               int v) {
  if (D(u, v) == kInf) throw NoPath("no path from " + std::to_string(u) + " to " + std::to_string(v));
  std::vector<int> path{u};
  std::vector<char> on(g.n(), 0);
  on[u] = 1;
  int x = u;
  bool looped = false;
  while (x != v) {
    int y = succ(x, v);
    if (y < 0 || on[y]) {
      looped = true;
      break;
    }
    on[y] = 1;
    path.push_back(y);
    x = y;
  }
  if (!looped) return path;
  // breadth-first over tight edges gives a simple path
  std::vector<int> par(g.n(), -2);
  std::deque<int> q{u};
  par[u] = -1;
  while (!q.empty() && par[v] == -2) {
    int a = q.front();
    q.pop_front();
    for (const Arc* e = g.out_begin(a); e != g.out_end(a); ++e) {
      int b = e->to;
      if (par[b] != -2 || D(b, v) == kInf || D(a, v) != e->w1 + D(b, v)) continue;
      par[b] = a;
      q.push_back(b);
    }
  }
  if (par[v] == -2) throw NoPath("successor data inconsistent with distances");
  path.clear();
  for (int y = v; y != -1; y = par[y]) path.push_back(y);
  std::reverse(path.begin(), path.end());
  return path;
}

DistMatrix seidel_apsp(const Graph& g) {
  require_undirected(g, "seidel_apsp");
  require_unweighted(g, "seidel_apsp");
  const int n = g.n();
  if (n == 0) return {};
  BitMatrix a(n, n);
  for (const Edge& e : g.edges()) {
    a.set(e.u, e.v);
    a.set(e.v, e.u);
  }
  const std::size_t guard =
      static_cast<std::size_t>(std::ceil(std::log2(double(std::max(n, 2))))) + 4;
  std::vector<BitMatrix> chain{a};
  for (;;) {
    const BitMatrix& cur = chain.back();
    BitMatrix sq = bool_product(cur, cur);
    sq |= cur;
    for (int i = 0; i < n; ++i) sq.set(i, i, false);
    if (sq == cur) break;
    if (chain.size() > guard)
      throw Error("seidel_apsp: squaring did not settle within " + std::to_string(guard) +
                  " levels (n=" + std::to_string(n) + ", edges at top=" +
                  std::to_string(sq.count()) + ")");
    chain.push_back(std::move(sq));
  }
  // every component of the top graph is a clique
  DistMatrix d(n, n, kInf);
  for (int u = 0; u < n; ++u) {
    d(u, u) = 0;
    chain.back().for_each_in_row(u, [&](std::size_t v) { d(u, v) = 1; });
  }
  for (std::size_t lvl = chain.size() - 1; lvl-- > 0;) {
    const BitMatrix& adj = chain[lvl];
    BitMatrix res[3] = {BitMatrix(n, n), BitMatrix(n, n), BitMatrix(n, n)};
    for (int u = 0; u < n; ++u)
      for (int w = 0; w < n; ++w)
        if (d(u, w) != kInf) res[d(u, w) % 3].set(u, w);
    // odd distance iff some neighbour w of v sits one half-step closer to u
    BitMatrix near[3] = {bool_product(res[0], adj), bool_product(res[1], adj),
                         bool_product(res[2], adj)};
    DistMatrix nd(n, n, kInf);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) {
        Dist h = d(u, v);
        if (h == kInf) continue;
        int j = static_cast<int>(((h - 1) % 3 + 3) % 3);
        nd(u, v) = near[j].get(u, v) ? 2 * h - 1 : 2 * h;
      }
    d = std::move(nd);
  }
  return d;
}

DistMatrix undirected_small_weight_apsp(const Graph& g, const SmallWeightOptions& opt) {
  require_undirected(g, "undirected_small_weight_apsp");
  const int n = g.n();
  if (n == 0) return {};
  for (const Edge& e : g.edges())
    if (e.w1 < 0) throw ValidationError("undirected_small_weight_apsp: negative weight");
  const Dist c0 = std::max<Dist>(1, max_abs_weight(g));
  const auto levels = level_sequence(std::max(n - 1, 1));
  const std::size_t K = levels.size() - 1;
  // the set used to step down from level k must meet the first s_{k-1}+1
  // vertices of every long path; sampled sets guarantee runs of this length
  for (std::size_t k = 1; k <= K; ++k) {
    Dist next = std::max(levels[k] + 1, 3 * levels[k] / 2);
    if (hitting_window(levels[k], next) > levels[k - 1] + 1)
      throw Error("stage sequence violates the window requirement");
  }
  const DistMatrix W = weight_matrix(g);

  for (int attempt = 0; attempt < opt.sample.retries; ++attempt) {
    HittingFamily fam(n, derive_seed(opt.sample.seed, attempt), opt.sample.c);
    std::vector<std::vector<int>> R(K + 1);
    R[0] = all_vertices(n);
    for (std::size_t k = 1; k <= K; ++k) R[k] = fam.at(levels[k]);
    // position of each vertex inside R[k-1], to index rows of P[k-1]
    auto rows_of = [&](std::size_t k) {
      std::vector<int> pos(n, -1), idx;
      for (std::size_t a = 0; a < R[k - 1].size(); ++a) pos[R[k - 1][a]] = int(a);
      for (int v : R[k]) idx.push_back(pos[v]);
      return idx;
    };

    // phase 1: rows R_k, exact where the pair has a shortest path of <= s_k hops
    std::vector<DistMatrix> P(K + 1);
    P[0] = clipped(W, c0);
    for (std::size_t k = 1; k <= K; ++k) {
      auto idx = rows_of(k);
      DistMatrix cur = select_rows(P[k - 1], idx);
      if (!R[k].empty()) {
        DistMatrix a = submatrix(P[k - 1], idx, R[k - 1]);
        min_into(cur, minplus_values(a, P[k - 1], opt.engine));
      }
      P[k] = clipped(std::move(cur), c0 * levels[k]);
    }

    // phase 2: rows R_{k-1} through R_k, all pairs exact
    DistMatrix F = P[K];
    for (std::size_t k = K; k >= 1; --k) {
      const Dist ell = c0 * levels[k];
      DistMatrix next = P[k - 1];
      if (!R[k].empty()) {
        DistMatrix a(R[k - 1].size(), R[k].size(), kInf);
        for (std::size_t x = 0; x < R[k - 1].size(); ++x)
          for (std::size_t y = 0; y < R[k].size(); ++y) {
            Dist v = F(y, R[k - 1][x]);
            if (v <= ell) a(x, y) = v;
          }
        ShiftedOptions so;
        so.inner = opt.engine;
        so.verify_precondition = opt.verify_shifted;
        min_into(next, minplus_shifted(a, F, ell, so));
      }
      F = std::move(next);
    }
    if (certify_distances(g, F)) return F;
  }
  throw SamplingFailure("undirected_small_weight_apsp: no sample certified");
}

Graph cred_layered_graph(const Graph& g, int budget) {
  const int n = g.n(), layers = budget + 1;
  Graph h(n * layers, true);
  for (const Edge& e : g.edges()) {
    for (int i = 0; i < layers; ++i) {
      int j = e.color == Color::red ? i + 1 : i;
      if (j >= layers) continue;
      h.add_edge(i * n + e.u, j * n + e.v, e.w1);
      if (!g.directed()) h.add_edge(i * n + e.v, j * n + e.u, e.w1);
    }
  }
  return h;
}

DistMatrix cred_apsp(const Graph& g, int budget, bool use_bfs, const ZwickOptions& opt) {
  if (budget < 0) throw InvalidArgument("red budget must be >= 0");
  if (!g.all_colored()) throw ValidationError("cred_apsp: every edge needs a color");
  const int n = g.n(), layers = budget + 1;
  Graph h = cred_layered_graph(g, budget);
  DistMatrix out(n, n, kInf);
  if (use_bfs || !h.unweighted()) {
    for (int u = 0; u < n; ++u) {
      auto d = h.unweighted() ? bfs(h, u) : dijkstra(h, u);
      for (int i = 0; i < layers; ++i)
        for (int v = 0; v < n; ++v) out(u, v) = std::min(out(u, v), d[i * n + v]);
    }
    return out;
  }
  DistMatrix d = zwick_apsp(h, opt);
  for (int u = 0; u < n; ++u)
    for (int i = 0; i < layers; ++i)
      for (int v = 0; v < n; ++v) out(u, v) = std::min(out(u, v), d(u, i * n + v));
  return out;
}

namespace {

// distances over paths with at most one red edge, recursing on the squared
// colored graph until squaring adds nothing
DistMatrix one_red_rec(const BitMatrix& red, const BitMatrix& blue, std::size_t depth,
                       std::size_t guard, OneRedTrace* trace) {
  const int n = static_cast<int>(red.rows());
  BitMatrix r2 = bool_product(red, blue);
  r2 |= bool_product(blue, red);
  r2 |= red;
  BitMatrix b2 = bool_product(blue, blue);
  b2 |= blue;
  for (int i = 0; i < n; ++i) {
    r2.set(i, i, false);
    b2.set(i, i, false);
  }
  BitMatrix any = red;
  any |= blue;
  if (b2 == blue && r2.subset_of(any)) {
    DistMatrix d(n, n, kInf);
    for (int u = 0; u < n; ++u) {
      d(u, u) = 0;
      any.for_each_in_row(u, [&](std::size_t v) { d(u, v) = 1; });
    }
    return d;
  }
  if (depth > guard) throw Error("one_red_apsp: squaring did not settle");
  DistMatrix half = one_red_rec(r2, b2, depth + 1, guard, nullptr);
  BitMatrix res[3] = {BitMatrix(n, n), BitMatrix(n, n), BitMatrix(n, n)};
  for (int x = 0; x < n; ++x)
    for (int v = 0; v < n; ++v)
      if (half(x, v) != kInf) res[half(x, v) % 3].set(x, v);
  // blue first step toward a vertex one half-step closer to v
  BitMatrix step[3] = {bool_product(blue, res[0]), bool_product(blue, res[1]),
                       bool_product(blue, res[2])};
  DistMatrix dbar(n, n, kInf);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      Dist h = half(u, v);
      if (h == kInf) continue;
      int j = static_cast<int>(((h - 1) % 3 + 3) % 3);
      dbar(u, v) = step[j].get(u, v) ? 2 * h - 1 : 2 * h;
    }
  DistMatrix d(n, n, kInf);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      if (u == v) d(u, v) = 0;
      else if (any.get(u, v)) d(u, v) = 1;
      else d(u, v) = std::min(dbar(u, v), dbar(v, u));
    }
  if (trace) {
    trace->half = std::move(half);
    trace->dbar = std::move(dbar);
  }
  return d;
}

}  // namespace

DistMatrix one_red_apsp(const Graph& g, OneRedTrace* trace) {
  require_undirected(g, "one_red_apsp");
  require_unweighted(g, "one_red_apsp");
  if (!g.all_colored()) throw ValidationError("one_red_apsp: every edge needs a color");
  const int n = g.n();
  if (n == 0) return {};
  BitMatrix red(n, n), blue(n, n);
  for (const Edge& e : g.edges()) {
    BitMatrix& m = e.color == Color::red ? red : blue;
    m.set(e.u, e.v);
    m.set(e.v, e.u);
  }
  const std::size_t guard =
      static_cast<std::size_t>(std::ceil(std::log2(double(std::max(n, 2))))) + 4;
  return one_red_rec(red, blue, 0, guard, trace);
}

}  // namespace apspkit
