#include "apspkit/oracles.hpp"

#include <algorithm>
#include <deque>
#include <queue>

namespace apspkit {

std::vector<Dist> bfs(const Graph& g, int s, bool reverse) {
  std::vector<Dist> d(g.n(), kInf);
  std::vector<int> q;
  q.reserve(g.n());
  d[s] = 0;
  q.push_back(s);
  for (std::size_t h = 0; h < q.size(); ++h) {
    int u = q[h];
    const Arc* b = reverse ? g.in_begin(u) : g.out_begin(u);
    const Arc* e = reverse ? g.in_end(u) : g.out_end(u);
    for (; b != e; ++b)
      if (d[b->to] == kInf) {
        d[b->to] = d[u] + 1;
        q.push_back(b->to);
      }
  }
  return d;
}

DistMatrix bfs_apsp(const Graph& g) {
  DistMatrix d(g.n(), g.n(), kInf);
  for (int s = 0; s < g.n(); ++s) {
    auto r = bfs(g, s);
    std::copy(r.begin(), r.end(), d.row(s));
  }
  return d;
}

std::vector<Dist> dijkstra(const Graph& g, int s, bool reverse, const std::vector<Dist>* pot) {
  std::vector<Dist> d(g.n(), kInf);
  using Item = std::pair<Dist, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  d[s] = 0;
  pq.push({0, s});
  while (!pq.empty()) {
    auto [du, u] = pq.top();
    pq.pop();
    if (du != d[u]) continue;
    const Arc* b = reverse ? g.in_begin(u) : g.out_begin(u);
    const Arc* e = reverse ? g.in_end(u) : g.out_end(u);
    for (; b != e; ++b) {
      Dist w = b->w1;
      if (pot) w += reverse ? ((*pot)[b->to] - (*pot)[u]) : ((*pot)[u] - (*pot)[b->to]);
      if (w < 0) throw InvalidArgument("dijkstra: negative reduced weight");
      if (du + w < d[b->to]) {
        d[b->to] = du + w;
        pq.push({d[b->to], b->to});
      }
    }
  }
  if (pot)
    for (int v = 0; v < g.n(); ++v)
      if (d[v] != kInf) d[v] += reverse ? ((*pot)[s] - (*pot)[v]) : ((*pot)[v] - (*pot)[s]);
  return d;
}

DistMatrix dijkstra_apsp(const Graph& g) {
  DistMatrix d(g.n(), g.n(), kInf);
  for (int s = 0; s < g.n(); ++s) {
    auto r = dijkstra(g, s);
    std::copy(r.begin(), r.end(), d.row(s));
  }
  return d;
}

namespace {

// relax from the given initial labels; returns a vertex changed in round n, or -1
int bf_rounds(const Graph& g, std::vector<Dist>& d, std::vector<int>& pred) {
  const int n = g.n();
  int last = -1;
  for (int round = 0; round <= n; ++round) {
    last = -1;
    for (int u = 0; u < n; ++u) {
      if (d[u] == kInf) continue;
      for (const Arc* a = g.out_begin(u); a != g.out_end(u); ++a)
        if (d[u] + a->w1 < d[a->to]) {
          // undirected edges are walkable both ways, so a negative edge is a 2-cycle
          d[a->to] = d[u] + a->w1;
          pred[a->to] = u;
          last = a->to;
        }
    }
    if (last < 0) return -1;
  }
  return last;
}

[[noreturn]] void report_cycle(int v, const std::vector<int>& pred, int n) {
  for (int i = 0; i < n && pred[v] >= 0; ++i) v = pred[v];
  std::vector<int> cyc{v};
  for (int x = pred[v]; x >= 0 && x != v && cyc.size() <= std::size_t(n); x = pred[x])
    cyc.push_back(x);
  std::reverse(cyc.begin(), cyc.end());
  std::string s = "negative cycle:";
  for (int x : cyc) s += ' ' + std::to_string(x);
  throw NegativeCycle(s, cyc);
}

}  // namespace

std::vector<Dist> bellman_ford_potentials(const Graph& g) {
  std::vector<Dist> d(g.n(), 0);
  std::vector<int> pred(g.n(), -1);
  int bad = bf_rounds(g, d, pred);
  if (bad >= 0) report_cycle(bad, pred, g.n());
  return d;
}

std::vector<Dist> bellman_ford(const Graph& g, int s) {
  std::vector<Dist> d(g.n(), kInf);
  std::vector<int> pred(g.n(), -1);
  d[s] = 0;
  int bad = bf_rounds(g, d, pred);
  if (bad >= 0) report_cycle(bad, pred, g.n());
  return d;
}

DistMatrix bellman_ford_apsp(const Graph& g) {
  DistMatrix d(g.n(), g.n(), kInf);
  for (int s = 0; s < g.n(); ++s) {
    auto r = bellman_ford(g, s);
    std::copy(r.begin(), r.end(), d.row(s));
  }
  return d;
}

DistMatrix johnson_apsp(const Graph& g) {
  auto pot = bellman_ford_potentials(g);
  DistMatrix d(g.n(), g.n(), kInf);
  for (int s = 0; s < g.n(); ++s) {
    auto r = dijkstra(g, s, false, &pot);
    std::copy(r.begin(), r.end(), d.row(s));
  }
  return d;
}

DistMatrix floyd_warshall(const Graph& g) {
  DistMatrix d = weight_matrix(g);
  const int n = g.n();
  for (int k = 0; k < n; ++k) {
    const Dist* dk = d.row(k);
    for (int i = 0; i < n; ++i) {
      Dist dik = d(i, k);
      if (dik == kInf) continue;
      Dist* di = d.row(i);
      for (int j = 0; j < n; ++j)
        if (dk[j] != kInf && dik + dk[j] < di[j]) di[j] = dik + dk[j];
    }
  }
  for (int i = 0; i < n; ++i)
    if (d(i, i) < 0) {
      // rerun Bellman-Ford to name the cycle
      bellman_ford_potentials(g);
      throw NegativeCycle("negative cycle through " + std::to_string(i), {i});
    }
  return d;
}

DistMatrix oracle_apsp(const Graph& g) {
  if (g.unweighted()) return bfs_apsp(g);
  if (g.m() == 0 || g.min_w1() >= 0) return dijkstra_apsp(g);
  return johnson_apsp(g);
}

void lex_dijkstra(const Graph& g, int s, bool reverse, std::vector<Dist>& d1,
                  std::vector<Dist>& d2) {
  d1.assign(g.n(), kInf);
  d2.assign(g.n(), kInf);
  using Item = std::tuple<Dist, Dist, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  d1[s] = d2[s] = 0;
  pq.push({0, 0, s});
  while (!pq.empty()) {
    auto [a, b, u] = pq.top();
    pq.pop();
    if (a != d1[u] || b != d2[u]) continue;
    const Arc* p = reverse ? g.in_begin(u) : g.out_begin(u);
    const Arc* e = reverse ? g.in_end(u) : g.out_end(u);
    for (; p != e; ++p) {
      if (p->w1 < 0 || p->w2 < 0) throw ValidationError("lexicographic Dijkstra: negative weight");
      Dist x = a + p->w1, y = b + p->w2;
      int v = p->to;
      if (x < d1[v] || (x == d1[v] && y < d2[v])) {
        d1[v] = x;
        d2[v] = y;
        pq.push({x, y, v});
      }
    }
  }
}

Lex2Matrix lex_dijkstra_apsp(const Graph& g) {
  Lex2Matrix r{DistMatrix(g.n(), g.n(), kInf), DistMatrix(g.n(), g.n(), kInf)};
  std::vector<Dist> a, b;
  for (int s = 0; s < g.n(); ++s) {
    lex_dijkstra(g, s, false, a, b);
    std::copy(a.begin(), a.end(), r.d1.row(s));
    std::copy(b.begin(), b.end(), r.d2.row(s));
  }
  return r;
}

CountResult oracle_count(const Graph& g) {
  const int n = g.n();
  CountResult r{DistMatrix(n, n, kInf), Matrix<BigInt>(n, n, BigInt(0))};
  std::vector<int> order;
  for (int s = 0; s < n; ++s) {
    auto d = bfs(g, s);
    order.clear();
    for (int v = 0; v < n; ++v)
      if (d[v] != kInf) order.push_back(v);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return d[x] < d[y]; });
    BigInt* c = r.C.row(s);
    c[s] = 1;
    for (int v : order) {
      if (v == s) continue;
      for (const Arc* a = g.in_begin(v); a != g.in_end(v); ++a)
        if (d[a->to] != kInf && d[a->to] + 1 == d[v]) c[v] += c[a->to];
    }
    std::copy(d.begin(), d.end(), r.D.row(s));
  }
  return r;
}

DistMatrix budgeted_bfs_apsp(const Graph& g, int budget) {
  if (budget < 0) throw InvalidArgument("red budget must be >= 0");
  const int n = g.n(), layers = budget + 1;
  DistMatrix out(n, n, kInf);
  std::vector<Dist> d(static_cast<std::size_t>(n) * layers);
  std::deque<std::pair<int, int>> q;
  for (int s = 0; s < n; ++s) {
    std::fill(d.begin(), d.end(), kInf);
    d[s] = 0;
    q.assign(1, {s, 0});
    while (!q.empty()) {
      auto [u, r] = q.front();
      q.pop_front();
      Dist du = d[static_cast<std::size_t>(r) * n + u];
      for (const Arc* a = g.out_begin(u); a != g.out_end(u); ++a) {
        int r2 = r + (a->color == Color::red ? 1 : 0);
        if (r2 > budget) continue;
        Dist& dv = d[static_cast<std::size_t>(r2) * n + a->to];
        if (dv == kInf) {
          dv = du + 1;
          q.push_back({a->to, r2});
        }
      }
    }
    for (int v = 0; v < n; ++v)
      for (int r = 0; r < layers; ++r) out(s, v) = std::min(out(s, v), d[std::size_t(r) * n + v]);
  }
  return out;
}

std::vector<Rational> brandes_bc(const Graph& g) {
  const int n = g.n();
  std::vector<Rational> bc(n, Rational(0));
  std::vector<BigInt> sigma(n);
  std::vector<Rational> delta(n);
  for (int s = 0; s < n; ++s) {
    auto d = bfs(g, s);
    std::vector<int> order;
    for (int v = 0; v < n; ++v)
      if (d[v] != kInf) order.push_back(v);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return d[x] < d[y]; });
    for (int v = 0; v < n; ++v) {
      sigma[v] = 0;
      delta[v] = 0;
    }
    sigma[s] = 1;
    for (int v : order)
      for (const Arc* a = g.in_begin(v); a != g.in_end(v); ++a)
        if (d[a->to] != kInf && d[a->to] + 1 == d[v]) sigma[v] += sigma[a->to];
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      int w = *it;
      for (const Arc* a = g.in_begin(w); a != g.in_end(w); ++a) {
        int v = a->to;
        if (d[v] != kInf && d[v] + 1 == d[w]) {
          Rational share(sigma[v], sigma[w]);
          share.canonicalize();
          delta[v] += share * (1 + delta[w]);
        }
      }
      if (w != s) bc[w] += delta[w];
    }
  }
  return bc;
}

}  // namespace apspkit
