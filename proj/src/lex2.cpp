#include "apspkit/lex2.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <queue>
#include <tuple>

#include "distance_buckets.hpp"
#include "slice_schedule.hpp"

namespace apspkit {

Graph as_directed(const Graph& g) {
  if (g.directed()) return g;
  Graph h(g.n(), true);
  h.has_colors = g.has_colors;
  h.has_dual = g.has_dual;
  h.has_vweights = g.has_vweights;
  h.vweights = g.vweights;
  for (const Edge& e : g.edges()) {
    h.add_edge(e.u, e.v, e.w1, e.w2, e.color);
    h.add_edge(e.v, e.u, e.w1, e.w2, e.color);
  }
  return h;
}

bool certify_lex2(const Graph& g, const Lex2Matrix& M) {
  const int n = g.n();
  if (M.d1.rows() != std::size_t(n) || M.d2.rows() != std::size_t(n)) return false;
  std::vector<char> seen(n);
  std::vector<int> q;
  for (int u = 0; u < n; ++u) {
    const Dist* a = M.d1.row(u);
    const Dist* b = M.d2.row(u);
    if (a[u] != 0 || b[u] != 0) return false;
    for (int x = 0; x < n; ++x) {
      if ((a[x] == kInf) != (b[x] == kInf)) return false;
      if (a[x] == kInf) continue;
      for (const Arc* e = g.out_begin(x); e != g.out_end(x); ++e)
        if (lex_less(a[x] + e->w1, b[x] + e->w2, a[e->to], b[e->to])) return false;
    }
    std::fill(seen.begin(), seen.end(), 0);
    q.assign(1, u);
    seen[u] = 1;
    for (std::size_t h = 0; h < q.size(); ++h) {
      int x = q[h];
      for (const Arc* e = g.out_begin(x); e != g.out_end(x); ++e) {
        int y = e->to;
        if (!seen[y] && a[y] != kInf && a[x] + e->w1 == a[y] && b[x] + e->w2 == b[y]) {
          seen[y] = 1;
          q.push_back(y);
        }
      }
    }
    for (int v = 0; v < n; ++v)
      if (a[v] != kInf && !seen[v]) return false;
  }
  return true;
}

DistMatrix level_slice(const Lex2Matrix& M, Dist ell) {
  DistMatrix s(M.d1.rows(), M.d1.cols(), kInf);
  for (std::size_t q = 0, e = s.rows() * s.cols(); q < e; ++q)
    if (M.d1.data()[q] == ell) s.data()[q] = M.d2.data()[q];
  return s;
}

namespace {

void require_lex_weights(const Graph& g, bool positive, const char* who) {
  for (const Edge& e : g.edges()) {
    if (e.w1 < 0 || e.w2 < 0) throw ValidationError(std::string(who) + ": negative weight");
    if (positive && e.w1 == 0)
      throw ValidationError(std::string(who) + ": zero primary weight is not supported");
  }
}

Lex2Matrix lex_weight_matrix(const Graph& g) {
  const int n = g.n();
  Lex2Matrix m{DistMatrix(n, n, kInf), DistMatrix(n, n, kInf)};
  for (int u = 0; u < n; ++u) {
    m.d1(u, u) = 0;
    m.d2(u, u) = 0;
    for (const Arc* a = g.out_begin(u); a != g.out_end(u); ++a)
      if (lex_less(a->w1, a->w2, m.d1(u, a->to), m.d2(u, a->to))) {
        m.d1(u, a->to) = a->w1;
        m.d2(u, a->to) = a->w2;
      }
  }
  return m;
}

// one lexicographic matrix with its two coordinates side by side
struct LexBlock {
  DistMatrix d1, d2;
};

LexBlock pick(const LexBlock& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  return {submatrix(m.d1, rows, cols), submatrix(m.d2, rows, cols)};
}

void clip(LexBlock& m, Dist b1, Dist b2) {
  for (std::size_t q = 0, e = m.d1.rows() * m.d1.cols(); q < e; ++q)
    if (m.d1.data()[q] != kInf && (m.d1.data()[q] > b1 || m.d2.data()[q] > b2)) {
      m.d1.data()[q] = kInf;
      m.d2.data()[q] = kInf;
    }
}

void lex_min(LexBlock& c, std::size_t i, std::size_t j, Dist x1, Dist x2) {
  if (lex_less(x1, x2, c.d1(i, j), c.d2(i, j))) {
    c.d1(i, j) = x1;
    c.d2(i, j) = x2;
  }
}

// c = min(c, a * b) lexicographically. The left factor is split by its
// primary value so each piece has small entries (its secondary values); the
// right factor is packed as d1 * S + d2 and may be large.
int lex_product_into(const LexBlock& a, const LexBlock& b, Dist a1max, Dist a2max, Dist b2max,
                     LexBlock& c, std::size_t t, const ProductEngine& engine) {
  const std::size_t n1 = a.d1.rows(), n2 = a.d1.cols(), n3 = b.d1.cols();
  if (n1 == 0 || n2 == 0 || n3 == 0) return 0;
  const Dist S = static_cast<Dist>(std::bit_ceil(static_cast<std::uint64_t>(a2max + b2max + 1)));
  Dist b1max = 0;
  for (Dist x : b.d1.storage())
    if (x != kInf) b1max = std::max(b1max, x);
  if ((a1max + b1max + 1) > (kInf / 4) / S)
    throw BoundViolation("lexicographic packing would overflow");
  DistMatrix benc(n2, n3, kInf);
  for (std::size_t q = 0, e = n2 * n3; q < e; ++q)
    if (b.d1.data()[q] != kInf) {
      if (b.d2.data()[q] > b2max) throw BoundViolation("secondary entry above declared bound");
      benc.data()[q] = b.d1.data()[q] * S + b.d2.data()[q];
    }
  const std::size_t tt = t ? t : default_group_size(n2);
  int products = 0;
  for (Dist v1 = 0; v1 <= a1max; ++v1) {
    DistMatrix part(n1, n2, kInf);
    std::vector<char> row_used(n1, 0);
    bool any = false;
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t k = 0; k < n2; ++k)
        if (a.d1(i, k) == v1) {
          if (a.d2(i, k) > a2max) throw BoundViolation("secondary entry above declared bound");
          part(i, k) = a.d2(i, k);
          row_used[i] = 1;
          any = true;
        }
    if (!any) continue;
    std::vector<Cell> wanted;
    for (std::size_t i = 0; i < n1; ++i)
      if (row_used[i])
        for (std::size_t j = 0; j < n3; ++j) wanted.push_back({int(i), int(j)});
    EntryBounds eb;
    eb.max_finite_a = a2max;
    auto out = minplus_sparse_range(part, benc, eb, wanted, tt, engine);
    ++products;
    for (std::size_t q = 0; q < wanted.size(); ++q) {
      if (out[q] == kInf) continue;
      lex_min(c, wanted[q].i, wanted[q].j, v1 + out[q] / S, out[q] % S);
    }
  }
  return products;
}

Dist max_w(const Graph& g, bool second) {
  Dist m = 0;
  for (const Edge& e : g.edges()) m = std::max(m, second ? e.w2 : e.w1);
  return m;
}

}  // namespace

Lex2Matrix lex2_directed(const Graph& g0, const Lex2Options& opt, Lex2Stats* stats) {
  require_lex_weights(g0, false, "lex2_directed");
  const Graph g = as_directed(g0);
  const int n = g.n();
  if (n == 0) return {};
  const Dist c1 = max_w(g, false), c2 = max_w(g, true);
  const auto levels = level_sequence(std::max(n - 1, 1));
  const Dist L = opt.crossover_L > 0
                     ? opt.crossover_L
                     : level_at_least(static_cast<Dist>(std::ceil(std::pow(double(n), 0.342))));
  std::size_t J = levels.size() - 1;
  for (std::size_t k = 0; k < levels.size(); ++k)
    if (levels[k] >= L) {
      J = k;
      break;
    }
  const Lex2Matrix base = lex_weight_matrix(g);
  std::vector<int> everyone(n);
  for (int v = 0; v < n; ++v) everyone[v] = v;

  for (int attempt = 0; attempt < opt.sample.retries; ++attempt) {
    const std::uint64_t seed = derive_seed(opt.sample.seed, attempt);
    HittingFamily fam(n, seed, opt.sample.c);
    Lex2Stats st;
    st.seed_used = seed;
    st.attempts = attempt + 1;
    st.crossover = levels[J];
    std::vector<std::vector<int>> R(J + 1);
    R[0] = everyone;
    for (std::size_t k = 1; k <= J; ++k) R[k] = fam.at(levels[k]);

    // phase 1: rows R_k and columns R_k, exact for pairs whose lexicographic
    // shortest path has at most s_k edges
    std::vector<LexBlock> P(J + 1), Q(J + 1);
    P[0] = {base.d1, base.d2};
    Q[0] = P[0];
    for (std::size_t k = 1; k <= J; ++k) {
      std::vector<int> pos(n, -1), idx, all_prev(R[k - 1].size());
      for (std::size_t a = 0; a < R[k - 1].size(); ++a) {
        pos[R[k - 1][a]] = int(a);
        all_prev[a] = int(a);
      }
      for (int v : R[k]) idx.push_back(pos[v]);
      const Dist s1 = c1 * levels[k - 1], s2 = c2 * levels[k - 1];
      LexBlock p = pick(P[k - 1], idx, everyone);
      LexBlock q = pick(Q[k - 1], everyone, idx);
      if (!idx.empty()) {
        st.products += lex_product_into(pick(P[k - 1], idx, R[k - 1]), P[k - 1], s1, s2, s2, p,
                                        opt.t, opt.engine);
        st.products += lex_product_into(Q[k - 1], pick(P[k - 1], all_prev, R[k]), s1, s2, s2, q,
                                        opt.t, opt.engine);
      }
      clip(p, c1 * levels[k], c2 * levels[k]);
      clip(q, c1 * levels[k], c2 * levels[k]);
      P[k] = std::move(p);
      Q[k] = std::move(q);
    }

    // phase 2: rows R_{k-1} for every pair of at most s_J edges, descending
    const Dist top1 = c1 * levels[J], top2 = c2 * levels[J];
    LexBlock F = P[J];
    for (std::size_t k = J; k >= 1; --k) {
      LexBlock next = P[k - 1];
      if (!R[k].empty()) {
        const Dist s1 = c1 * levels[k - 1], s2 = c2 * levels[k - 1];
        std::vector<int> all_prev(R[k - 1].size());
        for (std::size_t a = 0; a < all_prev.size(); ++a) all_prev[a] = int(a);
        st.products += lex_product_into(pick(P[k - 1], all_prev, R[k]), F, s1, s2, top2, next,
                                        opt.t, opt.engine);
      }
      clip(next, top1, top2);
      F = std::move(next);
    }

    // long paths meet R_J: exact searches to and from it, then one product
    if (levels[J] < n - 1 && !R[J].empty()) {
      const std::size_t r = R[J].size();
      DistMatrix to1(n, r), to2(n, r), from1(r, n), from2(r, n);
      std::vector<Dist> a, b;
      for (std::size_t x = 0; x < r; ++x) {
        lex_dijkstra(g, R[J][x], false, a, b);
        std::copy(a.begin(), a.end(), from1.row(x));
        std::copy(b.begin(), b.end(), from2.row(x));
        lex_dijkstra(g, R[J][x], true, a, b);
        for (int u = 0; u < n; ++u) {
          to1(u, x) = a[u];
          to2(u, x) = b[u];
        }
      }
      for (int u = 0; u < n; ++u)
        for (std::size_t x = 0; x < r; ++x) {
          if (to1(u, x) == kInf) continue;
          for (int v = 0; v < n; ++v)
            if (from1(x, v) != kInf)
              lex_min(F, u, v, to1(u, x) + from1(x, v), to2(u, x) + from2(x, v));
        }
    }
    Lex2Matrix out{std::move(F.d1), std::move(F.d2)};
    if (certify_lex2(g, out)) {
      if (stats) *stats = st;
      return out;
    }
  }
  throw SamplingFailure("lex2_directed: no sample certified");
}

namespace {

// vertices grouped by their primary distance from each source
using detail::DistanceBuckets;

// slices 0..top filled by extending along the last edge
void base_slices(const Graph& g, const DistMatrix& d1, const DistanceBuckets& bk, Dist top,
                 DistMatrix& d2) {
  const int n = g.n();
  for (int u = 0; u < n; ++u) {
    d2(u, u) = 0;
    for (Dist a = 1; a <= std::min(top, bk.maxd); ++a) {
      auto [b, e] = bk.at(u, a);
      for (const int* p = b; p != e; ++p) {
        int v = *p;
        Dist best = kInf;
        for (const Arc* x = g.in_begin(v); x != g.in_end(v); ++x) {
          int z = x->to;
          if (d1(u, z) != kInf && d1(u, z) + x->w1 == a && d2(u, z) != kInf)
            best = std::min(best, d2(u, z) + x->w2);
        }
        d2(u, v) = best;
      }
    }
  }
}

}  // namespace

Lex2Matrix lex2_undirected_positive(const Graph& g, const Lex2Options& opt, Lex2Stats* stats) {
  require_undirected(g, "lex2_undirected_positive");
  require_lex_weights(g, true, "lex2_undirected_positive");
  const int n = g.n();
  if (n == 0) return {};
  const Dist c0 = std::max<Dist>(1, max_w(g, false));
  SmallWeightOptions so;
  so.engine = opt.engine;
  so.sample = opt.sample;
  const DistMatrix D1 = undirected_small_weight_apsp(g, so);
  const DistanceBuckets bk(D1);
  DistMatrix D2(n, n, kInf);
  Dist known = std::min(c0, bk.maxd);
  base_slices(g, D1, bk, known, D2);

  // high-degree sources are covered by a greedy dominating set
  const int Ldeg = opt.degree_L > 0
                       ? opt.degree_L
                       : static_cast<int>(std::ceil(std::pow(double(n), 0.42)));
  const double threshold = double(n) / Ldeg;
  std::vector<char> high(n, 0);
  std::vector<std::vector<int>> nbr(n);
  for (const Edge& e : g.edges()) {
    nbr[e.u].push_back(e.v);
    nbr[e.v].push_back(e.u);
  }
  for (int v = 0; v < n; ++v) {
    std::sort(nbr[v].begin(), nbr[v].end());
    nbr[v].erase(std::unique(nbr[v].begin(), nbr[v].end()), nbr[v].end());
    high[v] = double(g.out_degree(v)) > threshold;
  }
  struct Cluster {
    int centre;
    std::vector<int> members;
  };
  std::vector<Cluster> clusters;
  {
    std::vector<char> covered(n, 0);
    std::size_t left = std::count(high.begin(), high.end(), 1);
    const std::size_t chunk = static_cast<std::size_t>(std::max(1.0, std::ceil(threshold)));
    while (left) {
      int best = -1;
      std::size_t gain = 0;
      for (int x = 0; x < n; ++x) {
        std::size_t c = high[x] && !covered[x];
        for (int y : nbr[x]) c += high[y] && !covered[y];
        if (c > gain) {
          gain = c;
          best = x;
        }
      }
      std::vector<int> fresh;
      if (high[best] && !covered[best]) fresh.push_back(best);
      for (int y : nbr[best])
        if (high[y] && !covered[y]) fresh.push_back(y);
      std::sort(fresh.begin(), fresh.end());
      for (int y : fresh) covered[y] = 1;
      left -= fresh.size();
      for (std::size_t s = 0; s < fresh.size(); s += chunk)
        clusters.push_back(
            {best, std::vector<int>(fresh.begin() + s,
                                    fresh.begin() + std::min(fresh.size(), s + chunk))});
    }
  }
  // arcs with a low endpoint, for the sparse searches
  std::vector<std::vector<Arc>> low_adj(n);
  for (int u = 0; u < n; ++u)
    for (const Arc* a = g.out_begin(u); a != g.out_end(u); ++a)
      if (!high[u] || !high[a->to]) low_adj[u].push_back(*a);

  std::size_t clusters_run = 0;
  while (known < bk.maxd) {
    const Dist p = known;
    const Dist ell = std::min(bk.maxd, std::max(p + 1, std::min(3 * p / 2, 2 * p - c0 + 1)));
    const Dist m_lo = ell - p + c0 - 1, m_hi = p;

    for (const Cluster& cl : clusters) {
      const int s = cl.centre;
      Dist c = 0;
      for (int u : cl.members) c = std::max(c, D1(s, u));
      auto in_band = [&](int v, Dist i) {
        return D1(s, v) != kInf && D1(s, v) >= i - c && D1(s, v) <= i + c;
      };
      // the band index whose neighbourhood holds the fewest vertices
      Dist m = m_lo;
      std::size_t best_size = SIZE_MAX;
      for (Dist cand = m_lo; cand <= m_hi; ++cand) {
        std::size_t sz = 0;
        for (int v = 0; v < n; ++v)
          sz += D1(s, v) != kInf && D1(s, v) >= cand - c0 + 1 - c && D1(s, v) <= cand + c;
        if (sz < best_size) {
          best_size = sz;
          m = cand;
        }
      }
      // columns: (i, v) for every target value i and v in its band
      std::vector<std::pair<Dist, int>> cols;
      for (Dist i = p + 1; i <= ell; ++i)
        for (int v = 0; v < n; ++v)
          if (in_band(v, i)) cols.emplace_back(i, v);
      for (int u : cl.members)
        for (int v = 0; v < n; ++v)
          if (D1(u, v) != kInf && D1(u, v) > p && D1(u, v) <= ell && !in_band(v, D1(u, v)))
            throw Error("lex2_undirected_positive: band containment violated");
      const std::size_t S = cl.members.size();
      for (Dist d = 0; d < c0; ++d) {
        const Dist mid = m - d;
        std::vector<int> Z;
        for (int z = 0; z < n; ++z)
          if (in_band(z, mid)) Z.push_back(z);
        if (Z.empty() || cols.empty()) continue;
        DistMatrix A(S, Z.size(), kInf), B(Z.size(), cols.size(), kInf);
        for (std::size_t a = 0; a < S; ++a)
          for (std::size_t b = 0; b < Z.size(); ++b)
            if (D1(cl.members[a], Z[b]) == mid) A(a, b) = D2(cl.members[a], Z[b]);
        for (std::size_t b = 0; b < Z.size(); ++b)
          for (std::size_t q = 0; q < cols.size(); ++q) {
            auto [i, v] = cols[q];
            if (D1(Z[b], v) == i - mid) B(b, q) = D2(Z[b], v);
          }
        DistMatrix C = minplus_values(A, B, opt.engine);
        for (std::size_t a = 0; a < S; ++a) {
          int u = cl.members[a];
          for (std::size_t q = 0; q < cols.size(); ++q) {
            auto [i, v] = cols[q];
            if (D1(u, v) == i && C(a, q) < D2(u, v)) D2(u, v) = C(a, q);
          }
        }
      }
      ++clusters_run;
    }

    // low-degree sources: search the sparse graph plus shortcuts to high vertices
    using Item = std::tuple<Dist, Dist, int>;
    std::vector<Dist> a1(n), a2(n);
    for (int u = 0; u < n; ++u) {
      if (high[u]) continue;
      std::fill(a1.begin(), a1.end(), kInf);
      std::fill(a2.begin(), a2.end(), kInf);
      std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
      auto relax = [&](int v, Dist x1, Dist x2) {
        if (lex_less(x1, x2, a1[v], a2[v])) {
          a1[v] = x1;
          a2[v] = x2;
          pq.push({x1, x2, v});
        }
      };
      relax(u, 0, 0);
      for (int z = 0; z < n; ++z)
        if (high[z] && D1(u, z) != kInf && D1(u, z) <= ell) relax(z, D1(z, u), D2(z, u));
      while (!pq.empty()) {
        auto [x1, x2, x] = pq.top();
        pq.pop();
        if (x1 != a1[x] || x2 != a2[x]) continue;
        for (const Arc& e : low_adj[x]) relax(e.to, x1 + e.w1, x2 + e.w2);
      }
      for (int v = 0; v < n; ++v)
        if (D1(u, v) != kInf && D1(u, v) > p && D1(u, v) <= ell) {
          if (a1[v] != D1(u, v)) throw Error("lex2_undirected_positive: sparse search disagrees");
          D2(u, v) = a2[v];
        }
    }
    known = ell;
  }
  if (stats) {
    stats->high = std::count(high.begin(), high.end(), 1);
    stats->clusters = clusters.size();
    stats->products = static_cast<int>(clusters_run);
  }
  return {D1, std::move(D2)};
}

Lex2Matrix lex2_gamma(const Graph& g0, const Lex2Options& opt, Lex2Stats* stats) {
  require_lex_weights(g0, true, "lex2_gamma");
  const Graph g = as_directed(g0);
  const int n = g.n();
  if (n == 0) return {};
  const Dist c0 = std::max<Dist>(1, max_w(g, false));
  ZwickOptions zo;
  zo.engine = opt.engine;
  zo.sample = opt.sample;
  const DistMatrix D1 = zwick_apsp(g, zo);
  const DistanceBuckets bk(D1);
  GammaScale gam;
  for (double c = opt.gamma_c;; c *= 2) {
    try {
      gam = select_gamma(D1, n, static_cast<int>(4 * c0), c);
      break;
    } catch (const ConstantTooSmall&) {
      if (c > 1e6) throw;
    }
  }
  DistMatrix D2(n, n, kInf);
  base_slices(g, D1, bk, detail::slice_base_top(c0), D2);
  int products = 0;
  detail::slice_schedule(bk.maxd, gam, c0, static_cast<int>(c0),
                         [&](Dist a, const std::vector<detail::Split>& splits) {
    // transposed so the small suffix slice is the left factor
    std::vector<int> us, vs;
    std::vector<char> urow(n, 0), vcol(n, 0);
    for (int u = 0; u < n; ++u) {
      auto [b, e] = bk.at(u, a);
      for (const int* p = b; p != e; ++p) {
        urow[u] = 1;
        vcol[*p] = 1;
      }
    }
    for (int v = 0; v < n; ++v) {
      if (urow[v]) us.push_back(v);
      if (vcol[v]) vs.push_back(v);
    }
    if (us.empty()) return;
    std::vector<Cell> wanted;
    std::vector<int> upos(n, -1);
    for (std::size_t x = 0; x < us.size(); ++x) upos[us[x]] = int(x);
    for (std::size_t y = 0; y < vs.size(); ++y)
      for (std::size_t x = 0; x < us.size(); ++x)
        if (D1(us[x], vs[y]) == a) wanted.push_back({int(y), int(x)});
    std::vector<Dist> best(wanted.size(), kInf);
    for (const auto& sp : splits) {
      DistMatrix left(vs.size(), n, kInf), right(n, us.size(), kInf);
      Dist lmax = 0;
      for (std::size_t y = 0; y < vs.size(); ++y)
        for (int z = 0; z < n; ++z)
          if (D1(z, vs[y]) == sp.suffix) {
            left(y, z) = D2(z, vs[y]);
            lmax = std::max(lmax, left(y, z));
          }
      for (int z = 0; z < n; ++z)
        for (std::size_t x = 0; x < us.size(); ++x)
          if (D1(us[x], z) == sp.prefix) right(z, x) = D2(us[x], z);
      EntryBounds eb;
      eb.max_finite_a = lmax;
      auto out = minplus_sparse_range(left, right, eb, wanted,
                                      opt.t ? opt.t : default_group_size(n), opt.engine);
      ++products;
      for (std::size_t q = 0; q < wanted.size(); ++q) best[q] = std::min(best[q], out[q]);
    }
    for (std::size_t q = 0; q < wanted.size(); ++q)
      D2(us[wanted[q].j], vs[wanted[q].i]) = best[q];
  });
  if (stats) {
    stats->gamma = gam;
    stats->products = products;
  }
  return {D1, std::move(D2)};
}

namespace {

Graph reweighted(const Graph& g, bool primary_unit) {
  Graph h(g.n(), g.directed());
  h.has_dual = true;
  h.has_colors = g.has_colors;
  for (const Edge& e : g.edges()) {
    if (primary_unit) h.add_edge(e.u, e.v, 1, e.w1, e.color);
    else h.add_edge(e.u, e.v, e.w1, 1, e.color);
  }
  return h;
}

}  // namespace

Lex2Matrix lex2_solve(const Graph& g, const Lex2Options& opt) {
  bool positive = true;
  for (const Edge& e : g.edges()) positive = positive && e.w1 > 0;
  if (!g.directed() && positive) return lex2_undirected_positive(g, opt);
  return lex2_directed(g, opt);
}

Lex2Matrix aplsp(const Graph& g, const Lex2Options& opt) {
  return lex2_solve(reweighted(g, false), opt);
}

Lex2Matrix apslp(const Graph& g, const Lex2Options& opt) {
  return lex2_solve(reweighted(g, true), opt);
}

}  // namespace apspkit
