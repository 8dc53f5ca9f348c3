#include "apspkit/hitting.hpp"

#include "apspkit/oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <queue>
#include <random>

namespace apspkit {

std::vector<Dist> level_sequence(Dist top) {
  std::vector<Dist> s{1};
  while (s.back() < top) s.push_back(std::max(s.back() + 1, 3 * s.back() / 2));
  return s;
}

Dist level_at_least(Dist x) { return level_sequence(std::max<Dist>(x, 1)).back(); }

Dist hitting_window(Dist s_prev, Dist s_k) { return 2 * s_prev - s_k + 1; }

std::uint64_t derive_seed(std::uint64_t seed, int attempt) {
  if (attempt == 0) return seed;
  // splitmix64 step
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(attempt);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

HittingFamily::HittingFamily(int n, std::uint64_t seed, double c)
    : n_(n), seed_(seed), c_(c), perm_(n) {
  if (c <= 0) throw InvalidArgument("hitting-set constant must be positive");
  std::iota(perm_.begin(), perm_.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(perm_.begin(), perm_.end(), rng);
}

std::size_t HittingFamily::size_at(Dist ell) const {
  if (ell <= 1) return n_;
  if (ell >= 2 * static_cast<Dist>(n_)) return 0;
  double lg = std::max(1.0, std::ceil(std::log2(double(std::max(n_, 2)))));
  double want = std::ceil(c_ * n_ * lg / double(ell));
  return static_cast<std::size_t>(std::min<double>(n_, want));
}

std::vector<int> HittingFamily::at(Dist ell) const {
  std::vector<int> r(perm_.begin(), perm_.begin() + size_at(ell));
  std::sort(r.begin(), r.end());
  return r;
}

std::vector<HittingSet> sample_hitting_sets(const Graph& g, std::uint64_t seed, double c) {
  HittingFamily fam(g.n(), seed, c);
  std::vector<HittingSet> out;
  for (Dist s : level_sequence(2 * static_cast<Dist>(std::max(g.n(), 1))))
    out.push_back(fam.set_at(s));
  return out;
}

bool verify_hitting(const Graph& g, const HittingFamily& fam, const std::vector<Dist>& levels) {
  const int n = g.n();
  std::vector<std::vector<char>> in(levels.size(), std::vector<char>(n, 0));
  for (std::size_t k = 0; k < levels.size(); ++k)
    for (int v : fam.at(levels[k])) in[k][v] = 1;
  std::vector<Dist> dist(n), hops(n);
  std::vector<int> parent(n), order;
  std::vector<Dist> gap(n);
  auto pot = g.m() && g.min_w1() < 0 ? bellman_ford_potentials(g) : std::vector<Dist>(n, 0);
  for (int s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(hops.begin(), hops.end(), kInf);
    std::fill(parent.begin(), parent.end(), -1);
    using Item = std::tuple<Dist, Dist, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[s] = hops[s] = 0;
    pq.push({0, 0, s});
    order.clear();
    while (!pq.empty()) {
      auto [d, h, u] = pq.top();
      pq.pop();
      if (d != dist[u] || h != hops[u]) continue;
      order.push_back(u);
      for (const Arc* a = g.out_begin(u); a != g.out_end(u); ++a) {
        Dist w = a->w1 + pot[u] - pot[a->to];
        Dist nd = d + w, nh = h + 1;
        if (nd < dist[a->to] || (nd == dist[a->to] && nh < hops[a->to])) {
          dist[a->to] = nd;
          hops[a->to] = nh;
          parent[a->to] = u;
          pq.push({nd, nh, a->to});
        }
      }
    }
    for (std::size_t k = 1; k < levels.size(); ++k) {
      Dist win = hitting_window(levels[k - 1], levels[k]);
      if (win <= 0) continue;
      // gap = number of trailing path vertices since the last member
      for (int u : order) {
        Dist before = u == s ? 0 : gap[parent[u]];
        gap[u] = in[k - 1][u] ? 0 : before + 1;
        if (hops[u] + 1 >= win && gap[u] >= win) return false;
      }
    }
  }
  return true;
}

HittingFamily sample_verified(const Graph& g, std::uint64_t seed, double c, int retries) {
  auto levels = level_sequence(2 * static_cast<Dist>(std::max(g.n(), 1)));
  for (int t = 0; t < retries; ++t) {
    HittingFamily fam(g.n(), derive_seed(seed, t), c);
    if (verify_hitting(g, fam, levels)) return fam;
  }
  throw SamplingFailure("hitting sets failed verification after " + std::to_string(retries) +
                        " samples");
}

namespace {

std::vector<std::size_t> value_counts(const DistMatrix& d1, Dist& top) {
  top = 0;
  for (Dist x : d1.storage())
    if (x != kInf) top = std::max(top, x);
  std::vector<std::size_t> cnt(static_cast<std::size_t>(top) + 1, 0);
  for (Dist x : d1.storage())
    if (x != kInf && x >= 0) ++cnt[x];
  return cnt;
}

std::size_t level_hits(const std::vector<std::size_t>& cnt, Dist top, const GammaScale& g,
                       int level, std::vector<char>& mark) {
  std::fill(mark.begin(), mark.end(), 0);
  std::size_t total = 0;
  const Dist step = Dist(1) << level;
  for (Dist j = 1;; ++j) {
    Dist c = g.scaled(j * step);
    if (c - g.window > top) break;
    for (Dist a = std::max<Dist>(0, c - g.window); a <= std::min(top, c + g.window); ++a)
      if (!mark[a]) {
        mark[a] = 1;
        total += cnt[a];
      }
  }
  return total;
}

}  // namespace

GammaScale select_gamma(const DistMatrix& d1, int n, int window, double c) {
  if (n < 1) throw InvalidArgument("select_gamma needs n >= 1");
  Dist top = 0;
  auto cnt = value_counts(d1, top);
  int levels = 0;
  while ((Dist(1) << levels) <= std::max<Dist>(top, 1)) ++levels;
  const double lg = std::max(1.0, std::log2(double(n)));
  std::vector<char> mark(static_cast<std::size_t>(top) + 1);
  GammaScale g;
  g.den = n;
  g.window = window;
  g.level_bounds.resize(levels);
  for (int i = 0; i < levels; ++i)
    g.level_bounds[i] = c * (double(n) * n / double(Dist(1) << i)) * lg * lg;
  for (std::int64_t num = n; num <= 2 * std::int64_t(n); ++num) {
    g.num = num;
    g.level_counts.assign(levels, 0);
    bool ok = true;
    for (int i = 0; i < levels && ok; ++i) {
      g.level_counts[i] = level_hits(cnt, top, g, i, mark);
      ok = double(g.level_counts[i]) <= g.level_bounds[i];
    }
    if (ok) return g;
  }
  throw ConstantTooSmall("no gamma meets the level bounds; raise the constant");
}

std::size_t gamma_level_count(const DistMatrix& d1, const GammaScale& g, int level) {
  // direct recount: test every pair against every multiple
  std::size_t total = 0;
  const Dist step = Dist(1) << level;
  for (Dist x : d1.storage()) {
    if (x == kInf) continue;
    bool hit = false;
    for (Dist j = 1; !hit; ++j) {
      Dist c = g.scaled(j * step);
      if (c - g.window > x) break;
      hit = x >= c - g.window && x <= c + g.window;
    }
    total += hit;
  }
  return total;
}

}  // namespace apspkit
