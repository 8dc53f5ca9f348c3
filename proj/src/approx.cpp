#include "apspkit/approx.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "apspkit/hitting.hpp"

namespace apspkit {

ErrorProfile ErrorProfile::power(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("error exponent must lie in [0, 1]");
  ErrorProfile e;
  e.p_ = p;
  return e;
}

ErrorProfile ErrorProfile::table(std::vector<double> values) {
  if (values.empty()) throw ValidationError("error table is empty");
  ErrorProfile e;
  e.table_ = std::move(values);
  e.validate(static_cast<Dist>(e.table_.size()));
  return e;
}

double ErrorProfile::operator()(Dist x) const {
  if (x <= 0) return table_.empty() ? 0.0 : table_.front();
  if (table_.empty()) return std::pow(double(x), p_);
  const std::size_t t = table_.size();
  if (std::size_t(x) <= t) return table_[x - 1];
  return table_.back() * double(x) / double(t);
}

void ErrorProfile::validate(Dist upto) const {
  double prev_f = -1.0, prev_ratio = 0.0;
  for (Dist x = 1; x <= std::max<Dist>(upto, 1); ++x) {
    double f = (*this)(x);
    if (!(f >= 0.0)) throw ValidationError("error profile must be non-negative");
    if (f < prev_f) throw ValidationError("error profile must be nondecreasing");
    double ratio = f > 0 ? double(x) / f : INFINITY;
    if (ratio < prev_ratio) throw ValidationError("x / f(x) must be nondecreasing");
    prev_f = f;
    prev_ratio = ratio;
  }
}

namespace {

DistMatrix clip_above(DistMatrix m, Dist bound) {
  for (Dist* p = m.data(), *e = p + m.rows() * m.cols(); p != e; ++p)
    if (*p != kInf && *p > bound) *p = kInf;
  return m;
}

// largest power of two <= x, at least 1
Dist pow2_floor(double x) {
  Dist g = 1;
  while (double(g * 2) <= x) g *= 2;
  return g;
}

DistMatrix floor_div(const DistMatrix& m, Dist g) {
  DistMatrix r = m;
  if (g == 1) return r;
  for (Dist* p = r.data(), *e = p + r.rows() * r.cols(); p != e; ++p)
    if (*p != kInf) *p /= g;
  return r;
}

}  // namespace

ApproxResult approx_apsp(const Graph& g, const ErrorProfile& f, const ApproxOptions& opt) {
  const int n = g.n();
  for (const Edge& e : g.edges())
    if (e.w1 <= 0) throw ValidationError("approx_apsp: weights must be positive");
  f.validate(std::max(2 * n, 2));
  ApproxResult res;
  if (n == 0) return res;
  const Dist c0 = g.m() ? g.max_w1() : 1;
  const auto levels = level_sequence(std::max(n - 1, 1));
  const std::size_t K = levels.size() - 1;
  HittingFamily fam = sample_verified(g, opt.sample.seed, opt.sample.c, opt.sample.retries);
  const DistMatrix W = weight_matrix(g);

  res.cert.seed_used = fam.seed();
  res.cert.levels = levels;
  auto& R = res.phase1_rows;
  R.assign(K + 1, {});
  for (int v = 0; v < n; ++v) R[0].push_back(v);
  for (std::size_t k = 1; k <= K; ++k) R[k] = fam.at(levels[k]);
  for (int t = 0; t <= 64; ++t)
    if (derive_seed(opt.sample.seed, t) == fam.seed()) {
      res.cert.attempts = t + 1;
      break;
    }

  // phase 1: rows R_k and columns R_k of the distance matrix, exact for
  // pairs with a shortest path of at most s_k hops, cleared above c0 s_k
  auto& P = res.phase1;
  auto& Q = res.cols;
  P.assign(K + 1, {});
  Q.assign(K + 1, {});
  res.row_wit.assign(K + 1, {});
  res.col_wit.assign(K + 1, {});
  P[0] = clip_above(W, c0);
  Q[0] = P[0];
  res.row_wit[0] = IndexMatrix(n, n, -2);
  res.col_wit[0] = IndexMatrix(n, n, -2);
  for (std::size_t k = 1; k <= K; ++k) {
    std::vector<int> pos(n, -1);
    for (std::size_t a = 0; a < R[k - 1].size(); ++a) pos[R[k - 1][a]] = int(a);
    std::vector<int> idx;  // R_k inside R_{k-1}
    for (int v : R[k]) idx.push_back(pos[v]);
    const std::size_t rk = R[k].size();
    const Dist bound = c0 * levels[k];

    DistMatrix p = select_rows(P[k - 1], idx);
    IndexMatrix pw(rk, n, -1);
    DistMatrix q = submatrix(Q[k - 1], R[0], idx);
    IndexMatrix qw(n, rk, -1);
    if (rk) {
      std::vector<int> all_mid(R[k - 1].size());
      for (std::size_t a = 0; a < all_mid.size(); ++a) all_mid[a] = int(a);
      ProductResult rp = minplus(submatrix(P[k - 1], idx, R[k - 1]), P[k - 1], opt.engine);
      for (std::size_t a = 0; a < rk; ++a)
        for (int v = 0; v < n; ++v)
          if (rp.C(a, v) < p(a, v)) {
            p(a, v) = rp.C(a, v);
            pw(a, v) = R[k - 1][rp.W(a, v)];
          }
      ProductResult rq = minplus(Q[k - 1], submatrix(P[k - 1], all_mid, R[k]), opt.engine);
      for (int u = 0; u < n; ++u)
        for (std::size_t b = 0; b < rk; ++b)
          if (rq.C(u, b) < q(u, b)) {
            q(u, b) = rq.C(u, b);
            qw(u, b) = R[k - 1][rq.W(u, b)];
          }
    }
    for (std::size_t a = 0; a < rk; ++a)
      for (int v = 0; v < n; ++v)
        if (p(a, v) != kInf && p(a, v) > bound) p(a, v) = kInf;
    for (int u = 0; u < n; ++u)
      for (std::size_t b = 0; b < rk; ++b)
        if (q(u, b) != kInf && q(u, b) > bound) q(u, b) = kInf;
    P[k] = std::move(p);
    Q[k] = std::move(q);
    res.row_wit[k] = std::move(pw);
    res.col_wit[k] = std::move(qw);
  }

  // start from edges and every exact phase-1 entry
  DistMatrix est = W;
  res.source = Matrix<ApproxResult::Source>(n, n);
  auto take = [&](int u, int v, Dist x, ApproxResult::Source s) {
    if (x < est(u, v)) {
      est(u, v) = x;
      res.source(u, v) = s;
    }
  };
  for (std::size_t k = 1; k <= K; ++k) {
    for (std::size_t a = 0; a < R[k].size(); ++a)
      for (int v = 0; v < n; ++v) take(R[k][a], v, P[k](a, v), {1, std::int16_t(k), -1});
    for (int u = 0; u < n; ++u)
      for (std::size_t b = 0; b < R[k].size(); ++b) take(u, R[k][b], Q[k](u, b), {2, std::int16_t(k), -1});
  }

  // phase 2: pairs whose shortest paths have (s_{k-1}, s_k] hops split at
  // R_{k-1}; operands rounded down to the stage granularity, slack re-added
  for (std::size_t k = 1; k <= K; ++k) {
    Dist gran = 1;
    if (opt.rounding) {
      gran = pow2_floor(std::max(1.0, f(levels[k - 1] + 1) / 2.0));
      for (int r = 0; r < opt.refine && gran > 1; ++r) gran /= 2;
    }
    res.cert.granularity.push_back(gran);
    res.cert.bridge.push_back(R[k - 1].size());
    ProductResult pr = minplus(floor_div(Q[k - 1], gran), floor_div(P[k - 1], gran), opt.engine);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) {
        Dist c = pr.C(u, v);
        if (c == kInf) continue;
        take(u, v, c * gran + 2 * (gran - 1), {3, std::int16_t(k), R[k - 1][pr.W(u, v)]});
      }
  }
  res.estimate = std::move(est);
  return res;
}

std::vector<int> approx_path(const Graph& g, const ApproxResult& r, int u, int v) {
  const int n = g.n();
  if (u < 0 || v < 0 || u >= n || v >= n) throw InvalidArgument("vertex out of range");
  if (r.estimate(u, v) == kInf)
    throw NoPath("no path from " + std::to_string(u) + " to " + std::to_string(v));
  std::vector<int> walk{u};
  std::vector<std::vector<int>> row_pos(r.phase1_rows.size(), std::vector<int>(n, -1));
  for (std::size_t k = 0; k < r.phase1_rows.size(); ++k)
    for (std::size_t a = 0; a < r.phase1_rows[k].size(); ++a) row_pos[k][r.phase1_rows[k][a]] = int(a);

  // append the walk for an entry, excluding its first vertex
  std::function<void(int, int, int, int)> expand = [&](int kind, int k, int x, int y) {
    if (x == y && kind != 3) return;
    if (k == 0 || kind == 0) {
      walk.push_back(y);
      return;
    }
    if (kind == 1) {
      int w = r.row_wit[k](row_pos[k][x], y);
      if (w == -1) return expand(1, k - 1, x, y);
      expand(1, k - 1, x, w);
      return expand(1, k - 1, w, y);
    }
    int w = r.col_wit[k](x, row_pos[k][y]);
    if (w == -1) return expand(2, k - 1, x, y);
    expand(2, k - 1, x, w);
    expand(1, k - 1, w, y);
  };
  const auto& s = r.source(u, v);
  if (u != v) {
    if (s.kind == 3) {
      expand(2, s.level - 1, u, s.mid);
      expand(1, s.level - 1, s.mid, v);
    } else {
      expand(s.kind, s.level, u, v);
    }
  }
  // drop cycles; weights are positive so this only shortens the walk
  std::vector<int> path, at(n, -1);
  for (int x : walk) {
    if (at[x] >= 0) {
      for (std::size_t i = at[x] + 1; i < path.size(); ++i) at[path[i]] = -1;
      path.resize(at[x] + 1);
      continue;
    }
    at[x] = int(path.size());
    path.push_back(x);
  }
  return path;
}

std::vector<int> approx_paths(const Graph& g, const ErrorProfile& f, int u, int v,
                              const ApproxOptions& opt) {
  return approx_path(g, approx_apsp(g, f, opt), u, v);
}

}  // namespace apspkit
