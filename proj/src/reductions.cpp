#include "apspkit/reductions.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "apspkit/oracles.hpp"

namespace apspkit {

void validate_instance(const MinPlusInstance& inst) {
  if (inst.A.cols() != inst.B.rows()) throw ValidationError("instance: inner dimensions differ");
  if (inst.A.empty() || inst.B.empty()) throw ValidationError("instance: empty matrix");
  if (inst.M < 1) throw ValidationError("instance: entry bound M must be >= 1");
  for (const DistMatrix* m : {&inst.A, &inst.B})
    for (Dist x : m->storage())
      if (x != kInf && (x < 1 || x > inst.M))
        throw ValidationError("instance: entry " + std::to_string(x) + " outside [1, " +
                              std::to_string(inst.M) + "]");
}

MinPlusInstance read_instance(std::istream& is) {
  std::string line;
  int lineno = 0;
  auto next = [&]() -> std::istringstream {
    while (std::getline(is, line)) {
      ++lineno;
      auto p = line.find_first_not_of(" \t\r");
      if (p != std::string::npos && line[p] != '#') return std::istringstream(line);
    }
    throw ParseError("unexpected end of instance", lineno);
  };
  auto head = next();
  std::string tag;
  long long n1 = 0, n2 = 0, n3 = 0, M = 0;
  if (!(head >> tag >> n1 >> n2 >> n3 >> M) || tag != "minplus")
    throw ParseError("expected `minplus n1 n2 n3 M`", lineno);
  if (n1 <= 0 || n2 <= 0 || n3 <= 0) throw ParseError("dimensions must be positive", lineno);
  MinPlusInstance inst{DistMatrix(n1, n2), DistMatrix(n2, n3), M};
  auto rows = [&](DistMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
      auto ls = next();
      std::string tok;
      std::size_t j = 0;
      while (ls >> tok) {
        if (j == m.cols()) throw ParseError("too many entries in row", lineno);
        m(i, j++) = parse_dist_token(tok, lineno);
      }
      if (j != m.cols()) throw ParseError("too few entries in row", lineno);
    }
  };
  rows(inst.A);
  rows(inst.B);
  validate_instance(inst);
  return inst;
}

MinPlusInstance load_instance(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidArgument("cannot open " + path);
  return read_instance(f);
}

void write_instance(std::ostream& os, const MinPlusInstance& inst) {
  os << "minplus " << inst.n1() << ' ' << inst.n2() << ' ' << inst.n3() << ' ' << inst.M << '\n';
  for (const DistMatrix* m : {&inst.A, &inst.B})
    for (std::size_t i = 0; i < m->rows(); ++i) {
      for (std::size_t j = 0; j < m->cols(); ++j) os << (j ? " " : "") << dist_token((*m)(i, j));
      os << '\n';
    }
}

void save_instance(const MinPlusInstance& inst, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw InvalidArgument("cannot write " + path);
  write_instance(f, inst);
}

DistMatrix brute_minplus(const MinPlusInstance& inst) {
  DistMatrix c(inst.n1(), inst.n3(), kInf);
  for (std::size_t i = 0; i < inst.n1(); ++i)
    for (std::size_t k = 0; k < inst.n2(); ++k)
      for (std::size_t j = 0; j < inst.n3(); ++j)
        c(i, j) = std::min(c(i, j), add_sat(inst.A(i, k), inst.B(k, j)));
  return c;
}

Dist DecodeMap::apply(Dist dist) const {
  if (dist == kInf) return kInf;
  const Dist x = scale * dist + offset;
  if (divisor == 1) return x;
  // nearest integer, halves away from zero
  const Dist q = (2 * std::abs(x) + divisor) / (2 * divisor);
  return x < 0 ? -q : q;
}

namespace {

// rows, columns and one spine of 2M+1 vertices per inner index; x_{p,t} sits
// t steps before the spine midpoint and y_{p,t} t steps after it
struct Layout {
  int n1, n3, n2, span;
  int row(int i) const { return i; }
  int col(int j) const { return n1 + j; }
  int base(int p) const { return n1 + n3 + p * (2 * span + 1); }
  int x(int p, Dist t) const { return base(p) + span - int(t); }
  int y(int p, Dist t) const { return base(p) + span + int(t); }
  int total() const { return n1 + n3 + n2 * (2 * span + 1); }
};

Layout layout_of(const MinPlusInstance& inst) {
  return {int(inst.n1()), int(inst.n3()), int(inst.n2()), int(inst.M)};
}

void fill_ids(const Layout& L, GadgetGraph& gg) {
  for (int i = 0; i < L.n1; ++i) gg.decode.rows.push_back(L.row(i));
  for (int j = 0; j < L.n3; ++j) gg.decode.cols.push_back(L.col(j));
  for (int p = 0; p < L.n2; ++p) {
    std::vector<int> s;
    for (int v = 0; v <= 2 * L.span; ++v) s.push_back(L.base(p) + v);
    gg.spine.push_back(std::move(s));
  }
}

// the shared two-sided construction with chosen edge kinds
GadgetGraph spine_gadget(const MinPlusInstance& inst, bool directed, Dist spine_w, Color spine_c,
                         Dist link_w, Color link_c) {
  validate_instance(inst);
  const Layout L = layout_of(inst);
  GadgetGraph gg;
  gg.graph = Graph(L.total(), directed);
  Graph& g = gg.graph;
  g.has_colors = spine_c != Color::none;
  for (int p = 0; p < L.n2; ++p)
    for (int v = 0; v < 2 * L.span; ++v) g.add_edge(L.base(p) + v, L.base(p) + v + 1, spine_w, 0, spine_c);
  for (int i = 0; i < L.n1; ++i)
    for (int p = 0; p < L.n2; ++p)
      if (inst.A(i, p) != kInf) g.add_edge(L.row(i), L.x(p, inst.A(i, p)), link_w, 0, link_c);
  for (int p = 0; p < L.n2; ++p)
    for (int j = 0; j < L.n3; ++j)
      if (inst.B(p, j) != kInf) g.add_edge(L.y(p, inst.B(p, j)), L.col(j), link_w, 0, link_c);
  fill_ids(L, gg);
  return gg;
}

}  // namespace

GadgetGraph encode_minplus_as_uapsp(const MinPlusInstance& inst) {
  GadgetGraph gg = spine_gadget(inst, true, 1, Color::none, 1, Color::none);
  gg.decode.gadget = "uapsp";
  gg.decode.offset = -2;
  return gg;
}

GadgetGraph encode_minplus_as_dag_aplp(const MinPlusInstance& inst) {
  validate_instance(inst);
  MinPlusInstance comp = inst;
  for (DistMatrix* m : {&comp.A, &comp.B})
    for (std::size_t e = 0; e < m->storage().size(); ++e) {
      Dist& x = m->data()[e];
      if (x != kInf) x = inst.M + 1 - x;
    }
  GadgetGraph gg = spine_gadget(comp, true, 1, Color::none, 1, Color::none);
  gg.decode.gadget = "dag_aplp";
  gg.decode.scale = -1;
  gg.decode.offset = 4 + 2 * inst.M;
  return gg;
}

GadgetGraph encode_minplus_as_2red(const MinPlusInstance& inst, int budget) {
  if (budget < 2) throw ValidationError("2red gadget: budget must be >= 2");
  GadgetGraph gg = spine_gadget(inst, false, 1, Color::blue, 1, Color::red);
  gg.decode.gadget = "2red";
  gg.decode.budget = budget;
  gg.decode.offset = -budget;
  if (budget > 2) {
    const int extra = budget - 2, n0 = gg.graph.n();
    const auto& old = gg.graph;
    Graph g(n0 + int(inst.n1()) * extra, false);
    g.has_colors = true;
    for (const Edge& e : old.edges()) g.add_edge(e.u, e.v, e.w1, e.w2, e.color);
    for (std::size_t i = 0; i < inst.n1(); ++i) {
      int prev = gg.decode.rows[i];
      for (int s = 0; s < extra; ++s) {
        int v = n0 + int(i) * extra + s;
        g.add_edge(prev, v, 1, 0, Color::red);
        prev = v;
      }
      gg.decode.rows[i] = prev;
    }
    gg.graph = std::move(g);
  }
  return gg;
}

GadgetGraph encode_minplus_as_aplsp01(const MinPlusInstance& inst) {
  GadgetGraph gg = spine_gadget(inst, false, 0, Color::blue, 1, Color::red);
  gg.decode.gadget = "aplsp01";
  gg.decode.secondary = true;
  gg.decode.offset = -2;
  return gg;
}

GadgetGraph encode_minplus_as_vertex_weighted(const MinPlusInstance& inst) {
  GadgetGraph gg = spine_gadget(inst, false, 1, Color::none, 1, Color::none);
  Graph& g = gg.graph;
  g.has_vweights = true;
  g.vweights.assign(g.n(), 1);
  for (int v : gg.decode.rows) g.vweights[v] = 2 * inst.M;
  for (int v : gg.decode.cols) g.vweights[v] = 2 * inst.M;
  gg.decode.gadget = "vertex_weighted";
  gg.decode.offset = -(4 * inst.M + 1);
  return gg;
}

GadgetGraph encode_minplus_additive_lb(const MinPlusInstance& inst, const ErrorProfile& f, Dist ell,
                                       bool relaxed) {
  validate_instance(inst);
  if (ell < 3) throw ValidationError("additive gadget: ell must be >= 3");
  const double fl = f(ell);
  if (6.0 * fl > double(ell))
    throw ValidationError("additive gadget: 6 f(ell) exceeds ell, spines would degenerate");
  const Dist step = std::max<Dist>(1, static_cast<Dist>(std::ceil(6.0 * fl - 1e-9)));
  if (!relaxed) {
    const double bound = double(ell) / (12.0 * fl);
    for (const DistMatrix* m : {&inst.A, &inst.B})
      for (Dist x : m->storage())
        if (x != kInf && double(x) > bound)
          throw ValidationError("additive gadget: entry " + std::to_string(x) +
                                " exceeds ell / (12 f(ell))");
  } else if (2.0 * f(ell + 2 * inst.M * step) >= double(step)) {
    throw ValidationError("additive gadget: decode window is ambiguous for this ell and profile");
  }
  const int n1 = int(inst.n1()), n2 = int(inst.n2()), n3 = int(inst.n3());
  const Dist M = inst.M;
  const Dist per_spine = 2 * M * step + (ell - 2) + 1;
  GadgetGraph gg;
  gg.graph = Graph(n1 + n3 + int(n2 * per_spine), true);
  Graph& g = gg.graph;
  for (int i = 0; i < n1; ++i) gg.decode.rows.push_back(i);
  for (int j = 0; j < n3; ++j) gg.decode.cols.push_back(n1 + j);
  for (int p = 0; p < n2; ++p) {
    const int base = n1 + n3 + int(p * per_spine);
    std::vector<int> s;
    for (int v = 0; v < per_spine; ++v) {
      s.push_back(base + v);
      if (v + 1 < per_spine) g.add_edge(base + v, base + v + 1);
    }
    gg.spine.push_back(std::move(s));
    // x_{p,t} is t steps before x_{p,0}; y_{p,t} t steps after y_{p,0}
    const int x0 = base + int(M * step), y0 = x0 + int(ell - 2);
    for (int i = 0; i < n1; ++i)
      if (inst.A(i, p) != kInf) g.add_edge(i, x0 - int(inst.A(i, p) * step));
    for (int j = 0; j < n3; ++j)
      if (inst.B(p, j) != kInf) g.add_edge(y0 + int(inst.B(p, j) * step), n1 + j);
  }
  gg.decode.gadget = "additive_lb";
  gg.decode.offset = -ell;
  gg.decode.divisor = step;
  return gg;
}

DistMatrix decode_distances(const DecodeMap& map, const DistMatrix& dist) {
  DistMatrix out(map.rows.size(), map.cols.size(), kInf);
  for (std::size_t i = 0; i < map.rows.size(); ++i)
    for (std::size_t j = 0; j < map.cols.size(); ++j)
      out(i, j) = map.apply(dist(map.rows[i], map.cols[j]));
  return out;
}

DistMatrix decode_lex(const DecodeMap& map, const Lex2Matrix& dist) {
  return decode_distances(map, map.secondary ? dist.d2 : dist.d1);
}

void write_decode_map(std::ostream& os, const DecodeMap& m) {
  os << "decode " << m.gadget << '\n'
     << "offset " << m.offset << '\n'
     << "scale " << m.scale << '\n'
     << "divisor " << m.divisor << '\n'
     << "component " << (m.secondary ? "secondary" : "primary") << '\n'
     << "budget " << m.budget << '\n';
  os << "rows " << m.rows.size();
  for (int v : m.rows) os << ' ' << v;
  os << "\ncols " << m.cols.size();
  for (int v : m.cols) os << ' ' << v;
  os << '\n';
}

DecodeMap read_decode_map(std::istream& is) {
  DecodeMap m;
  std::string line, key;
  int lineno = 0;
  bool header = false;
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ls(line);
    if (!(ls >> key) || key[0] == '#') continue;
    bool ok = true;
    if (key == "decode") {
      ok = bool(ls >> m.gadget);
      header = true;
    } else if (key == "offset") ok = bool(ls >> m.offset);
    else if (key == "scale") ok = bool(ls >> m.scale);
    else if (key == "divisor") ok = bool(ls >> m.divisor) && m.divisor >= 1;
    else if (key == "budget") ok = bool(ls >> m.budget);
    else if (key == "component") {
      std::string c;
      ok = bool(ls >> c) && (c == "primary" || c == "secondary");
      m.secondary = c == "secondary";
    } else if (key == "rows" || key == "cols") {
      std::size_t k = 0;
      ok = bool(ls >> k);
      auto& dst = key == "rows" ? m.rows : m.cols;
      dst.assign(k, 0);
      for (std::size_t q = 0; ok && q < k; ++q) ok = bool(ls >> dst[q]);
    } else {
      throw ParseError("unknown decode-map key '" + key + "'", lineno);
    }
    if (!ok) throw ParseError("bad value for '" + key + "'", lineno);
  }
  if (!header) throw ParseError("missing `decode` header", lineno);
  return m;
}

DistMatrix dag_longest_paths(const Graph& g) {
  const int n = g.n();
  std::vector<int> indeg(n, 0), order;
  for (int u = 0; u < n; ++u)
    for (const Arc* a = g.out_begin(u); a != g.out_end(u); ++a) ++indeg[a->to];
  if (!g.directed() && g.m()) throw ValidationError("dag_longest_paths: graph must be directed");
  for (int u = 0; u < n; ++u)
    if (!indeg[u]) order.push_back(u);
  for (std::size_t q = 0; q < order.size(); ++q)
    for (const Arc* a = g.out_begin(order[q]); a != g.out_end(order[q]); ++a)
      if (--indeg[a->to] == 0) order.push_back(a->to);
  if (int(order.size()) != n) throw ValidationError("dag_longest_paths: graph has a cycle");
  constexpr Dist kNone = std::numeric_limits<Dist>::min();
  DistMatrix out(n, n, kInf);
  std::vector<Dist> best(n);
  for (int s = 0; s < n; ++s) {
    std::fill(best.begin(), best.end(), kNone);
    best[s] = 0;
    for (int u : order) {
      if (best[u] == kNone) continue;
      for (const Arc* a = g.out_begin(u); a != g.out_end(u); ++a)
        best[a->to] = std::max(best[a->to], best[u] + a->w1);
    }
    for (int v = 0; v < n; ++v)
      if (best[v] != kNone) out(s, v) = best[v];
  }
  return out;
}

DistMatrix vertex_weighted_apsp(const Graph& g) {
  const int n = g.n();
  if (!g.has_vweights || int(g.vweights.size()) != n)
    throw ValidationError("vertex_weighted_apsp: graph has no vertex weights");
  for (Dist w : g.vweights)
    if (w < 0) throw ValidationError("vertex_weighted_apsp: vertex weights must be >= 0");
  Graph h(n, true);
  for (const Edge& e : g.edges()) {
    h.add_edge(e.u, e.v, g.vweights[e.v]);
    if (!g.directed()) h.add_edge(e.v, e.u, g.vweights[e.u]);
  }
  DistMatrix d = dijkstra_apsp(h);
  for (int s = 0; s < n; ++s)
    for (int v = 0; v < n; ++v)
      if (d(s, v) != kInf) d(s, v) += g.vweights[s];
  return d;
}

MinWitnessEncoding encode_minplus_as_minwitness_eq(const MinPlusInstance& inst) {
  validate_instance(inst);
  MinWitnessEncoding enc;
  enc.n1 = inst.n1();
  enc.n2 = inst.n2();
  enc.n3 = inst.n3();
  enc.M = inst.M;
  const std::size_t inner = std::size_t(2 * inst.M) * enc.n2;
  const std::size_t N = std::max({enc.n1, enc.n3, inner});
  // padding and missing entries use two distinct sentinels that never meet
  enc.A = DistMatrix(N, N, kInf);
  enc.B = DistMatrix(N, N, kInf - 1);
  for (Dist v = 1; v <= 2 * inst.M; ++v)
    for (std::size_t k = 0; k < enc.n2; ++k) {
      const std::size_t c = std::size_t(v - 1) * enc.n2 + k;
      for (std::size_t i = 0; i < enc.n1; ++i) enc.A(i, c) = inst.A(i, k);
      for (std::size_t j = 0; j < enc.n3; ++j)
        if (inst.B(k, j) != kInf) enc.B(c, j) = v - inst.B(k, j);
    }
  return enc;
}

DistMatrix MinWitnessEncoding::decode(const IndexMatrix& w) const {
  DistMatrix out(n1, n3, kInf);
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n3; ++j)
      if (w(i, j) >= 0) out(i, j) = Dist(w(i, j)) / Dist(n2) + 1;
  return out;
}

IndexMatrix brute_minwitness_eq(const DistMatrix& a, const DistMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidArgument("brute_minwitness_eq: dimension mismatch");
  IndexMatrix w(a.rows(), b.cols(), -1);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      for (std::size_t k = 0; k < a.cols(); ++k)
        if (a(i, k) == b(k, j)) {
          w(i, j) = std::int32_t(k);
          break;
        }
  return w;
}

CountingTarget default_counting_target(CountMode mode, std::uint64_t U, const CountOptions& opt) {
  CountingTarget t;
  t.mode = mode;
  t.U = U;
  if (mode == CountMode::mod)
    t.solve = [U, opt](const Graph& g) { return count_mod_directed(g, U, opt).C; };
  else if (mode == CountMode::capped)
    t.solve = [U, opt](const Graph& g) { return count_capped_directed(g, U, opt).C; };
  else
    throw InvalidArgument("counting target must be mod or capped");
  return t;
}

DistMatrix unique_minplus_via_counting(const MinPlusInstance& inst, const CountingTarget& target,
                                       const UniqueMinPlusOptions& opt, UniqueMinPlusStats* stats) {
  validate_instance(inst);
  if (target.U < 2) throw ValidationError("counting target U must be >= 2");
  if (target.mode != CountMode::mod && target.mode != CountMode::capped)
    throw InvalidArgument("counting target must be mod or capped");
  if (!target.solve) throw InvalidArgument("counting target has no solver");
  const std::size_t n1 = inst.n1(), n2 = inst.n2(), n3 = inst.n3();
  auto ring = [&](std::uint64_t x) { return target.mode == CountMode::mod ? x % target.U : std::min(x, target.U); };
  const std::uint64_t one = ring(1), two = ring(2);

  UniqueMinPlusStats st;
  st.seed = opt.seed;
  int bits_total = 0;
  while ((std::size_t(1) << bits_total) < n2) ++bits_total;
  st.stages = bits_total + 1;
  st.rounds_per_stage =
      opt.rounds > 0 ? opt.rounds
                     : int(std::ceil(opt.rounds_c * std::log2(double(n1 * n2 * n3) + 2.0)));
  std::mt19937_64 rng(opt.seed);
  DistMatrix best(n1, n3, kInf);
  Matrix<char> resolved(n1, n3, 0);

  // counts between row i and column j over the listed inner indices
  auto probe = [&](const std::vector<int>& cols) {
    MinPlusInstance sub{DistMatrix(n1, cols.size()), DistMatrix(cols.size(), n3), inst.M};
    for (std::size_t c = 0; c < cols.size(); ++c) {
      for (std::size_t i = 0; i < n1; ++i) sub.A(i, c) = inst.A(i, cols[c]);
      for (std::size_t j = 0; j < n3; ++j) sub.B(c, j) = inst.B(cols[c], j);
    }
    GadgetGraph gg = encode_minplus_as_uapsp(sub);
    Matrix<std::uint64_t> all = target.solve(gg.graph);
    ++st.solver_calls;
    Matrix<std::uint64_t> out(n1, n3, 0);
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t j = 0; j < n3; ++j) out(i, j) = all(gg.decode.rows[i], gg.decode.cols[j]);
    return out;
  };

  for (int t = 0; t <= bits_total; ++t) {
    // with every index kept the probes are deterministic, so one round suffices
    const int rounds = t == 0 ? 1 : st.rounds_per_stage;
    std::size_t isolated = 0;
    std::bernoulli_distribution keep(std::ldexp(1.0, -t));
    for (int r = 0; r < rounds; ++r) {
      std::vector<int> kept;
      for (std::size_t k = 0; k < n2; ++k)
        if (t == 0 || keep(rng)) kept.push_back(int(k));
      if (kept.empty()) continue;
      const auto base = probe(kept);
      int bits = 0;
      while ((std::size_t(1) << bits) < kept.size()) ++bits;
      std::vector<Matrix<std::uint64_t>> bit(bits);
      for (int b = 0; b < bits; ++b) {
        std::vector<int> cols;
        for (std::size_t q = 0; q < kept.size(); ++q) {
          cols.push_back(kept[q]);
          if ((q >> b) & 1) cols.push_back(kept[q]);
        }
        bit[b] = probe(cols);
      }
      for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n3; ++j) {
          if (base(i, j) != one) continue;
          std::size_t idx = 0;
          for (int b = 0; b < bits; ++b)
            if (bit[b](i, j) == two) idx |= std::size_t(1) << b;
          if (idx >= kept.size()) continue;
          const int k = kept[idx];
          const Dist v = add_sat(inst.A(i, k), inst.B(k, j));
          if (v == kInf) continue;
          best(i, j) = std::min(best(i, j), v);
          resolved(i, j) = 1;
          ++isolated;
        }
    }
    st.isolated_per_stage.push_back(isolated);
  }
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n3; ++j) {
      if (resolved(i, j)) continue;
      for (std::size_t k = 0; k < n2; ++k)
        if (inst.A(i, k) != kInf && inst.B(k, j) != kInf) {
          ++st.unresolved;
          break;
        }
    }
  if (stats) *stats = st;
  if (st.unresolved)
    throw ProbabilisticFailure("unique_minplus_via_counting: " + std::to_string(st.unresolved) +
                               " cells never isolated a witness");
  return best;
}

}  // namespace apspkit
