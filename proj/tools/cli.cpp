// command-line driver: apsp, approx, lex2, count, bc, cred, reduce, decode, gen, bench

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "apspkit/approx.hpp"
#include "apspkit/apsp_exact.hpp"
#include "apspkit/counting.hpp"
#include "apspkit/lex2.hpp"
#include "apspkit/oracles.hpp"
#include "apspkit/reductions.hpp"
#include "bench.hpp"
#include "generators.hpp"

using namespace apspkit;
using json = nlohmann::json;

namespace {

struct Common {
  std::string algo = "auto";
  std::string engine = "blocked";
  std::uint64_t seed = 1;
  std::string out;
  bool json = false;
  int workers = 0;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--algo", c.algo, "algorithm");
  app->add_option("--engine", c.engine, "product engine: brute, blocked, scaled, auto");
  app->add_option("--seed", c.seed, "seed for randomized steps");
  app->add_option("--out", c.out, "output file (default stdout)");
  app->add_flag("--json", c.json, "emit a structured result document");
  app->add_option("--workers", c.workers, "worker threads (results do not depend on it)");
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex(std::uint64_t x) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << x;
  return os.str();
}

// writes the text body to --out or stdout; with --json a single-line document
// carries the metadata and, without --out, the body itself
void emit(const Common& c, const std::string& algorithm, const std::string& body, double seconds,
          json extra = json::object()) {
  if (!c.out.empty()) {
    std::ofstream f(c.out);
    if (!f) throw InvalidArgument("cannot write " + c.out);
    f << body;
  }
  if (c.json) {
    json j = std::move(extra);
    j["algorithm"] = algorithm;
    j["seed"] = c.seed;
    j["wall_seconds"] = seconds;
    j["checksum"] = hex(fnv1a(body));
    if (c.out.empty()) j["output"] = body;
    else j["out"] = c.out;
    std::cout << j.dump() << '\n';
  } else if (c.out.empty()) {
    std::cout << body;
  }
}

std::string matrix_text(const DistMatrix& m) {
  std::ostringstream os;
  write_matrix(os, m);
  return os.str();
}

template <class T, class F>
std::string table_text(const char* tag, const Matrix<T>& m, F&& fmt) {
  std::ostringstream os;
  os << tag << ' ' << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << fmt(m(i, j));
    os << '\n';
  }
  return os.str();
}

ProductEngine engine_of(const Common& c) {
  ProductEngine e;
  e.kind = parse_engine(c.engine);
  return e;
}

SampleOptions sample_of(const Common& c) {
  SampleOptions s;
  s.seed = c.seed;
  return s;
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// every matrix block in a file, in order
std::vector<DistMatrix> read_matrices(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidArgument("cannot open " + path);
  std::vector<DistMatrix> out;
  std::string all((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  std::size_t pos = 0;
  while ((pos = all.find("matrix", pos)) != std::string::npos) {
    std::istringstream is(all.substr(pos));
    out.push_back(read_matrix(is));
    pos += 6;
  }
  if (out.empty()) throw ParseError("no matrix found in " + path, 1);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"all-pairs shortest path toolkit"};
  app.require_subcommand(1);
  Common c;
  std::string input, map_path;
  double p = 0.5;
  std::uint64_t cap = 0, mod = 0, U = 100;
  int budget = 2, vertex = -1, refine = 0;
  bool unordered = false, relaxed = false;
  std::string mode = "exact", gadget = "uapsp", kind, suite, sizes_s = "64,128,256";
  Dist ell = 0;
  int reps = 3;
  gen::Params gp;
  std::vector<int> path_uv, dims;

  auto* apsp = app.add_subcommand("apsp", "exact all-pairs distances");
  auto* approx = app.add_subcommand("approx", "additive approximation");
  auto* lex = app.add_subcommand("lex2", "lexicographic two-weight distances");
  auto* count = app.add_subcommand("count", "shortest path counts");
  auto* bc = app.add_subcommand("bc", "betweenness centrality");
  auto* cred = app.add_subcommand("cred", "distances with a red-edge budget");
  auto* reduce = app.add_subcommand("reduce", "encode a min-plus instance as a gadget graph");
  auto* decode = app.add_subcommand("decode", "decode a gadget solution");
  auto* gen_cmd = app.add_subcommand("gen", "generate an instance");
  auto* bench_cmd = app.add_subcommand("bench", "timing with a log-log fit");
  for (auto* s : {apsp, approx, lex, count, bc, cred, reduce, decode, gen_cmd, bench_cmd}) add_common(s, c);
  for (auto* s : {apsp, approx, lex, count, bc, cred, reduce})
    s->add_option("input", input, "graph or instance file")->required();

  approx->add_option("--p", p, "error exponent in [0, 1]");
  approx->add_option("--refine", refine, "halve the rounding granularity this many times");
  approx->add_option("--path", path_uv, "print one path: --path u v")->expected(2);
  count->add_option("--mode", mode, "exact, capped, mod, approx");
  count->add_option("--cap", cap, "cap U");
  count->add_option("--mod", mod, "modulus U");
  count->add_option("--U", U, "approximation parameter");
  bc->add_option("--mode", mode, "exact or approx");
  bc->add_option("--U", U, "approximation parameter");
  bc->add_option("--vertex", vertex, "single vertex (default: all)");
  bc->add_flag("--unordered", unordered, "halve values on undirected graphs");
  cred->add_option("--budget", budget, "red-edge budget c");
  reduce->add_option("--gadget", gadget, "uapsp, dag_aplp, 2red, aplsp01, vertex_weighted, additive_lb");
  reduce->add_option("--budget", budget, "red budget for 2red");
  reduce->add_option("--p", p, "error exponent for additive_lb");
  reduce->add_option("--ell", ell, "path length ell for additive_lb");
  reduce->add_flag("--relaxed", relaxed, "additive_lb: only require an unambiguous decode window");
  decode->add_option("map", map_path, "decode map file")->required();
  decode->add_option("solution", input, "solver output (matrix text)")->required();
  gen_cmd->add_option("kind", kind, "instance kind")->required();
  gen_cmd->add_option("--n", gp.n, "vertices");
  gen_cmd->add_option("--p", gp.p, "edge probability");
  gen_cmd->add_option("--w1", gp.w1_hi, "max primary weight");
  gen_cmd->add_option("--w1min", gp.w1_lo, "min primary weight");
  gen_cmd->add_option("--w2", gp.w2_hi, "max secondary weight");
  gen_cmd->add_flag("--undirected", [&](int) { gp.directed = false; }, "undirected dual-weight/bigcount");
  gen_cmd->add_option("--red", gp.red_fraction, "red edge fraction");
  gen_cmd->add_option("--dims", dims, "minplus dimensions n1 n2 n3")->expected(3);
  gen_cmd->add_option("--M", gp.M, "minplus entry bound");
  bench_cmd->add_option("suite", suite, "suite name")->required();
  bench_cmd->add_option("--sizes", sizes_s, "comma-separated sizes");
  bench_cmd->add_option("--reps", reps, "repetitions per size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    const auto t0 = std::chrono::steady_clock::now();
    if (apsp->parsed()) {
      Graph g = load_graph(input);
      std::string a = c.algo;
      if (a == "auto") a = g.directed() ? "zwick" : (g.unweighted() ? "seidel" : "oracle");
      DistMatrix d;
      ZwickOptions zo{engine_of(c), sample_of(c), 0};
      if (a == "seidel") d = seidel_apsp(g);
      else if (a == "zwick") d = zwick_apsp(g.directed() ? g : as_directed(g), zo);
      else if (a == "small-weight") {
        SmallWeightOptions so;
        so.engine = engine_of(c);
        so.sample = sample_of(c);
        d = undirected_small_weight_apsp(g, so);
      } else if (a == "bfs") d = bfs_apsp(g);
      else if (a == "dijkstra") d = dijkstra_apsp(g);
      else if (a == "johnson") d = johnson_apsp(g);
      else if (a == "bellman-ford") d = bellman_ford_apsp(g);
      else if (a == "floyd") d = floyd_warshall(g);
      else if (a == "oracle") d = oracle_apsp(g);
      else if (a == "dag-longest") d = dag_longest_paths(g);
      else if (a == "vertex-weighted") d = vertex_weighted_apsp(g);
      else throw InvalidArgument("unknown apsp algorithm '" + a + "'");
      emit(c, a, matrix_text(d), since(t0));
    } else if (approx->parsed()) {
      Graph g = load_graph(input);
      ApproxOptions ao;
      ao.engine = engine_of(c);
      ao.sample = sample_of(c);
      ao.refine = refine;
      const ErrorProfile f = ErrorProfile::power(p);
      ApproxResult r = approx_apsp(g, f, ao);
      std::string body = matrix_text(r.estimate);
      if (path_uv.size() == 2) {
        std::ostringstream os;
        os << "path";
        for (int v : approx_path(g, r, path_uv[0], path_uv[1])) os << ' ' << v;
        body += os.str() + '\n';
      }
      emit(c, "approx", body, since(t0), {{"p", p}, {"K", r.cert.K}, {"seed_used", r.cert.seed_used}});
    } else if (lex->parsed()) {
      Graph g = load_graph(input);
      Lex2Options lo;
      lo.engine = engine_of(c);
      lo.sample = sample_of(c);
      std::string a = c.algo;
      Lex2Matrix m;
      if (a == "auto") m = lex2_solve(g, lo);
      else if (a == "directed") m = lex2_directed(g, lo);
      else if (a == "undirected") m = lex2_undirected_positive(g, lo);
      else if (a == "gamma") m = lex2_gamma(g, lo);
      else if (a == "aplsp") m = aplsp(g, lo);
      else if (a == "apslp") m = apslp(g, lo);
      else if (a == "oracle") m = lex_dijkstra_apsp(g);
      else throw InvalidArgument("unknown lex2 algorithm '" + a + "'");
      emit(c, "lex2-" + a, matrix_text(m.d1) + matrix_text(m.d2), since(t0));
    } else if (count->parsed()) {
      Graph g = load_graph(input);
      CountOptions co;
      co.engine = engine_of(c);
      co.sample = sample_of(c);
      co.workers = c.workers;
      std::string body, a;
      if (mode == "exact") {
        a = "count-exact";
        body = table_text("counts", count_exact(g, co).C, [](const BigInt& x) { return x.get_str(); });
      } else if (mode == "capped" || mode == "mod") {
        const std::uint64_t u = mode == "capped" ? (cap ? cap : U) : (mod ? mod : U);
        const CountMode cm = mode == "capped" ? CountMode::capped : CountMode::mod;
        CountMatrix r;
        a = c.algo;
        if (a == "auto") a = !g.directed() ? "seidel" : (cm == CountMode::capped ? "funny" : "slice");
        if (a == "seidel") r = count_undirected_seidel(g, cm, u);
        else if (a == "funny" && cm == CountMode::capped) r = count_capped_directed(g, u, co);
        else if (a == "slice" && cm == CountMode::mod) r = count_mod_directed(g, u, co);
        else throw InvalidArgument("algorithm '" + a + "' does not support mode " + mode);
        a = "count-" + mode + "-" + a;
        body = table_text("counts", r.C, [](std::uint64_t x) { return std::to_string(x); });
      } else if (mode == "approx") {
        a = "count-approx";
        body = table_text("counts", count_approx(g, U, co).C, [](const ApproxCount& x) { return x.str(); });
      } else {
        throw InvalidArgument("unknown count mode '" + mode + "'");
      }
      emit(c, a, body, since(t0));
    } else if (bc->parsed()) {
      Graph g = load_graph(input);
      CountOptions co;
      co.engine = engine_of(c);
      co.sample = sample_of(c);
      co.workers = c.workers;
      if (mode != "exact" && mode != "approx") throw InvalidArgument("bc mode must be exact or approx");
      const bool half = unordered && !g.directed();
      std::ostringstream os;
      std::vector<int> vs;
      if (vertex >= 0) vs.push_back(vertex);
      else
        for (int v = 0; v < g.n(); ++v) vs.push_back(v);
      if (mode == "exact") {
        CountResult r = count_exact(g, co);
        for (int v : vs) {
          Rational x = betweenness_from_counts(r, v);
          if (half) x /= 2;
          os << v << ' ' << x.get_str() << '\n';
        }
      } else {
        ApproxCounts r = count_approx(g, U, co);
        for (int v : vs) {
          double x = betweenness_from_counts(r, v);
          os << v << ' ' << (half ? x / 2 : x) << '\n';
        }
      }
      emit(c, "bc-" + mode, os.str(), since(t0));
    } else if (cred->parsed()) {
      Graph g = load_graph(input);
      std::string a = c.algo == "auto" ? "layered" : c.algo;
      DistMatrix d;
      ZwickOptions zo{engine_of(c), sample_of(c), 0};
      if (a == "layered") d = cred_apsp(g, budget, false, zo);
      else if (a == "bfs") d = cred_apsp(g, budget, true, zo);
      else if (a == "one-red") {
        if (budget != 1) throw InvalidArgument("one-red needs --budget 1");
        d = one_red_apsp(g);
      } else if (a == "oracle") d = budgeted_bfs_apsp(g, budget);
      else throw InvalidArgument("unknown cred algorithm '" + a + "'");
      emit(c, "cred-" + a, matrix_text(d), since(t0));
    } else if (reduce->parsed()) {
      MinPlusInstance inst = load_instance(input);
      GadgetGraph gg;
      if (gadget == "uapsp") gg = encode_minplus_as_uapsp(inst);
      else if (gadget == "dag_aplp") gg = encode_minplus_as_dag_aplp(inst);
      else if (gadget == "2red") gg = encode_minplus_as_2red(inst, budget);
      else if (gadget == "aplsp01") gg = encode_minplus_as_aplsp01(inst);
      else if (gadget == "vertex_weighted") gg = encode_minplus_as_vertex_weighted(inst);
      else if (gadget == "additive_lb") {
        if (ell <= 0) throw InvalidArgument("additive_lb needs --ell");
        gg = encode_minplus_additive_lb(inst, ErrorProfile::power(p), ell, relaxed);
      } else throw InvalidArgument("unknown gadget '" + gadget + "'");
      std::ostringstream gs, ms;
      write_graph(gs, gg.graph);
      write_decode_map(ms, gg.decode);
      if (!c.out.empty()) {
        std::ofstream mf(c.out + ".decode");
        if (!mf) throw InvalidArgument("cannot write " + c.out + ".decode");
        mf << ms.str();
      }
      emit(c, "reduce-" + gadget, c.out.empty() ? gs.str() + ms.str() : gs.str(), since(t0),
           {{"vertices", gg.graph.n()}, {"edges", gg.graph.m()}});
    } else if (decode->parsed()) {
      std::ifstream mf(map_path);
      if (!mf) throw InvalidArgument("cannot open " + map_path);
      DecodeMap m = read_decode_map(mf);
      auto ms = read_matrices(input);
      const DistMatrix& d = m.secondary && ms.size() >= 2 ? ms[1] : ms[0];
      emit(c, "decode-" + m.gadget, matrix_text(decode_distances(m, d)), since(t0));
    } else if (gen_cmd->parsed()) {
      gp.kind = kind;
      gp.seed = c.seed;
      if (dims.size() == 3) {
        gp.n1 = dims[0];
        gp.n2 = dims[1];
        gp.n3 = dims[2];
      }
      if (std::find(gen::kinds().begin(), gen::kinds().end(), kind) == gen::kinds().end())
        throw InvalidArgument("unknown instance kind '" + kind + "'");
      std::ostringstream os;
      if (kind == "minplus") write_instance(os, gen::random_instance(gp.n1, gp.n2, gp.n3, gp.M, gp.seed));
      else write_graph(os, gen::make_graph(gp));
      emit(c, "gen-" + kind, os.str(), since(t0));
    } else if (bench_cmd->parsed()) {
      std::vector<int> sizes;
      std::stringstream ss(sizes_s);
      for (std::string tok; std::getline(ss, tok, ',');) sizes.push_back(std::stoi(tok));
      auto r = bench::run(suite, sizes, reps, c.seed, default_cost_model());
      std::cout << r.to_json() << '\n';
    }
    return 0;
  } catch (const ProbabilisticFailure& e) {
    std::cerr << "probabilistic failure: " << e.what() << '\n';
    return 3;
  } catch (const SamplingFailure& e) {
    std::cerr << "probabilistic failure: " << e.what() << '\n';
    return 3;
  } catch (const InvalidArgument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
