#include "bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include <json.hpp>

#include "apspkit/apsp_exact.hpp"
#include "apspkit/counting.hpp"
#include "apspkit/minplus.hpp"
#include "apspkit/oracles.hpp"
#include "generators.hpp"

namespace apspkit::bench {

const std::vector<std::string>& suites() {
  static const std::vector<std::string> s{"minplus-brute", "minplus-blocked", "minplus-scaled",
                                          "apsp-brute",    "seidel",          "zwick",
                                          "count-exact"};
  return s;
}

namespace {

DistMatrix random_matrix(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<Dist> e(0, 100);
  DistMatrix m(n, n);
  for (Dist* p = m.data(), *q = p + std::size_t(n) * n; p != q; ++p) *p = e(rng);
  return m;
}

}  // namespace

double run_once(const std::string& suite, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  using clock = std::chrono::steady_clock;
  auto time = [](auto&& f) {
    auto t0 = clock::now();
    f();
    return std::chrono::duration<double>(clock::now() - t0).count();
  };
  if (suite.rfind("minplus-", 0) == 0) {
    ProductEngine e;
    e.kind = parse_engine(suite.substr(8));
    DistMatrix a = random_matrix(n, rng), b = random_matrix(n, rng);
    return time([&] { minplus(a, b, e); });
  }
  if (suite == "apsp-brute") {
    Graph g = gen::random_undirected(n, -1, seed);
    return time([&] { floyd_warshall(g); });
  }
  if (suite == "seidel") {
    Graph g = gen::random_undirected(n, -1, seed);
    return time([&] { seidel_apsp(g); });
  }
  if (suite == "zwick") {
    Graph g = gen::random_digraph(n, -1, seed);
    return time([&] { zwick_apsp(g); });
  }
  if (suite == "count-exact") {
    Graph g = gen::random_digraph(n, -1, seed);
    return time([&] { count_exact(g); });
  }
  throw InvalidArgument("unknown bench suite '" + suite + "'");
}

void fit_loglog(const std::vector<double>& x, const std::vector<double>& y, double& slope,
                double& intercept) {
  const std::size_t k = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < k; ++i) {
    double lx = std::log(x[i]), ly = std::log(std::max(y[i], 1e-9));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double den = k * sxx - sx * sx;
  slope = den == 0 ? 0.0 : (k * sxy - sx * sy) / den;
  intercept = (sy - slope * sx) / double(k);
}

Report run(const std::string& suite, const std::vector<int>& sizes, int repetitions,
           std::uint64_t seed, CostModel& cm) {
  if (std::find(suites().begin(), suites().end(), suite) == suites().end())
    throw InvalidArgument("unknown bench suite '" + suite + "'");
  if (sizes.size() < 3) throw InvalidArgument("bench needs at least three sizes for a fit");
  if (repetitions < 1) throw InvalidArgument("repetitions must be >= 1");
  Report r;
  r.suite = suite;
  r.sizes = sizes;
  r.repetitions = repetitions;
  std::vector<double> xs;
  for (int n : sizes) {
    if (n < 2) throw InvalidArgument("bench sizes must be >= 2");
    std::vector<double> t;
    for (int rep = 0; rep < repetitions; ++rep) t.push_back(run_once(suite, n, seed + rep));
    std::sort(t.begin(), t.end());
    r.median_seconds.push_back(t[t.size() / 2]);
    xs.push_back(n);
  }
  fit_loglog(xs, r.median_seconds, r.slope, r.intercept);
  cm.reported_exponent = r.slope;
  return r;
}

std::string Report::to_json() const {
  nlohmann::json j;
  j["suite"] = suite;
  j["sizes"] = sizes;
  j["median_seconds"] = median_seconds;
  j["repetitions"] = repetitions;
  j["slope"] = slope;
  j["intercept"] = intercept;
  return j.dump();
}

}  // namespace apspkit::bench
