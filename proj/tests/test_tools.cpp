#include <doctest.h>

#include <json.hpp>

#include "apspkit/matrix.hpp"
#include "bench.hpp"

using namespace apspkit;

TEST_CASE("log-log fit recovers a known exponent") {
  std::vector<double> x{10, 20, 40, 80}, y;
  for (double v : x) y.push_back(0.5 * v * v * v);
  double slope = 0, intercept = 0;
  bench::fit_loglog(x, y, slope, intercept);
  CHECK(slope == doctest::Approx(3.0));
  CHECK(std::exp(intercept) == doctest::Approx(0.5));
}

TEST_CASE("bench report serialises and records the exponent") {
  CostModel cm;
  const bench::Report r = bench::run("minplus-brute", {8, 16, 32}, 1, 1, cm);
  CHECK(r.sizes.size() == 3);
  CHECK(cm.reported_exponent == r.slope);
  const auto j = nlohmann::json::parse(r.to_json());
  CHECK(j["suite"] == "minplus-brute");
  CHECK(j["sizes"].size() == 3);
  CHECK_THROWS_AS(bench::run("minplus-brute", {8, 16}, 1, 1, cm), InvalidArgument);
  CHECK_THROWS_AS(bench::run("nope", {8, 16, 32}, 1, 1, cm), InvalidArgument);
}
