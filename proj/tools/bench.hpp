#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "apspkit/matrix.hpp"

namespace apspkit::bench {

struct Report {
  std::string suite;
  std::vector<int> sizes;
  std::vector<double> median_seconds;
  int repetitions = 0;
  double slope = 0.0, intercept = 0.0;  // log(time) = slope log(n) + intercept
  std::string to_json() const;
};

const std::vector<std::string>& suites();
// seconds for one run of `suite` at size n
double run_once(const std::string& suite, int n, std::uint64_t seed);
// least-squares line through (log x, log y)
void fit_loglog(const std::vector<double>& x, const std::vector<double>& y, double& slope,
                double& intercept);
// medians per size and the fitted exponent, which is stored into `cm`;
// throws InvalidArgument with fewer than three sizes or an unknown suite
Report run(const std::string& suite, const std::vector<int>& sizes, int repetitions,
           std::uint64_t seed, CostModel& cm);

}  // namespace apspkit::bench
