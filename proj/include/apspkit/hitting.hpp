#pragma once

#include <cstdint>
#include <vector>

#include "apspkit/graph.hpp"

namespace apspkit {

// integer stage lengths 1, 2, 3, 4, 6, 9, 13, ... : s' = max(s+1, floor(3s/2)),
// continued until a value >= top appears
std::vector<Dist> level_sequence(Dist top);
// the member of level_sequence closest to x from above
Dist level_at_least(Dist x);

// stage k (length s_k) bridges through a set that must meet every run of
// this many consecutive vertices on a min-hop shortest path of length >= s_{k-1}
Dist hitting_window(Dist s_prev, Dist s_k);

// seeded derivation for retries: attempt 0 returns seed itself
std::uint64_t derive_seed(std::uint64_t seed, int attempt);

struct HittingSet {
  Dist level;
  std::vector<int> members;  // sorted
  std::uint64_t seed;
};

// nested samples: every level's set is a prefix of one seeded permutation,
// so larger levels get subsets of smaller ones
class HittingFamily {
 public:
  HittingFamily(int n, std::uint64_t seed, double c = 4.0);
  // min(n, ceil(c n ceil(log2 n) / ell)); n when ell <= 1, 0 when ell >= 2n
  std::size_t size_at(Dist ell) const;
  std::vector<int> at(Dist ell) const;
  HittingSet set_at(Dist ell) const { return {ell, at(ell), seed_}; }
  std::uint64_t seed() const { return seed_; }
  double constant() const { return c_; }
  int n() const { return n_; }

 private:
  int n_;
  std::uint64_t seed_;
  double c_;
  std::vector<int> perm_;
};

std::vector<HittingSet> sample_hitting_sets(const Graph& g, std::uint64_t seed, double c = 4.0);

// checks that the set at each level s_k meets every window of
// hitting_window(s_{k-1}, s_k) vertices along one min-hop shortest path per
// ordered pair (taken from a Dijkstra tree keyed by (distance, hops))
bool verify_hitting(const Graph& g, const HittingFamily& fam, const std::vector<Dist>& levels);

// sample, verify, and resample with derived seeds; throws SamplingFailure
HittingFamily sample_verified(const Graph& g, std::uint64_t seed, double c = 4.0,
                              int retries = 16);

// gamma = num / den with den = n, num in [n, 2n]
struct GammaScale {
  std::int64_t num = 1, den = 1;
  int window = 0;                       // the +-O(1) band width
  std::vector<std::size_t> level_counts;  // pairs hit at level i
  std::vector<double> level_bounds;
  // floor(gamma * x)
  Dist scaled(Dist x) const { return static_cast<Dist>((static_cast<__int128>(num) * x) / den); }
};

// first gamma in {1, 1+1/n, ..., 2} for which, at each level i with 2^i <=
// the largest distance, at most c (n^2/2^i) log2(n)^2 pairs have d1 within
// `window` of some floor(gamma j 2^i), j >= 1
GammaScale select_gamma(const DistMatrix& d1, int n, int window, double c = 1.0);
// the same count, recomputed directly for one gamma and level
std::size_t gamma_level_count(const DistMatrix& d1, const GammaScale& g, int level);

}  // namespace apspkit
