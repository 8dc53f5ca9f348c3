#pragma once

// per-source vertex lists grouped by exact distance

#include <algorithm>
#include <utility>
#include <vector>

#include "apspkit/matrix.hpp"

namespace apspkit::detail {

struct DistanceBuckets {
  std::vector<std::vector<int>> order;     // per source, vertices sorted by d1
  std::vector<std::vector<std::size_t>> start;  // per source, offsets per value
  Dist maxd = 0;

  DistanceBuckets(const DistMatrix& d1) {
    const int n = static_cast<int>(d1.rows());
    for (Dist x : d1.storage())
      if (x != kInf) maxd = std::max(maxd, x);
    order.assign(n, {});
    start.assign(n, std::vector<std::size_t>(maxd + 2, 0));
    for (int u = 0; u < n; ++u) {
      auto& o = order[u];
      for (int v = 0; v < n; ++v)
        if (d1(u, v) != kInf) o.push_back(v);
      std::stable_sort(o.begin(), o.end(), [&](int a, int b) { return d1(u, a) < d1(u, b); });
      auto& s = start[u];
      std::size_t p = 0;
      for (Dist val = 0; val <= maxd + 1; ++val) {
        while (p < o.size() && d1(u, o[p]) < val) ++p;
        s[val] = p;
      }
    }
  }
  // vertices at distance exactly `val` from u
  std::pair<const int*, const int*> at(int u, Dist val) const {
    if (val < 0 || val > maxd) return {nullptr, nullptr};
    const int* b = order[u].data();
    return {b + start[u][val], b + start[u][val + 1]};
  }
};

}  // namespace apspkit::detail
