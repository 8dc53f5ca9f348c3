#pragma once

// Order in which distance slices are filled by the gamma-scaled doubling
// scheme shared by the lexicographic and counting solvers. Slice a holds the
// pairs whose primary distance is exactly a.

#include <functional>
#include <vector>

#include "apspkit/core.hpp"
#include "apspkit/hitting.hpp"

namespace apspkit::detail {

struct Split {
  Dist prefix, suffix;  // prefix + suffix = target
};

// base_top: slices 0..base_top are filled directly. `visit` receives every
// later target (each at most once, in dependency order) with its candidate
// splits; every split's slices are visited earlier or lie in the base.
inline Dist slice_base_top(Dist c0) { return 2 + 4 * c0; }

inline void slice_schedule(Dist maxd, const GammaScale& gam, Dist c0, int deltas,
                           const std::function<void(Dist, const std::vector<Split>&)>& visit) {
  const Dist band = 4 * c0;
  const Dist base = slice_base_top(c0);
  std::vector<char> done(static_cast<std::size_t>(std::max<Dist>(maxd, 0)) + 1, 0);
  for (Dist a = 0; a <= std::min(base, maxd); ++a) done[a] = 1;
  auto g = [&](Dist x) { return gam.scaled(x); };
  auto run = [&](Dist centre, auto&& splits_for) {
    for (Dist b = -band; b <= band; ++b) {
      Dist a = centre + b;
      if (a < 0 || a > maxd || done[a]) continue;
      std::vector<Split> s;
      for (int d = 0; d < deltas; ++d) {
        Split sp = splits_for(b, d);
        if (sp.prefix < 0 || sp.suffix < 0) continue;
        s.push_back(sp);
      }
      visit(a, s);
      done[a] = 1;
    }
  };
  auto floor_half = [](Dist b) { return b >= 0 ? b / 2 : -((-b + 1) / 2); };
  auto ceil_half = [&](Dist b) { return b - floor_half(b); };

  int top = 0;
  while (g(Dist(1) << (top + 1)) - band <= maxd) ++top;
  // doubling: targets near floor(gamma 2^i)
  for (int i = 1; i <= top; ++i) {
    const Dist half = g(Dist(1) << (i - 1));
    const Dist e = g(Dist(1) << i) - 2 * half;
    run(g(Dist(1) << i), [&](Dist b, int d) {
      return Split{half + floor_half(b) - d + e, half + ceil_half(b) + d};
    });
  }
  // descending: targets near floor(gamma j 2^i) for odd j >= 3
  for (int i = top; i >= 0; --i) {
    const Dist step = Dist(1) << i;
    const Dist unit = g(step);
    for (Dist j = 3; g(j * step) - band <= maxd; j += 2) {
      const Dist prev = g((j - 1) * step);
      const Dist e = g(j * step) - prev - unit;
      run(g(j * step), [&](Dist b, int d) {
        return Split{prev + floor_half(b) - d + e, unit + ceil_half(b) + d};
      });
    }
  }
  for (Dist a = 0; a <= maxd; ++a)
    if (!done[a]) throw Error("slice schedule left a distance value uncovered");
}

}  // namespace apspkit::detail
