#pragma once
// Periodizing a one-dimensional tiling (Newman's pigeonhole argument).
//
// Color each n in rZ by the tuple of local patterns ((A_j - n) cap [[-L, L]])_j.
// If n0 and n0 + D share a color, the block A_j cap [[n0, n0+D-1]] repeated
// with period D is again a solution: equal colors make A locally D-periodic
// on [[n0 - L, n0 + D - 1 + L]], which is all the tiling identity inside one
// period can see. (Any D >= 1 works; no D > L condition is needed.)
#include <cstdint>
#include <vector>

#include "tileforge/tiling/tiling.hpp"

namespace tileforge {

struct Window1D {
  std::int64_t lo = 0, hi = 0;
};

struct PeriodicAssignment {
  std::int64_t period = 0;  // D
  std::int64_t start = 0;   // n0
  std::vector<PeriodicSet> sets;

  // The sets restricted to the period-D torus (ready for verify).
  Assignment on_torus() const;
};

// `solution` holds A_j intersected with (at least) the window; every color in
// [lo + L, hi - L] must be computable from it. Scans for the first repeat.
PeriodicAssignment newman_periodize(const TilingSystem& system, const Assignment& solution,
                                    const Window1D& window, std::int64_t L, std::int64_t r);

}  // namespace tileforge
