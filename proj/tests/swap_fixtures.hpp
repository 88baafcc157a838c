#pragma once
// Random single-tile instances over Z x G0 with two co-tiling solutions that
// agree outside a short block of columns. Shared by the unit tests and the
// acceptance binary.
#include <optional>
#include <random>

#include "tileforge/solver/solver.hpp"

namespace tileforge::testing {

struct SwapInstance {
  TilingSystem system;   // one equation, target Z x G0
  FiniteSet a0, a1;      // cut to columns [lo - pad, hi + pad]
  std::int64_t lo, hi;   // the verification window
  std::int64_t diff_lo, diff_hi;
};

inline std::optional<SwapInstance> random_swap_instance(std::mt19937_64& rng) {
  static const std::vector<std::vector<std::int64_t>> torsions = {{2}, {3}, {4}, {2, 2}};
  const auto& mods = torsions[rng() % torsions.size()];
  const auto g = ExplicitGroup(1, mods);
  const auto g0 = g.torsion();
  // F: random nonempty subset of {0,1} x G0 containing (0,0).
  std::vector<GroupElement> f{g.zero()};
  for (std::size_t i = 0; i < 2 * g0.order(); ++i)
    if (rng() % 4 == 0) {
      GroupElement e{static_cast<std::int64_t>(i / g0.order())};
      auto t = g0.element_at(i % g0.order());
      e.insert(e.end(), t.begin(), t.end());
      f.push_back(e);
    }
  TilingSystem sys{g, {{{FiniteSet(g, f)}, PeriodicSet::full(g)}}};
  const std::int64_t P = 6;
  std::vector<Assignment> sols;
  try {
    sols = enumerate_solutions(sys, Torus{{P}}, 64);
  } catch (const CapExceeded& e) {
    sols = e.partial();
  }
  if (sols.size() < 2) return std::nullopt;
  // Fibers of a torus solution by column.
  auto column = [&](const FiniteSet& s, std::int64_t n) {
    std::vector<GroupElement> out;
    for (const auto& x : s)
      if (x[0] == n) out.push_back(x);
    return out;
  };
  for (int tries = 0; tries < 20; ++tries) {
    const auto& s = sols[rng() % sols.size()].sets[0];
    const auto& t = sols[rng() % sols.size()].sets[0];
    std::vector<std::int64_t> differ;
    for (std::int64_t n = 0; n < P; ++n)
      if (column(s, n) != column(t, n)) differ.push_back(n);
    if (differ.empty()) continue;
    // Differences must fit in a block of at most two consecutive columns.
    if (differ.size() > 2 || (differ.size() == 2 && differ[1] != differ[0] + 1)) continue;
    const auto d0 = differ.front(), d1 = differ.back();
    const std::int64_t lo = d0 - 4, hi = d1 + 4, pad = 2;
    std::vector<GroupElement> v0, v1;
    for (std::int64_t n = lo - pad; n <= hi + pad; ++n) {
      auto c = mod(n, P);
      const auto& src = (n >= d0 && n <= d1) ? t : s;
      for (auto x : column(s, c)) v0.push_back((x[0] = n, x));
      for (auto x : column(src, c)) v1.push_back((x[0] = n, x));
    }
    return SwapInstance{sys, FiniteSet(g, v0), FiniteSet(g, v1), lo, hi, d0, d1};
  }
  return std::nullopt;
}

}  // namespace tileforge::testing
