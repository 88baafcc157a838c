#include "tileforge/tiling/newman.hpp"

#include <map>

#include "tileforge/error.hpp"

namespace tileforge {

Assignment PeriodicAssignment::on_torus() const {
  Assignment a;
  for (const auto& s : sets) a.sets.push_back(s.restrict_to_torus(std::vector{period}));
  return a;
}

PeriodicAssignment newman_periodize(const TilingSystem& system, const Assignment& solution,
                                    const Window1D& window, std::int64_t L, std::int64_t r) {
  system.validate();
  const auto& g = system.group;
  if (g.free_rank() != 1) throw DimensionMismatch("newman_periodize needs a group Z x G0");
  if (r < 1) throw PeriodMismatch("period must be positive");
  if (system.tile_radius() > L) throw PrereqViolation("tiles are not inside [[-L, L]]");
  for (auto p : system.target_periods())
    if (r % p != 0) throw PeriodMismatch("targets are not r-periodic");
  if (solution.sets.size() != system.num_unknowns())
    throw DimensionMismatch("one set per unknown");

  using Color = std::vector<std::vector<GroupElement>>;
  auto color = [&](std::int64_t n) {
    Color c(solution.sets.size());
    for (std::size_t j = 0; j < solution.sets.size(); ++j)
      for (const auto& a : solution.sets[j])
        if (a[0] - n >= -L && a[0] - n <= L) {
          auto x = a;
          x[0] -= n;
          c[j].push_back(std::move(x));  // FiniteSet order is preserved by the shift
        }
    return c;
  };

  // First n (in rZ) with lo <= n - L and n + L <= hi.
  std::int64_t first = window.lo + L;
  first = first % r == 0 ? first : first + (r - mod(first, r));
  std::map<Color, std::int64_t> last_seen;
  for (std::int64_t n = first; n + L <= window.hi; n += r) {
    auto c = color(n);
    auto it = last_seen.find(c);
    if (it != last_seen.end()) {
      const auto n0 = it->second, D = n - n0;
      PeriodicAssignment out{D, n0, {}};
      for (const auto& A : solution.sets) {
        std::vector<GroupElement> reps;
        for (const auto& a : A)
          if (a[0] >= n0 && a[0] < n0 + D) reps.push_back(a);
        auto q = g.torus(std::vector{D});
        std::vector<GroupElement> red;
        for (auto& x : reps) red.push_back(reduce_to_torus(g, x, std::vector{D}));
        out.sets.emplace_back(g, D, FiniteSet(q, std::move(red)));
      }
      return out;
    }
    last_seen.emplace(std::move(c), n);
  }
  throw NoRepeatFound("no repeated color in [" + std::to_string(window.lo) + ", " +
                      std::to_string(window.hi) + "]; enlarge the window");
}

}  // namespace tileforge
