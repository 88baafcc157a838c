#include "tileforge/tiling/tiling.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "tileforge/error.hpp"

namespace tileforge {

void TilingSystem::validate() const {
  if (equations.empty()) throw DimensionMismatch("system without equations");
  const auto J = equations[0].tiles.size();
  for (const auto& eq : equations) {
    if (eq.tiles.size() != J) throw DimensionMismatch("equations disagree on the number of unknowns");
    for (const auto& f : eq.tiles)
      if (!(f.group() == group)) throw DimensionMismatch("tile outside the system group");
    if (!(eq.target.group() == group)) throw DimensionMismatch("target outside the system group");
  }
}

std::int64_t TilingSystem::tile_radius() const {
  std::int64_t r = 0;
  for (const auto& eq : equations)
    for (const auto& f : eq.tiles) r = std::max(r, f.free_radius());
  return r;
}

std::int64_t TilingSystem::tile_diameter() const {
  std::int64_t d = 0;
  for (const auto& eq : equations)
    for (const auto& f : eq.tiles)
      for (int i = 0; i < group.free_rank(); ++i) {
        if (f.empty()) continue;
        std::int64_t lo = f.elements()[0][i], hi = lo;
        for (const auto& e : f) {
          lo = std::min(lo, e[i]);
          hi = std::max(hi, e[i]);
        }
        d = std::max(d, hi - lo);
      }
  return d;
}

std::vector<std::int64_t> TilingSystem::target_periods() const {
  std::vector<std::int64_t> r(group.free_rank(), 1);
  for (const auto& eq : equations)
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = std::lcm(r[i], eq.target.periods()[i]);
  return r;
}

void check_torus(const TilingSystem& system, const Torus& torus) {
  if (torus.moduli.size() != static_cast<std::size_t>(system.group.free_rank()))
    throw RegionIncompatible("torus needs " + std::to_string(system.group.free_rank()) +
                             " moduli");
  auto r = system.target_periods();
  for (std::size_t i = 0; i < r.size(); ++i)
    if (torus.moduli[i] < 1 || torus.moduli[i] % r[i] != 0)
      throw RegionIncompatible("torus modulus " + std::to_string(torus.moduli[i]) +
                               " is not a multiple of the target period " + std::to_string(r[i]));
}

namespace {

constexpr std::size_t kMaxViolations = 16;

CoverReport verify_torus(const TilingSystem& sys, const Assignment& assign, const Torus& torus) {
  check_torus(sys, torus);
  const auto tg = sys.group.torus(torus.moduli);
  const auto n = tg.order();
  CoverReport rep;
  for (std::size_t m = 0; m < sys.equations.size(); ++m) {
    const auto& eq = sys.equations[m];
    std::vector<int> count(n, 0);
    for (std::size_t j = 0; j < eq.tiles.size(); ++j) {
      for (const auto& a0 : assign.sets.at(j)) {
        GroupElement a = a0.size() == tg.dim() && assign.sets[j].group() == tg
                             ? a0
                             : reduce_to_torus(sys.group, a0, torus.moduli);
        for (const auto& f : eq.tiles[j]) {
          auto fr = reduce_to_torus(sys.group, f, torus.moduli);
          ++count[tg.index_of(tg.add(a, fr))];
        }
      }
    }
    auto target = eq.target.restrict_to_torus(torus.moduli);
    std::vector<char> in(n, 0);
    for (const auto& e : target) in[tg.index_of(e)] = 1;
    for (std::size_t c = 0; c < n; ++c) {
      ++rep.points_checked;
      if (count[c] != in[c]) {
        rep.ok = false;
        if (rep.violations.size() < kMaxViolations)
          rep.violations.push_back({m, tg.element_at(c), count[c], in[c] != 0});
      }
    }
    if (m == 0) rep.counts = std::move(count);
  }
  return rep;
}

CoverReport verify_window(const TilingSystem& sys, const Assignment& assign, const Window& w) {
  const int d = sys.group.free_rank();
  if (w.lo.size() != static_cast<std::size_t>(d) || w.hi.size() != static_cast<std::size_t>(d))
    throw RegionIncompatible("window needs one range per free coordinate");
  const auto margin = w.margin < 0 ? sys.tile_diameter() : w.margin;
  // Cells: box in free coordinates times G0, indexed through an auxiliary
  // finite group with the box side lengths as moduli.
  std::vector<std::int64_t> side(d);
  for (int i = 0; i < d; ++i) {
    if (w.hi[i] < w.lo[i]) throw RegionIncompatible("empty window");
    side[i] = w.hi[i] - w.lo[i] + 1;
  }
  const auto cells = sys.group.torus(side);
  const auto n = cells.order();
  auto to_cell = [&](const GroupElement& x) -> std::optional<std::size_t> {
    GroupElement c = x;
    for (int i = 0; i < d; ++i) {
      if (x[i] < w.lo[i] || x[i] > w.hi[i]) return std::nullopt;
      c[i] = x[i] - w.lo[i];
    }
    return cells.index_of(c);
  };
  CoverReport rep;
  for (std::size_t m = 0; m < sys.equations.size(); ++m) {
    const auto& eq = sys.equations[m];
    std::vector<int> count(n, 0);
    for (std::size_t j = 0; j < eq.tiles.size(); ++j)
      for (const auto& a : assign.sets.at(j))
        for (const auto& f : eq.tiles[j])
          if (auto c = to_cell(sys.group.add(a, f))) ++count[*c];
    for (std::size_t c = 0; c < n; ++c) {
      auto x = cells.element_at(c);
      bool interior = true;
      for (int i = 0; i < d; ++i) {
        x[i] += w.lo[i];
        if (x[i] - w.lo[i] < margin || w.hi[i] - x[i] < margin) interior = false;
      }
      if (!interior) continue;
      ++rep.points_checked;
      bool in = eq.target.contains(x);
      if (count[c] != (in ? 1 : 0)) {
        rep.ok = false;
        if (rep.violations.size() < kMaxViolations) rep.violations.push_back({m, x, count[c], in});
      }
    }
    if (m == 0) rep.counts = std::move(count);
  }
  return rep;
}

}  // namespace

CoverReport verify(const TilingSystem& system, const Assignment& assign, const Region& region) {
  system.validate();
  if (assign.sets.size() != system.num_unknowns())
    throw DimensionMismatch("assignment needs one set per unknown");
  if (auto* t = std::get_if<Torus>(&region)) return verify_torus(system, assign, *t);
  return verify_window(system, assign, std::get<Window>(region));
}

}  // namespace tileforge
