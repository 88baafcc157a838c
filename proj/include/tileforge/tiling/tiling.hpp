#pragma once
// Tiling equations  A_1 (+) F_1 (+) ... (+) A_J (+) F_J = E  and systems of
// them sharing the unknowns A_j, plus coverage verification on a torus or a
// finite window.
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tileforge/groups/sets.hpp"

namespace tileforge {

struct TilingEquation {
  std::vector<FiniteSet> tiles;  // F_1..F_J
  PeriodicSet target;            // E
};

struct TilingSystem {
  ExplicitGroup group;
  std::vector<TilingEquation> equations;

  std::size_t num_unknowns() const { return equations.empty() ? 0 : equations[0].tiles.size(); }
  void validate() const;  // DimensionMismatch on inconsistent shapes
  // Smallest L with every tile inside [-L, L] in every free coordinate.
  std::int64_t tile_radius() const;
  // Max extent (max - min) of any tile in any free coordinate.
  std::int64_t tile_diameter() const;
  // Per free coordinate, lcm of the target periods.
  std::vector<std::int64_t> target_periods() const;
};

struct Torus {
  std::vector<std::int64_t> moduli;  // one per free coordinate
};

// Box [lo_i, hi_i] in the free coordinates times all of G0. Points closer than
// `margin` to the boundary are left out of the verdict; margin < 0 means "the
// tile diameter", the conservative default for assignments that were not
// supplied on the dilated window.
struct Window {
  std::vector<std::int64_t> lo, hi;
  std::int64_t margin = -1;
};

using Region = std::variant<Torus, Window>;

// One set per unknown. On a torus the sets live in the torus group (sets over
// the system group are reduced on the fly); on a window they live in the
// system group.
struct Assignment {
  std::vector<FiniteSet> sets;
  friend bool operator==(const Assignment&, const Assignment&) = default;
  friend bool operator<(const Assignment& a, const Assignment& b) {
    return std::lexicographical_compare(
        a.sets.begin(), a.sets.end(), b.sets.begin(), b.sets.end(),
        [](const FiniteSet& x, const FiniteSet& y) { return x.elements() < y.elements(); });
  }
};

struct CoverViolation {
  std::size_t equation;
  GroupElement point;
  int count;
  bool in_target;
};

struct CoverReport {
  bool ok = true;
  std::size_t points_checked = 0;
  std::vector<CoverViolation> violations;  // capped
  // Per-point counts for the first equation, in region cell order (torus
  // index order / window row-major); handy for rendering and debugging.
  std::vector<int> counts;
};

CoverReport verify(const TilingSystem& system, const Assignment& assign, const Region& region);

// Check that a torus is compatible with the system's targets.
void check_torus(const TilingSystem& system, const Torus& torus);  // RegionIncompatible

}  // namespace tileforge
