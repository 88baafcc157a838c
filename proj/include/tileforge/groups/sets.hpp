#pragma once
// Finite and periodic subsets of an ExplicitGroup, plus the sumset A (+) F.
#include <cstdint>
#include <span>
#include <vector>

#include "tileforge/groups/group.hpp"

namespace tileforge {

// Sorted, duplicate-free list of normalized elements.
class FiniteSet {
 public:
  FiniteSet() = default;
  explicit FiniteSet(ExplicitGroup g) : group_(std::move(g)) {}
  FiniteSet(ExplicitGroup g, std::vector<GroupElement> elems);

  const ExplicitGroup& group() const { return group_; }
  const std::vector<GroupElement>& elements() const { return elems_; }
  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }

  bool contains(const GroupElement& a) const;
  FiniteSet translate(const GroupElement& v) const;
  FiniteSet negate() const;
  FiniteSet unite(const FiniteSet& o) const;
  // Max |coordinate| over free coordinates (0 for empty sets).
  std::int64_t free_radius() const;

  friend bool operator==(const FiniteSet&, const FiniteSet&) = default;

 private:
  ExplicitGroup group_;
  std::vector<GroupElement> elems_;
};

// {a+f}; empty if either operand is empty; OverlapError if two sums collide.
FiniteSet direct_sum(const FiniteSet& a, const FiniteSet& f);

// A subset of Z^d x G0 invariant under r_i Z in free coordinate i. The
// common case is a single scalar period (all r_i equal); per-coordinate
// periods avoid inflating tori to lcm multiples when stacking coordinates
// carry their own period.
class PeriodicSet {
 public:
  PeriodicSet() = default;
  PeriodicSet(ExplicitGroup g, std::int64_t r, FiniteSet reps);
  PeriodicSet(ExplicitGroup g, std::vector<std::int64_t> periods, FiniteSet reps);

  // Z^d x E0 (all periods 1).
  static PeriodicSet cylinder(const ExplicitGroup& g, const std::vector<GroupElement>& e0);
  static PeriodicSet full(const ExplicitGroup& g);

  const ExplicitGroup& group() const { return group_; }
  const std::vector<std::int64_t>& periods() const { return periods_; }
  // The quotient Z_{r_1} x ... x Z_{r_d} x G0 the reps live in.
  ExplicitGroup quotient() const { return group_.torus(periods_); }
  const FiniteSet& reps() const { return reps_; }

  bool contains(const GroupElement& a) const;
  FiniteSet restrict_to_torus(std::span<const std::int64_t> free_moduli) const;
  // Same set expressed with periods multiplied up to `periods` (each a multiple).
  PeriodicSet refine(std::vector<std::int64_t> periods) const;

  friend bool operator==(const PeriodicSet&, const PeriodicSet&) = default;

 private:
  ExplicitGroup group_;
  std::vector<std::int64_t> periods_;
  FiniteSet reps_;
};

FiniteSet restrict_to_torus(const FiniteSet& s, std::span<const std::int64_t> free_moduli);

}  // namespace tileforge
