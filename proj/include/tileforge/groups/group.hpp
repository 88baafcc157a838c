#pragma once
// Explicit finitely generated abelian groups Z^d x Z_N1 x ... x Z_Nm.
//
// Elements are plain coordinate vectors, free coordinates first, torsion
// coordinates normalized into [0, N_i). With that canonical form, set
// equality is list equality and std::map/std::set work out of the box.
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace tileforge {

using GroupElement = std::vector<std::int64_t>;

// Mathematical modulus: result in [0, m).
inline std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

class ExplicitGroup {
 public:
  ExplicitGroup() = default;
  ExplicitGroup(int free_rank, std::vector<std::int64_t> moduli);

  static ExplicitGroup lattice(int d) { return ExplicitGroup(d, {}); }
  static ExplicitGroup finite(std::vector<std::int64_t> moduli) {
    return ExplicitGroup(0, std::move(moduli));
  }

  int free_rank() const { return free_rank_; }
  const std::vector<std::int64_t>& moduli() const { return moduli_; }
  std::size_t dim() const { return static_cast<std::size_t>(free_rank_) + moduli_.size(); }
  bool is_finite() const { return free_rank_ == 0; }

  // Modulus of coordinate i, 0 for a free coordinate.
  std::int64_t modulus_at(std::size_t i) const;

  GroupElement zero() const { return GroupElement(dim(), 0); }
  void check(const GroupElement& a) const;  // DimensionMismatch
  GroupElement normalize(GroupElement a) const;
  GroupElement add(const GroupElement& a, const GroupElement& b) const;
  GroupElement sub(const GroupElement& a, const GroupElement& b) const;
  GroupElement neg(const GroupElement& a) const;
  GroupElement scale(const GroupElement& a, std::int64_t k) const;

  // Finite groups only: mixed-radix indexing (last coordinate fastest).
  std::uint64_t order() const;
  std::size_t index_of(const GroupElement& a) const;
  GroupElement element_at(std::size_t idx) const;
  std::vector<GroupElement> elements() const;

  // The torus quotient Z_{p1} x ... x Z_{pd} x (torsion part).
  ExplicitGroup torus(std::span<const std::int64_t> free_moduli) const;
  // The torsion part G0.
  ExplicitGroup torsion() const { return finite(moduli_); }
  // Append coordinates (keeps free-first canonical form only when the
  // appended part is compatible; callers build products left to right).
  ExplicitGroup with_cyclic(std::int64_t n) const;
  ExplicitGroup with_free(int k) const;

  std::string to_string() const;

  friend bool operator==(const ExplicitGroup&, const ExplicitGroup&) = default;

 private:
  int free_rank_ = 0;
  std::vector<std::int64_t> moduli_;
};

// Reduce an element of `g` onto its torus with the given free moduli.
GroupElement reduce_to_torus(const ExplicitGroup& g, const GroupElement& a,
                             std::span<const std::int64_t> free_moduli);

std::string to_string(const GroupElement& a);

}  // namespace tileforge
