#pragma once
// Intermediate representations of the reduction chain, from local Boolean
// constraints up to a single two-tile equation, plus their solution objects
// on a torus and exact solution checks.
//
// Solutions are always periodic (given on a torus): every system here is
// translation invariant, so a torus solution is a periodic solution of the
// system on the whole lattice.
#include <cstdint>
#include <vector>

#include "tileforge/groups/structured_set.hpp"
#include "tileforge/tiling/tiling.hpp"

namespace tileforge {

using Sign = std::int8_t;  // +1 / -1

// Boolean functions Z^r -> {-1,1} on a torus: f[k][cell], cells in
// ExplicitGroup::index_of order of Z_{p_1} x ... x Z_{p_r}.
struct BoolFunctions {
  std::vector<std::int64_t> torus;
  std::vector<std::vector<Sign>> f;

  ExplicitGroup group() const { return ExplicitGroup::finite(torus); }
  std::size_t cells() const;
  static BoolFunctions constant(std::vector<std::int64_t> torus, std::size_t count, Sign v = 1);
  friend bool operator==(const BoolFunctions&, const BoolFunctions&) = default;
};

// Tuples in {-1,1}^n are bit masks: bit i set iff entry i is -1.
inline Sign mask_entry(std::uint64_t mask, std::size_t i) { return ((mask >> i) & 1) ? -1 : 1; }

// (f_d(n + h_l))_{d,l} in Omega for all n; tuple entry d*L + l.
struct BooleanLocalSystem {
  int D = 1;
  std::vector<GroupElement> shifts;  // h_1..h_L in Z^r
  std::vector<std::uint64_t> omega;  // sorted, unique

  std::size_t L() const { return shifts.size(); }
  int rank() const { return shifts.empty() ? 0 : static_cast<int>(shifts[0].size()); }
  bool allows(std::uint64_t tuple) const;
  void validate() const;
};

// (f_{j,d}(n))_d avoids {eps, -eps} for each listed eps, and
// f_{2,d}(n + h_d) = -f_{1,d}(n). Rows of a solution: j*D0 + d.
struct AntipodeSystem {
  int D0 = 2;
  std::vector<GroupElement> shifts;             // h_1..h_{D0}
  std::vector<std::uint64_t> forbidden[2];      // one representative per pair

  void validate() const;
};

// sum_d a^(m)_{j,d} f_{j,d}(n) = 0 and f_{2,d}(n + h_d) = -f_{1,d}(n), d < D0.
// Rows of a solution: j*D + d.
struct LinearBooleanSystem {
  int D = 1, D0 = 1;
  std::vector<std::vector<std::int64_t>> coeffs[2];  // coeffs[j][m][d]
  std::vector<GroupElement> shifts;                  // h_1..h_{D0}

  void validate() const;
  std::int64_t max_abs_row_sum() const;
};

// (F1 + eps f_1(n + h1)) (+) (F2 + eps f_2(n + h2)) = E for eps = +-1, with
// f_j : Z^r -> {-1,1}^D inside Z_N^D. Solutions reuse BoolFunctions with rows
// j*D + d (component d of f_j).
struct HammingEquation {
  GroupElement h1, h2;
  StructuredSet F1, F2, E;
};

struct HammingSystem {
  std::int64_t N = 4;
  int D = 1;
  int rank = 2;
  std::vector<HammingEquation> equations;

  ExplicitGroup cube_group() const { return ExplicitGroup::finite(std::vector<std::int64_t>(D, N)); }
  void validate() const;
};

// (+)_j (+)_{h in H_j} (F_j + f_j(n + h)) = E for every n in the domain.
struct FunctionalEquation {
  std::vector<std::vector<GroupElement>> H;  // per unknown
  std::vector<StructuredSet> F;              // per unknown
  StructuredSet E;
};

struct FunctionalSystem {
  ExplicitGroup domain;
  ExplicitGroup codomain;  // finite
  std::size_t J = 2;
  std::vector<FunctionalEquation> equations;

  void validate() const;
};

// f_j : domain -> codomain on a torus of the domain (free moduli `torus`).
struct FunctionTable {
  ExplicitGroup domain;
  std::vector<std::int64_t> torus;
  std::vector<std::vector<GroupElement>> f;  // f[j][cell of domain.torus(torus)]

  ExplicitGroup cells_group() const { return domain.torus(torus); }
  friend bool operator==(const FunctionTable&, const FunctionTable&) = default;
};

struct TwoTileInstance {
  ExplicitGroup G0;
  FiniteSet E0;      // subset of G0
  FiniteSet F1, F2;  // subsets of Z^2 x G0

  TilingSystem to_system() const;
};

// Exact solution checks (the value of every constraint at every cell).
bool satisfies(const BooleanLocalSystem& s, const BoolFunctions& f);
bool satisfies(const AntipodeSystem& s, const BoolFunctions& f);
bool satisfies(const LinearBooleanSystem& s, const BoolFunctions& f);
bool satisfies(const HammingSystem& s, const BoolFunctions& f);
bool satisfies(const FunctionalSystem& s, const FunctionTable& f);

// Value of cell n + h on a torus, h given in the un-reduced group.
std::size_t shifted_cell(const ExplicitGroup& full, const ExplicitGroup& torus_group,
                         std::size_t cell, const GroupElement& h,
                         std::span<const std::int64_t> moduli);

// {-1,1} inside Z_N.
inline std::int64_t sign_to_zn(Sign s, std::int64_t N) { return s > 0 ? 1 : N - 1; }

}  // namespace tileforge
