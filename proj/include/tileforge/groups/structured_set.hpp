#pragma once
// Symbolic subsets of a finite group too large to list, e.g. the coordinate
// preimage pi_d^{-1}({0}) in Z_N^D or the kernel of a linear form.
//
// A StructuredSet is a union of boxes; a box is a conjunction of factors over
// pairwise disjoint coordinate groups, and coordinates no factor mentions are
// unconstrained (FULL). Two factor kinds:
//   list  -- explicit allowed tuples on a few coordinates
//   fiber -- { y : sum_i a_i y_i mod q in T } with q dividing every N_i involved
// Both kinds are closed under translation and negation, which is all the
// functional equations need.
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tileforge/groups/sets.hpp"

namespace tileforge {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr std::uint64_t kDefaultCostBound = 1'000'000;

struct ListFactor {
  std::vector<std::size_t> coords;
  std::vector<std::vector<std::int64_t>> allowed;  // sorted, normalized
  friend bool operator==(const ListFactor&, const ListFactor&) = default;
};

struct FiberFactor {
  std::vector<std::size_t> coords;
  std::vector<std::int64_t> coeffs;  // one per coord
  std::int64_t modulus = 1;
  std::vector<std::int64_t> targets;  // sorted residues mod modulus
  friend bool operator==(const FiberFactor&, const FiberFactor&) = default;
};

using Factor = std::variant<ListFactor, FiberFactor>;

struct Box {
  std::vector<Factor> factors;
  friend bool operator==(const Box&, const Box&) = default;
};

class StructuredSet {
 public:
  StructuredSet() = default;
  StructuredSet(ExplicitGroup g, std::vector<Box> boxes);

  static StructuredSet full(const ExplicitGroup& g);
  static StructuredSet empty(const ExplicitGroup& g);
  static StructuredSet from_finite(const FiniteSet& s);
  // { y : y_d in values }
  static StructuredSet coordinate_preimage(const ExplicitGroup& g, std::size_t d,
                                           std::vector<std::int64_t> values);
  // { y : sum_i coeffs_i y_i mod q in targets } over all coordinates.
  static StructuredSet linear_fiber(const ExplicitGroup& g, std::vector<std::int64_t> coeffs,
                                    std::int64_t q, std::vector<std::int64_t> targets);

  const ExplicitGroup& group() const { return group_; }
  const std::vector<Box>& boxes() const { return boxes_; }
  bool is_empty_syntactically() const { return boxes_.empty(); }

  bool contains(const GroupElement& y) const;
  StructuredSet translate(const GroupElement& v) const;
  StructuredSet negate() const;

  // Product of the sizes of the non-FULL factors (saturating).
  static std::uint64_t constrained_cost(const ExplicitGroup& g, const Box& b);
  // Exact size; boxes are required to be disjoint when there is more than one
  // and the set is too large to enumerate.
  BigInt cardinality(std::uint64_t bound = kDefaultCostBound) const;
  // Full listing; CostExceeded when the listing would exceed `bound`.
  FiniteSet enumerate(std::uint64_t bound = kDefaultCostBound) const;

  friend bool operator==(const StructuredSet&, const StructuredSet&) = default;

 private:
  ExplicitGroup group_;
  std::vector<Box> boxes_;
};

FiniteSet restrict_to_torus(const StructuredSet& s, std::uint64_t bound = kDefaultCostBound);

// Exact test of  (P_1 + v_1) (+) ... (+) (P_k + v_k) = E  pointwise (every y
// of E covered exactly once, nothing else covered) without enumerating the
// group: membership in each set depends only on a handful of linear
// "features" of y, so it suffices to walk the image of the feature map.
class UnionChecker {
 public:
  UnionChecker(std::vector<StructuredSet> pieces, StructuredSet target,
               std::uint64_t bound = kDefaultCostBound);

  std::size_t piece_count() const { return pieces_.size(); }
  // One shift per piece.
  bool check(std::span<const GroupElement> shifts) const;
  // Number of feature points walked per check.
  std::size_t image_size() const { return image_.size(); }

 private:
  struct Feature {
    std::vector<std::int64_t> coeffs;  // over all coordinates
    std::int64_t modulus;
    friend bool operator==(const Feature&, const Feature&) = default;
  };
  struct CompiledFactor {
    bool is_list;
    std::vector<std::size_t> feats;  // list: one per coord; fiber: exactly one
    std::vector<std::int64_t> coord_moduli;
    Factor factor;
  };
  struct CompiledSet {
    std::vector<std::vector<CompiledFactor>> boxes;
  };

  std::size_t feature_index(const Feature& f);
  CompiledSet compile(const StructuredSet& s);
  bool member(const CompiledSet& s, const std::vector<std::int64_t>& p,
              const std::vector<std::int64_t>& shift_feats) const;
  std::vector<std::int64_t> features_of(const GroupElement& v) const;

  ExplicitGroup group_;
  std::vector<StructuredSet> pieces_;
  StructuredSet target_;
  std::vector<Feature> features_;
  std::vector<CompiledSet> compiled_pieces_;
  CompiledSet compiled_target_;
  std::vector<std::vector<std::int64_t>> image_;
};

}  // namespace tileforge
