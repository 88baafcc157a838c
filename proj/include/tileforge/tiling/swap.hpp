#pragma once
// Fiber swapping for one-dimensional tilings Z x G0 and the Fourier-side
// dichotomy behind it. For J = 1, two co-tiling sets A0, A1 that agree far
// to the left can have their fibers A_n = A cap [[n]] mixed arbitrarily; the
// reason is that for each character xi either every slice of F is killed by
// xi or every fiber difference is.
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "tileforge/groups/sets.hpp"

namespace tileforge {

using Complex = std::complex<double>;
inline constexpr double kFourierTol = 1e-9;

// f^(xi) = sum_x f(x) exp(-2 pi i xi.x), xi.x = sum_i xi_i x_i / N_i. Values are
// indexed by ExplicitGroup::index_of on both sides.
std::vector<Complex> fourier(const ExplicitGroup& g0, std::span<const Complex> f);
std::vector<Complex> inverse_fourier(const ExplicitGroup& g0, std::span<const Complex> fhat);

// A^(omega) = union_n A^(omega(n)) cap [[n]]. If `agree_through` is set, A0
// and A1 must have equal fibers for every n <= agree_through that occurs.
FiniteSet fiber_swap(const FiniteSet& a0, const FiniteSet& a1,
                     const std::function<int(std::int64_t)>& omega,
                     std::optional<std::int64_t> agree_through = std::nullopt);

struct DichotomyReport {
  bool ok = true;
  double max_residual = 0;          // max |sum_l f^_{n-l}(xi) 1^_{F_l}(xi)|
  double max_dichotomy_defect = 0;  // max_xi min(max_l |1^_{F_l}|, max_n |f^_n|)
  std::size_t characters = 0;
  std::size_t fibers = 0;
};

// A0, A1 are finite subsets of Z x G0 that agree outside the window they
// were cut from, so the fiber differences are finitely supported. Throws
// PrereqViolation if A0 (+) F and A1 (+) F differ (counted with multiplicity).
DichotomyReport swap_dichotomy_check(const FiniteSet& a0, const FiniteSet& a1, const FiniteSet& f);

}  // namespace tileforge
