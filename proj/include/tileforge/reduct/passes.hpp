#pragma once
// The reduction passes. Each pass builds a target instance from a source
// instance and comes with solution maps in both directions, so equivalence
// can be tested against an independent oracle on small tori.
#include <cstdint>
#include <utility>
#include <vector>

#include "tileforge/reduct/ir.hpp"

namespace tileforge {

// ---------------------------------------------------------------- tiles -> bits
// Colors C = U_j {j} x F_j in lexicographic order (j, then h); color i is
// encoded by the D bits of i, bit d -> f_d = (-1)^bit. The constraint window
// is {0} followed by the sorted nonzero differences h' - h within each tile.
struct TileColoring {
  std::vector<FiniteSet> tiles;
  std::vector<std::pair<std::size_t, GroupElement>> colors;
  BooleanLocalSystem system;
};

TileColoring tileset_to_boolean(const std::vector<FiniteSet>& tiles,
                                std::uint64_t bound = kDefaultCostBound);
// Tiling on a torus (sets in the torus group) -> bit functions, and back.
BoolFunctions tiling_to_bits(const TileColoring& tc, const Assignment& a,
                             const std::vector<std::int64_t>& torus);
Assignment bits_to_tiling(const TileColoring& tc, const BoolFunctions& bits);

// ------------------------------------------------------------ Boolean -> linear
// Omega' = {(w, s) : s constant over l, (w_{d,l} s_l) in Omega}: symmetric,
// one extra function f_{D+1}.
BooleanLocalSystem symmetrize(const BooleanLocalSystem& bs);
BoolFunctions symmetrize_forward(const BoolFunctions& f);   // append f_{D+1} = 1
BoolFunctions symmetrize_backward(const BoolFunctions& f);  // f_d * f_{D+1}

// Symmetric Omega -> antipode-avoiding constraints on 2*D*L functions
// f_{j,(d,l)}, shifts h_{(d,l)} = h_l. Forbidden pairs are listed by their
// representative with a +1 first entry.
AntipodeSystem to_antipode(const BooleanLocalSystem& symmetric, std::uint64_t bound = kDefaultCostBound);
BoolFunctions antipode_forward(const BooleanLocalSystem& symmetric, const BoolFunctions& f);
BoolFunctions antipode_backward(const BooleanLocalSystem& symmetric, const BoolFunctions& g);

// Each forbidden pair becomes  sum_d eps_d f_{j,d} + (D0 - 2 slack) = 0.
// Rows are padded to M = max(M_1, M_2) by repetition; an unknown family with
// no forbidden pairs at all keeps its slack functions unconstrained.
LinearBooleanSystem antipode_to_linear(const AntipodeSystem& as);
BoolFunctions slack_forward(const AntipodeSystem& as, const LinearBooleanSystem& ls, const BoolFunctions& g);
BoolFunctions slack_backward(const AntipodeSystem& as, const BoolFunctions& lin);

struct BooleanToLinear {
  BooleanLocalSystem source;
  BooleanLocalSystem symmetric;
  AntipodeSystem antipode;
  LinearBooleanSystem linear;
};
BooleanToLinear boolean_to_linear(const BooleanLocalSystem& bs, std::uint64_t bound = kDefaultCostBound);
BoolFunctions boolean_to_linear_forward(const BooleanToLinear& p, const BoolFunctions& f);
BoolFunctions boolean_to_linear_backward(const BooleanToLinear& p, const BoolFunctions& lin);

// -------------------------------------------------------------- linear -> Hamming
// N is the smallest multiple of 4 exceeding every sum_d |a_d| (and at least
// min_N). Solutions are the same functions, bundled as f_j = (f_{j,d})_d.
HammingSystem linear_to_hamming(const LinearBooleanSystem& ls, std::int64_t min_N = 0);

// ---------------------------------------------------------- Hamming -> functional
// Domain Z^r x Z_2, codomain Z_N^D. Equations: for each (j, d) the sign
// equation with H_j = {(0,0), (0,1)}; then one per Hamming equation with
// shifts (h_j, 0).
FunctionalSystem hamming_to_functional(const HammingSystem& hs);
FunctionTable hamming_lift(const HammingSystem& hs, const BoolFunctions& f);      // f~(n,t) = (-1)^t f(n)
BoolFunctions hamming_extract(const HammingSystem& hs, const FunctionTable& ft);  // f(n) = f~(n,0)

// Z^r x Z_2 -> Z^{r+1}: g(n,z) = f~(n, z mod 2) and back f~(n,t) = (-1)^t g(n,0).
FunctionalSystem pullback_z2z(const FunctionalSystem& fs);
FunctionTable pullback_forward(const FunctionalSystem& target, const FunctionTable& ft, std::int64_t z_period = 2);
FunctionTable pullback_backward(const FunctionalSystem& source, const FunctionTable& g);

// --------------------------------------------------------- functional -> tilings
// Group domain x Z_N x G0. Equation m has tiles
//   (-H_j x {0} x F_j) (+) ({0} x {j} x G0)
// and target domain x ({0} x E (+) [1, J] x G0); then one equation per
// permutation sigma with tiles {0} x {sigma(j)} x G0 and target domain x
// [1, J] x G0. (The layer piece {j} x G0 is attached once, at shift 0, so
// it covers layer j exactly once however many shifts H_j has.)
struct FunctionalTiling {
  FunctionalSystem source;
  std::int64_t N = 3;
  TilingSystem system;
};
FunctionalTiling functional_to_tilings(const FunctionalSystem& fs, std::int64_t N = 3,
                                       std::uint64_t bound = kDefaultCostBound);
Assignment graph_of(const FunctionalTiling& ft, const FunctionTable& f);
FunctionTable ungraph(const FunctionalTiling& ft, const Assignment& a, const std::vector<std::int64_t>& torus);

// ------------------------------------------------------------------ stacking
// M equations with cylinder targets Z^d x E0^(m) -> one equation over
// G x Z_N, N > M, tiles U_m F_j^(m) x {m}, target Z^d x U_m E0^(m) x {m}.
TilingSystem combine(const TilingSystem& sys, std::int64_t N);
Assignment combine_lift(const TilingSystem& combined, const Assignment& a, const std::vector<std::int64_t>& torus);
Assignment combine_project(const TilingSystem& original, const Assignment& a, const std::vector<std::int64_t>& torus);

// Lattice version: systems over Z^d -> one equation over Z^{d+1} with target
// U_m E^(m) x (NZ + m). Solutions lift to A x NZ; on a torus whose last
// modulus is N the maps are mutually inverse.
TilingSystem combine_zd(const TilingSystem& sys, std::int64_t N);
Assignment combine_zd_lift(const TilingSystem& combined, const Assignment& a, const std::vector<std::int64_t>& torus,
                           std::int64_t N, std::int64_t copies = 1);
Assignment combine_zd_project(const TilingSystem& original, const Assignment& a,
                              const std::vector<std::int64_t>& stacked_torus, std::int64_t N);

// ----------------------------------------------------------------- rigid tile
// Box prod [0, N_j) with the point (n_1..0..n_k) (0 in slot j) moved by N_j e_j,
// for each j. Bumps default to n_j = 2.
FiniteSet rigid_tile(const std::vector<std::int64_t>& N, std::vector<std::int64_t> bumps = {});

// --------------------------------------------------- functional -> tilings (Z^d)
// Group: domain free coords, one stacking coordinate z, Z^k, domain torsion.
// Codomain Z_{N_1} x ... x Z_{N_k} (N_i >= 5) is encoded by cosets of
// Lambda0 = prod N_i Z via the rigid tile R; same layer fix as above.
struct ZdFunctionalTiling {
  FunctionalSystem source;
  std::int64_t N = 3;
  std::vector<std::int64_t> moduli;  // N_1..N_k
  FiniteSet R;
  TilingSystem system;

  // Element (n, z, y) of the tiling group.
  GroupElement embed(const GroupElement& n, std::int64_t z, const GroupElement& y) const;
  // Torus (p, N * z_copies, q_i * N_i).
  Torus torus_for(const std::vector<std::int64_t>& domain_torus, std::int64_t z_copies = 1,
                  std::int64_t lattice_copies = 1) const;
};
ZdFunctionalTiling functional_to_tilings_zd(const FunctionalSystem& fs, std::int64_t N = 3,
                                            std::vector<std::int64_t> bumps = {},
                                            std::uint64_t bound = kDefaultCostBound);
Assignment zd_forward(const ZdFunctionalTiling& zt, const FunctionTable& f, const Torus& torus);
FunctionTable zd_backward(const ZdFunctionalTiling& zt, const Assignment& a, const Torus& torus);

}  // namespace tileforge
