#pragma once
// Forward direction of the nonabelian encoding of linear Boolean systems:
// from a solution f of a LinearBooleanSystem on a torus, the set
//   A = {(n, t, (y_{n,t,d})_d, (alpha_{y_{n,t,d},k})_d) : k in [1, 15!]},
//   y_{n,t,d} = ((-1)^t f_{1,d}(n), (-1)^t f_{2,d}(n)) in Z_N^2,
// with alpha_{y,k} = unrank_in_fiber(k, y), inside Z^r x Z_2 x (Z_N^2)^D x S_16^D,
// and the four families of tiling equations it satisfies. A has 15! elements
// per fiber, so it is only ever a membership oracle; each family is checked
// by sampling and counting representations exactly.
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "tileforge/nonab/cover.hpp"
#include "tileforge/reduct/ir.hpp"

namespace tileforge {

// A point of the ambient group. n is a torus cell (normalized element of
// f.group()); y[2d + j] is coordinate j of y_d in Z_N.
struct BigPoint {
  GroupElement n;
  int t = 0;
  std::vector<std::int64_t> y;
  std::vector<Perm16> zeta;
};

struct LinearEncoding {
  LinearBooleanSystem system;
  BoolFunctions f;
  std::int64_t N = 4;
  // Defect: each fiber also admits ζ with ζ_1 in the fiber over y_1 + (2,0)
  // and ζ_1(0,0) = (0,1) -- a positive-density set of wrong elements.
  bool defect = false;

  int D() const { return system.D; }
  std::vector<std::int64_t> y_at(std::size_t cell, int t) const;
  bool contains(const BigPoint& p) const;
  // Elements of the fiber A_{n,t} whose ζ agrees with `fixed` on the listed
  // coordinates (at least one); the fiber's y is forced.
  std::uint64_t count_fixed(std::size_t cell, int t, const std::vector<std::pair<std::size_t, Perm16>>& fixed) const;
};

// N = 0 picks the smallest multiple of 4 above every coefficient row sum.
// PreconditionFailed naming the violated equation if f is not a solution.
LinearEncoding make_linear_encoding(const LinearBooleanSystem& s, const BoolFunctions& f, std::int64_t N = 0,
                                    bool defect = false);

// One listed piece of a tile: (n, t) offset, a predicate on the tile
// element's y (solved from A, never searched), and fixed ζ coordinates;
// unlisted ζ coordinates range over all of S_16.
struct TilePiece {
  GroupElement dn;
  int dt = 0;
  std::function<bool(const std::vector<std::int64_t>&)> y_ok;
  std::vector<std::pair<std::size_t, Perm16>> zeta;
};

struct TileFamily {
  std::string name;
  std::vector<TilePiece> pieces;
  std::function<bool(const BigPoint&)> in_target;
};

// Families 1-4: the linear rows (one per row, sampled cycle), the sign
// coordinates (per d, j, sampled cycle), the pairing T_d (+) T'_d (per
// d <= D0), and the graph-form cube encoding (per d, tau family plus sampled
// cycle/stabilizer pairs).
std::vector<TileFamily> bigtile_families(const LinearEncoding& enc, int cycles, int stabilizers, std::uint64_t seed);

std::uint64_t count_representations(const LinearEncoding& enc, const TileFamily& fam, const BigPoint& e);
BigPoint sample_point(const LinearEncoding& enc, Rng& rng);
CoverStats check_family(const LinearEncoding& enc, const TileFamily& fam, std::uint64_t samples, std::uint64_t seed);

struct EncodingOptions {
  int cycles = 3;
  int stabilizers = 2;
  std::uint64_t samples = 10000;
  std::uint64_t seed = 1;
  std::int64_t N = 0;
  bool defect = false;
};

std::vector<CoverStats> linear_encoding_forward(const LinearBooleanSystem& s, const BoolFunctions& f,
                                                const EncodingOptions& opt = {});

// The two halves of the pairing cover at (n, t, d): y_{n,t,d} + K and
// rho(y_{n+h_d,t,d}) + K, K = {(0,0),(0,2)}, reduced to Z_4^2.
std::pair<std::vector<Cell>, std::vector<Cell>> pairing_halves(const LinearEncoding& enc, std::size_t cell, int t,
                                                                std::size_t d);

}  // namespace tileforge
