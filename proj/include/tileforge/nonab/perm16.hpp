#pragma once
// Permutations of Z_4^2 in additive notation: a + b = a o b, 0 the identity,
// -a the inverse. Cells (y1, y2) are indexed 4*y1 + y2.
#include <array>
#include <cstdint>
#include <random>
#include <string>

namespace tileforge {

using Cell = std::uint8_t;
using Rng = std::mt19937_64;

inline constexpr Cell cell(int y1, int y2) { return static_cast<Cell>(4 * (y1 & 3) + (y2 & 3)); }
inline constexpr int y1_of(Cell c) { return c >> 2; }
inline constexpr int y2_of(Cell c) { return c & 3; }
inline constexpr Cell cell_add(Cell a, Cell b) { return cell(y1_of(a) + y1_of(b), y2_of(a) + y2_of(b)); }
inline constexpr Cell cell_sub(Cell a, Cell b) { return cell(y1_of(a) - y1_of(b), y2_of(a) - y2_of(b)); }

// {-1,1}^2 inside Z_4^2, a coset of (2Z_4)^2.
inline constexpr std::array<Cell, 4> kCube{cell(1, 1), cell(1, 3), cell(3, 1), cell(3, 3)};
inline constexpr std::array<Cell, 4> kEvenCells{cell(0, 0), cell(0, 2), cell(2, 0), cell(2, 2)};
inline constexpr bool in_cube(Cell c) { return (y1_of(c) & 1) && (y2_of(c) & 1); }
std::string cell_str(Cell c);

class Perm16 {
 public:
  Perm16();  // identity
  explicit Perm16(const std::array<Cell, 16>& images);  // NotAPermutation

  Cell operator()(Cell x) const { return img_[x]; }
  const std::array<Cell, 16>& images() const { return img_; }

  friend Perm16 operator+(const Perm16& a, const Perm16& b);  // a o b
  Perm16 operator-() const;
  friend Perm16 operator-(const Perm16& a, const Perm16& b) { return a + (-b); }
  friend bool operator==(const Perm16&, const Perm16&) = default;
  friend auto operator<=>(const Perm16&, const Perm16&) = default;

  std::string str() const;

 private:
  std::array<Cell, 16> img_;
};

Perm16 times(int k, const Perm16& a);  // k a, k >= 0

Cell pi(const Perm16& a);  // a^{-1}(0,0)
Perm16 tau(Cell h);        // x -> x - h
Perm16 rho();              // (y1, y2) -> (y2, y1)

bool is_cycle(const Perm16& a);       // one 16-cycle
bool is_stabilizer(const Perm16& a);  // fixes each cube point

Perm16 random_perm(Rng& rng);
Perm16 random_cycle(Rng& rng);
Perm16 random_stabilizer(Rng& rng);

// Lexicographic rank of a among the permutations with a(y) = (0,0), in
// [1, 15!]; unrank_in_fiber is the inverse.
inline constexpr std::uint64_t kFiberSize = 1307674368000ull;
std::uint64_t rank_in_fiber(const Perm16& a, Cell y);     // NotInFiber
Perm16 unrank_in_fiber(std::uint64_t k, Cell y);          // PreconditionFailed if k out of range

}  // namespace tileforge
