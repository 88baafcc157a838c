#include "tileforge/nonab/perm16.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <vector>

#include "tileforge/error.hpp"

namespace tileforge {

namespace {

constexpr std::array<std::uint64_t, 16> kFact = [] {
  std::array<std::uint64_t, 16> f{};
  f[0] = 1;
  for (std::uint64_t i = 1; i < 16; ++i) f[i] = f[i - 1] * i;
  return f;
}();

std::array<Cell, 16> identity_images() {
  std::array<Cell, 16> a{};
  std::iota(a.begin(), a.end(), Cell{0});
  return a;
}

}  // namespace

std::string cell_str(Cell c) { return "(" + std::to_string(y1_of(c)) + "," + std::to_string(y2_of(c)) + ")"; }

Perm16::Perm16() : img_(identity_images()) {}

Perm16::Perm16(const std::array<Cell, 16>& images) : img_(images) {
  std::uint32_t seen = 0;
  for (auto v : img_) {
    if (v >= 16) throw NotAPermutation("image " + std::to_string(v) + " outside Z_4^2");
    seen |= 1u << v;
  }
  if (seen != 0xffffu) throw NotAPermutation("images repeat");
}

Perm16 operator+(const Perm16& a, const Perm16& b) {
  Perm16 r;
  for (int x = 0; x < 16; ++x) r.img_[x] = a.img_[b.img_[x]];
  return r;
}

Perm16 Perm16::operator-() const {
  Perm16 r;
  for (int x = 0; x < 16; ++x) r.img_[img_[x]] = static_cast<Cell>(x);
  return r;
}

std::string Perm16::str() const {
  std::string s = "[";
  for (int x = 0; x < 16; ++x) s += (x ? " " : "") + std::to_string(img_[x]);
  return s + "]";
}

Perm16 times(int k, const Perm16& a) {
  Perm16 r;
  for (int i = 0; i < k; ++i) r = r + a;
  return r;
}

Cell pi(const Perm16& a) {
  for (int x = 0; x < 16; ++x)
    if (a(static_cast<Cell>(x)) == 0) return static_cast<Cell>(x);
  return 0;  // unreachable
}

Perm16 tau(Cell h) {
  std::array<Cell, 16> a{};
  for (int x = 0; x < 16; ++x) a[x] = cell_sub(static_cast<Cell>(x), h);
  return Perm16(a);
}

Perm16 rho() {
  std::array<Cell, 16> a{};
  for (int x = 0; x < 16; ++x) a[x] = cell(y2_of(static_cast<Cell>(x)), y1_of(static_cast<Cell>(x)));
  return Perm16(a);
}

bool is_cycle(const Perm16& a) {
  Cell x = 0;
  for (int i = 1; i < 16; ++i) {
    x = a(x);
    if (x == 0) return false;
  }
  return a(x) == 0;
}

bool is_stabilizer(const Perm16& a) {
  return std::all_of(kCube.begin(), kCube.end(), [&](Cell c) { return a(c) == c; });
}

Perm16 random_perm(Rng& rng) {
  auto a = identity_images();
  std::shuffle(a.begin(), a.end(), rng);
  return Perm16(a);
}

Perm16 random_cycle(Rng& rng) {
  auto order = identity_images();
  std::shuffle(order.begin(), order.end(), rng);
  std::array<Cell, 16> a{};
  for (int i = 0; i < 16; ++i) a[order[i]] = order[(i + 1) % 16];
  return Perm16(a);
}

Perm16 random_stabilizer(Rng& rng) {
  std::vector<Cell> rest;
  for (int x = 0; x < 16; ++x)
    if (!in_cube(static_cast<Cell>(x))) rest.push_back(static_cast<Cell>(x));
  auto moved = rest;
  std::shuffle(moved.begin(), moved.end(), rng);
  auto a = identity_images();
  for (std::size_t i = 0; i < rest.size(); ++i) a[rest[i]] = moved[i];
  return Perm16(a);
}

// The fiber element is determined by its 15 images at positions != y, a
// permutation of the nonzero cells; rank that sequence in the factorial
// number system.
std::uint64_t rank_in_fiber(const Perm16& a, Cell y) {
  if (y >= 16) throw NotInFiber("cell out of range");
  if (a(y) != 0) throw NotInFiber("a(" + cell_str(y) + ") = " + cell_str(a(y)) + ", not (0,0)");
  std::uint64_t r = 0;
  std::uint32_t used = 0;
  int i = 0;
  for (int x = 0; x < 16; ++x) {
    if (x == y) continue;
    const Cell v = a(static_cast<Cell>(x));
    // smaller nonzero values not used yet
    const int smaller = std::popcount(~used & ((1u << v) - 2u));
    r += smaller * kFact[14 - i];
    used |= 1u << v;
    ++i;
  }
  return r + 1;
}

Perm16 unrank_in_fiber(std::uint64_t k, Cell y) {
  if (y >= 16) throw NotInFiber("cell out of range");
  if (k < 1 || k > kFiberSize) throw PreconditionFailed("rank " + std::to_string(k) + " outside [1, 15!]");
  std::uint64_t r = k - 1;
  std::vector<Cell> pool;
  for (Cell v = 1; v < 16; ++v) pool.push_back(v);
  std::array<Cell, 16> img{};
  int i = 0;
  for (int x = 0; x < 16; ++x) {
    if (x == y) {
      img[x] = 0;
      continue;
    }
    const auto q = r / kFact[14 - i];
    r %= kFact[14 - i];
    img[x] = pool[q];
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(q));
    ++i;
  }
  return Perm16(img);
}

}  // namespace tileforge
