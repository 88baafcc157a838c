#include "tileforge/reduct/ir.hpp"

#include <algorithm>

#include "tileforge/error.hpp"
#include "detail.hpp"

namespace tileforge {

std::size_t BoolFunctions::cells() const {
  std::size_t n = 1;
  for (auto p : torus) n *= static_cast<std::size_t>(p);
  return n;
}

BoolFunctions BoolFunctions::constant(std::vector<std::int64_t> torus, std::size_t count, Sign v) {
  BoolFunctions b{std::move(torus), {}};
  b.f.assign(count, std::vector<Sign>(b.cells(), v));
  return b;
}

bool BooleanLocalSystem::allows(std::uint64_t tuple) const {
  return std::binary_search(omega.begin(), omega.end(), tuple);
}

void BooleanLocalSystem::validate() const {
  if (D < 1 || shifts.empty()) throw DimensionMismatch("need D >= 1 and at least one shift");
  if (static_cast<std::size_t>(D) * L() > 64) throw CostExceeded("boolean", "D*L exceeds 64 bits");
  for (const auto& h : shifts)
    if (h.size() != shifts[0].size()) throw DimensionMismatch("shifts of different rank");
  auto s = shifts;
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw PreconditionFailed("shifts must be distinct");
  if (!std::is_sorted(omega.begin(), omega.end()) ||
      std::adjacent_find(omega.begin(), omega.end()) != omega.end())
    throw PreconditionFailed("omega must be sorted and duplicate-free");
  const auto width = static_cast<std::size_t>(D) * L();
  for (auto w : omega)
    if (width < 64 && (w >> width) != 0) throw DimensionMismatch("omega tuple wider than D*L");
}

void AntipodeSystem::validate() const {
  if (D0 < 2 || D0 > 64) throw PreconditionFailed("need 2 <= D0 <= 64");
  if (shifts.size() != static_cast<std::size_t>(D0)) throw DimensionMismatch("one shift per coordinate");
  for (const auto& fj : forbidden)
    for (auto e : fj)
      if (D0 < 64 && (e >> D0) != 0) throw DimensionMismatch("forbidden vector wider than D0");
}

void LinearBooleanSystem::validate() const {
  if (D < D0 || D0 < 1) throw DimensionMismatch("need D >= D0 >= 1");
  if (shifts.size() != static_cast<std::size_t>(D0)) throw DimensionMismatch("one shift per paired coordinate");
  for (const auto& cj : coeffs)
    for (const auto& row : cj)
      if (row.size() != static_cast<std::size_t>(D)) throw DimensionMismatch("coefficient row length != D");
}

std::int64_t LinearBooleanSystem::max_abs_row_sum() const {
  std::int64_t best = 0;
  for (const auto& cj : coeffs)
    for (const auto& row : cj) {
      std::int64_t s = 0;
      for (auto a : row) s += a < 0 ? -a : a;
      best = std::max(best, s);
    }
  return best;
}

void HammingSystem::validate() const {
  if (N <= 2) throw PreconditionFailed("N must exceed 2");
  if (D < 1) throw DimensionMismatch("D >= 1");
  const auto g = cube_group();
  for (const auto& e : equations) {
    if (e.h1.size() != static_cast<std::size_t>(rank) || e.h2.size() != static_cast<std::size_t>(rank))
      throw DimensionMismatch("shift rank");
    for (const auto* s : {&e.F1, &e.F2, &e.E})
      if (!(s->group() == g)) throw DimensionMismatch("Hamming sets must live in Z_N^D");
  }
}

void FunctionalSystem::validate() const {
  if (!codomain.is_finite()) throw NotFinite("codomain must be finite");
  for (const auto& e : equations) {
    if (e.H.size() != J || e.F.size() != J) throw DimensionMismatch("one shift set and tile per unknown");
    for (std::size_t j = 0; j < J; ++j) {
      for (const auto& h : e.H[j]) domain.check(h);
      if (!(e.F[j].group() == codomain)) throw DimensionMismatch("F must live in the codomain");
    }
    if (!(e.E.group() == codomain)) throw DimensionMismatch("E must live in the codomain");
  }
}

TilingSystem TwoTileInstance::to_system() const {
  if (F1.empty() || F2.empty()) throw EmptyTile("two-tile instance needs non-empty tiles");
  ExplicitGroup g(2, G0.moduli());
  return TilingSystem{g, {{{F1, F2}, PeriodicSet::cylinder(g, E0.elements())}}};
}

std::size_t shifted_cell(const ExplicitGroup& full, const ExplicitGroup& torus_group, std::size_t cell,
                         const GroupElement& h, std::span<const std::int64_t> moduli) {
  return torus_group.index_of(torus_group.add(torus_group.element_at(cell), reduce_to_torus(full, h, moduli)));
}

namespace detail {

std::vector<std::vector<std::size_t>> shift_table(const ExplicitGroup& full, std::span<const std::int64_t> moduli,
                                                  const std::vector<GroupElement>& shifts) {
  const auto tg = full.torus(moduli);
  const auto n = tg.order();
  std::vector<std::vector<std::size_t>> out;
  for (const auto& h : shifts) {
    auto r = reduce_to_torus(full, h, moduli);
    std::vector<std::size_t> row(n);
    for (std::size_t c = 0; c < n; ++c) row[c] = tg.index_of(tg.add(tg.element_at(c), r));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace detail

namespace {

using detail::shift_table;

void check_rows(const BoolFunctions& f, std::size_t rows) {
  if (f.f.size() != rows) throw DimensionMismatch("wrong number of functions");
  for (const auto& r : f.f)
    if (r.size() != f.cells()) throw DimensionMismatch("function size != torus size");
}

GroupElement cube_point(const BoolFunctions& f, std::size_t j, int D, std::size_t cell, Sign eps,
                        std::int64_t N) {
  GroupElement y(D);
  for (int d = 0; d < D; ++d) {
    auto s = f.f[j * D + d][cell];
    if (s != 1 && s != -1) throw NotInCube("Boolean value outside {-1,1}");
    y[d] = sign_to_zn(static_cast<Sign>(s * eps), N);
  }
  return y;
}

}  // namespace

bool satisfies(const BooleanLocalSystem& s, const BoolFunctions& f) {
  s.validate();
  check_rows(f, static_cast<std::size_t>(s.D));
  if (f.torus.size() != static_cast<std::size_t>(s.rank())) throw DimensionMismatch("torus rank");
  const auto L = s.L();
  auto next = shift_table(ExplicitGroup::lattice(s.rank()), f.torus, s.shifts);
  for (std::size_t n = 0; n < f.cells(); ++n) {
    std::uint64_t t = 0;
    for (int d = 0; d < s.D; ++d)
      for (std::size_t l = 0; l < L; ++l)
        if (f.f[d][next[l][n]] < 0) t |= 1ull << (d * L + l);
    if (!s.allows(t)) return false;
  }
  return true;
}

bool satisfies(const AntipodeSystem& s, const BoolFunctions& f) {
  s.validate();
  const auto D0 = static_cast<std::size_t>(s.D0);
  check_rows(f, 2 * D0);
  const int r = static_cast<int>(s.shifts[0].size());
  auto next = shift_table(ExplicitGroup::lattice(r), f.torus, s.shifts);
  const std::uint64_t full = D0 == 64 ? ~0ull : (1ull << D0) - 1;
  for (std::size_t n = 0; n < f.cells(); ++n) {
    for (std::size_t j = 0; j < 2; ++j) {
      std::uint64_t t = 0;
      for (std::size_t d = 0; d < D0; ++d)
        if (f.f[j * D0 + d][n] < 0) t |= 1ull << d;
      for (auto e : s.forbidden[j])
        if (t == e || t == (~e & full)) return false;
    }
    for (std::size_t d = 0; d < D0; ++d)
      if (f.f[D0 + d][next[d][n]] != -f.f[d][n]) return false;
  }
  return true;
}

bool satisfies(const LinearBooleanSystem& s, const BoolFunctions& f) {
  s.validate();
  const auto D = static_cast<std::size_t>(s.D);
  check_rows(f, 2 * D);
  const int r = s.shifts.empty() ? static_cast<int>(f.torus.size()) : static_cast<int>(s.shifts[0].size());
  auto next = shift_table(ExplicitGroup::lattice(r), f.torus, s.shifts);
  for (std::size_t n = 0; n < f.cells(); ++n) {
    for (std::size_t j = 0; j < 2; ++j)
      for (const auto& row : s.coeffs[j]) {
        std::int64_t sum = 0;
        for (std::size_t d = 0; d < D; ++d) sum += row[d] * f.f[j * D + d][n];
        if (sum != 0) return false;
      }
    for (std::size_t d = 0; d < static_cast<std::size_t>(s.D0); ++d)
      if (f.f[D + d][next[d][n]] != -f.f[d][n]) return false;
  }
  return true;
}

bool satisfies(const HammingSystem& s, const BoolFunctions& f) {
  s.validate();
  check_rows(f, 2 * static_cast<std::size_t>(s.D));
  const auto lat = ExplicitGroup::lattice(s.rank);
  for (const auto& e : s.equations) {
    UnionChecker chk({e.F1, e.F2}, e.E);
    auto n1 = shift_table(lat, f.torus, {e.h1});
    auto n2 = shift_table(lat, f.torus, {e.h2});
    for (std::size_t n = 0; n < f.cells(); ++n)
      for (Sign eps : {Sign(1), Sign(-1)}) {
        std::vector<GroupElement> sh{cube_point(f, 0, s.D, n1[0][n], eps, s.N),
                                     cube_point(f, 1, s.D, n2[0][n], eps, s.N)};
        if (!chk.check(sh)) return false;
      }
  }
  return true;
}

bool satisfies(const FunctionalSystem& s, const FunctionTable& f) {
  s.validate();
  if (!(f.domain == s.domain)) throw DimensionMismatch("function table over a different domain");
  if (f.f.size() != s.J) throw DimensionMismatch("one function per unknown");
  const auto tg = f.cells_group();
  for (const auto& fj : f.f)
    if (fj.size() != tg.order()) throw DimensionMismatch("function size != torus size");
  for (const auto& e : s.equations) {
    std::vector<StructuredSet> pieces;
    std::vector<std::pair<std::size_t, GroupElement>> slots;
    for (std::size_t j = 0; j < s.J; ++j)
      for (const auto& h : e.H[j]) {
        pieces.push_back(e.F[j]);
        slots.emplace_back(j, h);
      }
    UnionChecker chk(pieces, e.E);
    std::vector<GroupElement> hs;
    for (auto& [j, h] : slots) hs.push_back(h);
    auto next = shift_table(s.domain, f.torus, hs);
    std::vector<GroupElement> sh(slots.size());
    for (std::size_t n = 0; n < tg.order(); ++n) {
      for (std::size_t k = 0; k < slots.size(); ++k) sh[k] = f.f[slots[k].first][next[k][n]];
      if (!chk.check(sh)) return false;
    }
  }
  return true;
}

}  // namespace tileforge
