#include "tileforge/error.hpp"
#include "tileforge/reduct/passes.hpp"

namespace tileforge {

HammingSystem linear_to_hamming(const LinearBooleanSystem& ls, std::int64_t min_N) {
  ls.validate();
  HammingSystem hs;
  hs.D = ls.D;
  hs.rank = ls.shifts.empty() ? 0 : static_cast<int>(ls.shifts[0].size());
  const auto bound = ls.max_abs_row_sum();
  hs.N = 4;
  while (hs.N <= bound || hs.N < min_N) hs.N += 4;

  const auto cube = hs.cube_group();
  const auto zero = GroupElement(static_cast<std::size_t>(hs.rank), 0);
  const auto none = StructuredSet::empty(cube);
  for (int j = 0; j < 2; ++j)
    for (const auto& row : ls.coeffs[j]) {
      auto H = StructuredSet::linear_fiber(cube, row, hs.N, {0});
      hs.equations.push_back({zero, zero, j == 0 ? H : none, j == 0 ? none : H, H});
    }
  for (int d = 0; d < ls.D0; ++d) {
    auto P = StructuredSet::coordinate_preimage(cube, static_cast<std::size_t>(d), {0});
    auto E = StructuredSet::coordinate_preimage(cube, static_cast<std::size_t>(d), {1, hs.N - 1});
    hs.equations.push_back({zero, ls.shifts[d], P, P, E});
  }
  return hs;
}

namespace {

GroupElement with_t(const GroupElement& n, std::int64_t t) {
  auto e = n;
  e.push_back(t);
  return e;
}

}  // namespace

FunctionalSystem hamming_to_functional(const HammingSystem& hs) {
  hs.validate();
  const auto cube = hs.cube_group();
  FunctionalSystem fs{ExplicitGroup(hs.rank, {2}), cube, 2, {}};
  const GroupElement zero(static_cast<std::size_t>(hs.rank), 0);
  const auto none = StructuredSet::empty(cube);
  for (std::size_t j = 0; j < 2; ++j)
    for (int d = 0; d < hs.D; ++d) {
      FunctionalEquation e;
      e.H.assign(2, {});
      e.H[j] = {with_t(zero, 0), with_t(zero, 1)};
      e.F.assign(2, none);
      e.F[j] = StructuredSet::coordinate_preimage(cube, static_cast<std::size_t>(d), {0});
      e.E = StructuredSet::coordinate_preimage(cube, static_cast<std::size_t>(d), {1, hs.N - 1});
      fs.equations.push_back(std::move(e));
    }
  for (const auto& he : hs.equations)
    fs.equations.push_back({{{with_t(he.h1, 0)}, {with_t(he.h2, 0)}}, {he.F1, he.F2}, he.E});
  return fs;
}

FunctionTable hamming_lift(const HammingSystem& hs, const BoolFunctions& f) {
  const auto D = static_cast<std::size_t>(hs.D);
  if (f.f.size() != 2 * D) throw DimensionMismatch("need 2*D functions");
  FunctionTable out{ExplicitGroup(hs.rank, {2}), f.torus, {}};
  const auto cg = out.cells_group();
  const auto base = ExplicitGroup::finite(f.torus);
  out.f.assign(2, std::vector<GroupElement>(cg.order()));
  for (std::size_t c = 0; c < cg.order(); ++c) {
    auto e = cg.element_at(c);
    const bool odd = e.back() != 0;
    e.pop_back();
    const auto n = base.index_of(e);
    for (std::size_t j = 0; j < 2; ++j) {
      GroupElement y(D);
      for (std::size_t d = 0; d < D; ++d) {
        auto s = f.f[j * D + d][n];
        y[d] = sign_to_zn(static_cast<Sign>(odd ? -s : s), hs.N);
      }
      out.f[j][c] = std::move(y);
    }
  }
  return out;
}

BoolFunctions hamming_extract(const HammingSystem& hs, const FunctionTable& ft) {
  if (ft.f.size() != 2) throw DimensionMismatch("need two functions");
  const auto D = static_cast<std::size_t>(hs.D);
  const auto cg = ft.cells_group();
  BoolFunctions out = BoolFunctions::constant(ft.torus, 2 * D);
  const auto base = ExplicitGroup::finite(ft.torus);
  for (std::size_t n = 0; n < base.order(); ++n) {
    const auto c = cg.index_of(with_t(base.element_at(n), 0));
    for (std::size_t j = 0; j < 2; ++j) {
      const auto& y = ft.f[j][c];
      if (y.size() != D) throw DimensionMismatch("codomain rank");
      for (std::size_t d = 0; d < D; ++d) {
        if (y[d] == 1)
          out.f[j * D + d][n] = 1;
        else if (y[d] == hs.N - 1)
          out.f[j * D + d][n] = -1;
        else
          throw NotInCube("value " + to_string(y) + " is not in {-1,1}^D");
      }
    }
  }
  return out;
}

// ------------------------------------------------------------------ pullback

FunctionalSystem pullback_z2z(const FunctionalSystem& fs) {
  fs.validate();
  if (fs.domain.moduli() != std::vector<std::int64_t>{2}) throw PreconditionFailed("domain must be Z^r x Z_2");
  auto out = fs;
  out.domain = ExplicitGroup::lattice(fs.domain.free_rank() + 1);
  return out;  // shifts (n, t) with t in {0,1} read as integers
}

FunctionTable pullback_forward(const FunctionalSystem& target, const FunctionTable& ft, std::int64_t z_period) {
  if (z_period <= 0 || z_period % 2 != 0) throw PreconditionFailed("z period must be even");
  const auto src = ft.cells_group();
  FunctionTable out{target.domain, ft.torus, {}};
  out.torus.push_back(z_period);
  const auto cg = out.cells_group();
  out.f.assign(ft.f.size(), std::vector<GroupElement>(cg.order()));
  for (std::size_t c = 0; c < cg.order(); ++c) {
    auto e = cg.element_at(c);
    e.back() = mod(e.back(), 2);
    const auto s = src.index_of(e);
    for (std::size_t j = 0; j < ft.f.size(); ++j) out.f[j][c] = ft.f[j][s];
  }
  return out;
}

FunctionTable pullback_backward(const FunctionalSystem& source, const FunctionTable& g) {
  if (g.torus.empty()) throw DimensionMismatch("torus rank");
  const auto gg = g.cells_group();
  FunctionTable out{source.domain, {g.torus.begin(), g.torus.end() - 1}, {}};
  const auto cg = out.cells_group();
  out.f.assign(g.f.size(), std::vector<GroupElement>(cg.order()));
  for (std::size_t c = 0; c < cg.order(); ++c) {
    auto e = cg.element_at(c);
    const bool odd = e.back() != 0;
    e.back() = 0;
    const auto s = gg.index_of(e);
    for (std::size_t j = 0; j < g.f.size(); ++j)
      out.f[j][c] = odd ? source.codomain.neg(g.f[j][s]) : g.f[j][s];
  }
  return out;
}

}  // namespace tileforge
