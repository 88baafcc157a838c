#include <algorithm>
#include <map>
#include <numeric>

#include "tileforge/error.hpp"
#include "tileforge/reduct/passes.hpp"

namespace tileforge {

namespace {

GroupElement cat(GroupElement a, const GroupElement& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::vector<std::vector<std::size_t>> permutations(std::size_t J) {
  std::vector<std::size_t> p(J);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<std::size_t>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

BigInt order_of(const ExplicitGroup& g) {
  BigInt n = 1;
  for (auto m : g.moduli()) n *= m;
  return n;
}

FiniteSet listing(const StructuredSet& s, std::uint64_t bound, const char* stage) {
  try {
    return s.enumerate(bound);
  } catch (const CostExceeded& e) {
    throw CostExceeded(stage, e.what());
  }
}

void check_stack(std::size_t J, std::int64_t N) {
  if (J == 0) throw PreconditionFailed("no unknowns");
  if (J > 4) throw PreconditionFailed("at most 4 unknowns (one equation per permutation)");
  if (N <= static_cast<std::int64_t>(J)) throw BadStackHeight("stack height must exceed the number of unknowns");
}

void check_distinct(const std::vector<GroupElement>& H) {
  auto s = H;
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw PreconditionFailed("repeated shift in H_j");
}

}  // namespace

// ------------------------------------------------------- functional -> tilings

FunctionalTiling functional_to_tilings(const FunctionalSystem& fs, std::int64_t N, std::uint64_t bound) {
  fs.validate();
  check_stack(fs.J, N);
  const auto& dom = fs.domain;
  const auto& G0 = fs.codomain;
  if (order_of(G0) > bound) throw CostExceeded("functional_to_tilings", "codomain too large to list");

  auto mods = dom.moduli();
  mods.push_back(N);
  mods.insert(mods.end(), G0.moduli().begin(), G0.moduli().end());
  FunctionalTiling ft{fs, N, {ExplicitGroup(dom.free_rank(), mods), {}}};
  const auto& g = ft.system.group;
  const auto all = G0.elements();
  const auto torsion = dom.torsion().elements();
  const GroupElement origin = dom.zero();

  auto layer_piece = [&](std::size_t layer) {
    std::vector<GroupElement> pts;
    for (const auto& y : all) pts.push_back(cat(cat(origin, {static_cast<std::int64_t>(layer)}), y));
    return pts;
  };
  auto layers_target = [&](std::vector<GroupElement> e0) {
    for (const auto& t : torsion)
      for (std::size_t l = 1; l <= fs.J; ++l)
        for (const auto& y : all) e0.push_back(cat(cat(t, {static_cast<std::int64_t>(l)}), y));
    return PeriodicSet::cylinder(g, e0);
  };

  std::uint64_t cost = 0;
  for (const auto& e : fs.equations) {
    TilingEquation te;
    for (std::size_t j = 0; j < fs.J; ++j) {
      check_distinct(e.H[j]);
      auto F = listing(e.F[j], bound, "functional_to_tilings");
      auto pts = layer_piece(j + 1);
      for (const auto& h : e.H[j])
        for (const auto& y : F) pts.push_back(cat(cat(dom.neg(h), {0}), y));
      cost += pts.size();
      if (cost > bound) throw CostExceeded("functional_to_tilings", "tiles too large");
      te.tiles.emplace_back(g, std::move(pts));
    }
    std::vector<GroupElement> e0;
    for (const auto& t : torsion)
      for (const auto& y : listing(e.E, bound, "functional_to_tilings")) e0.push_back(cat(cat(t, {0}), y));
    te.target = layers_target(std::move(e0));
    ft.system.equations.push_back(std::move(te));
  }
  for (const auto& sigma : permutations(fs.J)) {
    TilingEquation te;
    for (std::size_t j = 0; j < fs.J; ++j) te.tiles.emplace_back(g, layer_piece(sigma[j] + 1));
    te.target = layers_target({});
    ft.system.equations.push_back(std::move(te));
  }
  return ft;
}

Assignment graph_of(const FunctionalTiling& ft, const FunctionTable& f) {
  if (f.f.size() != ft.source.J) throw DimensionMismatch("one function per unknown");
  const auto tg = ft.system.group.torus(f.torus);
  const auto cg = f.cells_group();
  Assignment a;
  for (const auto& fj : f.f) {
    std::vector<GroupElement> pts;
    for (std::size_t c = 0; c < cg.order(); ++c) pts.push_back(cat(cat(cg.element_at(c), {0}), fj[c]));
    a.sets.emplace_back(tg, std::move(pts));
  }
  return a;
}

FunctionTable ungraph(const FunctionalTiling& ft, const Assignment& a, const std::vector<std::int64_t>& torus) {
  if (a.sets.size() != ft.source.J) throw DimensionMismatch("one set per unknown");
  FunctionTable out{ft.source.domain, torus, {}};
  const auto cg = out.cells_group();
  const auto k = ft.source.domain.dim();
  for (const auto& s : a.sets) {
    std::vector<GroupElement> fj(cg.order());
    std::vector<char> seen(cg.order(), 0);
    for (const auto& x : s) {
      if (x.size() != ft.system.group.dim()) throw DimensionMismatch("point rank");
      if (x[k] != 0) throw NotASolution("point off layer 0: " + to_string(x));
      const auto c = cg.index_of(cg.normalize({x.begin(), x.begin() + static_cast<std::ptrdiff_t>(k)}));
      if (seen[c]++) throw NotASolution("not a graph over " + to_string(cg.element_at(c)));
      fj[c] = {x.begin() + static_cast<std::ptrdiff_t>(k) + 1, x.end()};
    }
    for (std::size_t c = 0; c < seen.size(); ++c)
      if (!seen[c]) throw NotASolution("no point over " + to_string(cg.element_at(c)));
    out.f.push_back(std::move(fj));
  }
  return out;
}

// ------------------------------------------------------------------ combine

TilingSystem combine(const TilingSystem& sys, std::int64_t N) {
  sys.validate();
  const auto M = sys.equations.size();
  if (N <= static_cast<std::int64_t>(M)) throw BadStackHeight("stack height must exceed the number of equations");
  const auto d = static_cast<std::size_t>(sys.group.free_rank());
  TilingSystem out{sys.group.with_cyclic(N), {}};
  std::vector<std::vector<GroupElement>> tiles(sys.num_unknowns());
  std::vector<GroupElement> e0;
  for (std::size_t m = 0; m < M; ++m) {
    const auto& eq = sys.equations[m];
    const auto& p = eq.target.periods();
    if (std::any_of(p.begin(), p.end(), [](std::int64_t r) { return r != 1; }))
      throw PreconditionFailed("targets must be cylinders Z^d x E0");
    const GroupElement layer{static_cast<std::int64_t>(m + 1)};
    for (std::size_t j = 0; j < tiles.size(); ++j)
      for (const auto& x : eq.tiles[j]) tiles[j].push_back(cat(x, layer));
    for (const auto& x : eq.target.reps()) e0.push_back(cat({x.begin() + static_cast<std::ptrdiff_t>(d), x.end()}, layer));
  }
  TilingEquation te;
  for (auto& t : tiles) {
    if (t.empty()) throw EmptyTile("combined tile is empty");
    te.tiles.emplace_back(out.group, std::move(t));
  }
  te.target = PeriodicSet::cylinder(out.group, e0);
  out.equations.push_back(std::move(te));
  return out;
}

Assignment combine_lift(const TilingSystem& combined, const Assignment& a, const std::vector<std::int64_t>& torus) {
  const auto tg = combined.group.torus(torus);
  Assignment out;
  for (const auto& s : a.sets) {
    std::vector<GroupElement> pts;
    for (const auto& x : s) pts.push_back(cat(x, {0}));
    out.sets.emplace_back(tg, std::move(pts));
  }
  return out;
}

Assignment combine_project(const TilingSystem& original, const Assignment& a, const std::vector<std::int64_t>& torus) {
  const auto tg = original.group.torus(torus);
  Assignment out;
  for (const auto& s : a.sets) {
    std::vector<GroupElement> pts;
    for (const auto& x : s) {
      if (x.empty() || x.back() != 0) throw NotASolution("point off layer 0: " + to_string(x));
      pts.emplace_back(x.begin(), x.end() - 1);
    }
    out.sets.emplace_back(tg, std::move(pts));
  }
  return out;
}

TilingSystem combine_zd(const TilingSystem& sys, std::int64_t N) {
  sys.validate();
  if (!sys.group.moduli().empty()) throw PreconditionFailed("lattice stacking needs a torsion-free group");
  const auto M = sys.equations.size();
  if (N <= static_cast<std::int64_t>(M)) throw BadStackHeight("stack height must exceed the number of equations");
  const int d = sys.group.free_rank();
  TilingSystem out{ExplicitGroup::lattice(d + 1), {}};
  auto periods = sys.target_periods();
  periods.push_back(N);
  const auto quotient = out.group.torus(periods);
  std::vector<std::vector<GroupElement>> tiles(sys.num_unknowns());
  std::vector<GroupElement> reps;
  for (std::size_t m = 0; m < M; ++m) {
    const auto& eq = sys.equations[m];
    const GroupElement layer{static_cast<std::int64_t>(m + 1)};
    for (std::size_t j = 0; j < tiles.size(); ++j)
      for (const auto& x : eq.tiles[j]) tiles[j].push_back(cat(x, layer));
    auto refined = eq.target.refine({periods.begin(), periods.end() - 1});
    for (const auto& x : refined.reps()) reps.push_back(cat(x, layer));
  }
  TilingEquation te;
  for (auto& t : tiles) {
    if (t.empty()) throw EmptyTile("combined tile is empty");
    te.tiles.emplace_back(out.group, std::move(t));
  }
  te.target = PeriodicSet(out.group, periods, FiniteSet(quotient, std::move(reps)));
  out.equations.push_back(std::move(te));
  return out;
}

Assignment combine_zd_lift(const TilingSystem& combined, const Assignment& a, const std::vector<std::int64_t>& torus,
                           std::int64_t N, std::int64_t copies) {
  auto st = torus;
  st.push_back(N * copies);
  const auto tg = combined.group.torus(st);
  Assignment out;
  for (const auto& s : a.sets) {
    std::vector<GroupElement> pts;
    for (const auto& x : s)
      for (std::int64_t k = 0; k < copies; ++k) pts.push_back(cat(x, {k * N}));
    out.sets.emplace_back(tg, std::move(pts));
  }
  return out;
}

Assignment combine_zd_project(const TilingSystem& original, const Assignment& a,
                              const std::vector<std::int64_t>& stacked_torus, std::int64_t N) {
  if (stacked_torus.empty() || stacked_torus.back() % N != 0)
    throw RegionIncompatible("stacking modulus must be a multiple of N");
  const auto tg = original.group.torus(std::span(stacked_torus).first(stacked_torus.size() - 1));
  Assignment out;
  for (const auto& s : a.sets) {
    std::vector<GroupElement> pts;
    for (const auto& x : s) {
      if (mod(x.back(), N) != 0) throw NotASolution("point off the stacking lattice: " + to_string(x));
      if (x.back() == 0) pts.emplace_back(x.begin(), x.end() - 1);
    }
    out.sets.emplace_back(tg, std::move(pts));
  }
  return out;
}

// ---------------------------------------------------------------- rigid tile

FiniteSet rigid_tile(const std::vector<std::int64_t>& N, std::vector<std::int64_t> bumps) {
  const auto k = N.size();
  if (k == 0) throw DimensionMismatch("need at least one coordinate");
  if (bumps.empty()) bumps.assign(k, 2);
  if (bumps.size() != k) throw DimensionMismatch("one bump per coordinate");
  for (std::size_t j = 0; j < k; ++j)
    if (N[j] < 5 || bumps[j] < 2 || bumps[j] > N[j] - 3)
      throw BadBumpPosition("need N_j >= 5 and 2 <= n_j <= N_j - 3");
  const auto g = ExplicitGroup::lattice(static_cast<int>(k));
  std::vector<GroupElement> pts;
  GroupElement p(k, 0);
  while (true) {
    pts.push_back(p);
    std::size_t i = 0;
    while (i < k && ++p[i] == N[i]) p[i++] = 0;
    if (i == k) break;
  }
  for (std::size_t j = 0; j < k; ++j) {
    auto q = bumps;
    q[j] = 0;
    pts.erase(std::find(pts.begin(), pts.end(), q));
    q[j] = N[j];
    pts.push_back(q);
  }
  return FiniteSet(g, std::move(pts));
}

// ----------------------------------------------------- functional -> tilings (Z^d)

GroupElement ZdFunctionalTiling::embed(const GroupElement& n, std::int64_t z, const GroupElement& y) const {
  const auto r = static_cast<std::size_t>(source.domain.free_rank());
  GroupElement e(n.begin(), n.begin() + static_cast<std::ptrdiff_t>(r));
  e.push_back(z);
  e.insert(e.end(), y.begin(), y.end());
  e.insert(e.end(), n.begin() + static_cast<std::ptrdiff_t>(r), n.end());
  return system.group.normalize(std::move(e));
}

Torus ZdFunctionalTiling::torus_for(const std::vector<std::int64_t>& domain_torus, std::int64_t z_copies,
                                    std::int64_t lattice_copies) const {
  Torus t{domain_torus};
  t.moduli.push_back(N * z_copies);
  for (auto m : moduli) t.moduli.push_back(m * lattice_copies);
  return t;
}

ZdFunctionalTiling functional_to_tilings_zd(const FunctionalSystem& fs, std::int64_t N,
                                            std::vector<std::int64_t> bumps, std::uint64_t bound) {
  fs.validate();
  check_stack(fs.J, N);
  const auto& dom = fs.domain;
  const auto& G0 = fs.codomain;
  for (auto m : G0.moduli())
    if (m < 5) throw PreconditionFailed("codomain moduli must be at least 5");
  if (order_of(G0) > bound) throw CostExceeded("functional_to_tilings_zd", "codomain too large to list");

  ZdFunctionalTiling zt;
  zt.source = fs;
  zt.N = N;
  zt.moduli = G0.moduli();
  zt.R = rigid_tile(zt.moduli, std::move(bumps));
  const int r = dom.free_rank();
  const auto k = static_cast<int>(zt.moduli.size());
  zt.system.group = ExplicitGroup(r + 1 + k, dom.moduli());

  std::vector<std::int64_t> periods(static_cast<std::size_t>(r), 1);
  periods.push_back(N);
  periods.insert(periods.end(), zt.moduli.begin(), zt.moduli.end());
  const auto quotient = zt.system.group.torus(periods);
  const auto all = G0.elements();
  const auto torsion = dom.torsion().elements();
  const GroupElement origin = dom.zero();

  auto layer_piece = [&](std::size_t layer) {
    std::vector<GroupElement> pts;
    for (const auto& y : zt.R) pts.push_back(zt.embed(origin, static_cast<std::int64_t>(layer), y));
    return pts;
  };
  auto target = [&](const std::vector<GroupElement>& E) {
    std::vector<GroupElement> reps;
    for (const auto& t : torsion) {
      GroupElement n(static_cast<std::size_t>(r), 0);
      n.insert(n.end(), t.begin(), t.end());
      for (const auto& y : E) reps.push_back(zt.embed(n, 0, y));
      for (std::size_t l = 1; l <= fs.J; ++l)
        for (const auto& y : all) reps.push_back(zt.embed(n, static_cast<std::int64_t>(l), y));
    }
    return PeriodicSet(zt.system.group, periods, FiniteSet(quotient, std::move(reps)));
  };

  std::uint64_t cost = 0;
  for (const auto& e : fs.equations) {
    TilingEquation te;
    for (std::size_t j = 0; j < fs.J; ++j) {
      check_distinct(e.H[j]);
      auto F = listing(e.F[j], bound, "functional_to_tilings_zd");
      auto pts = layer_piece(j + 1);
      for (const auto& h : e.H[j])
        for (const auto& y : F) pts.push_back(zt.embed(dom.neg(h), 0, y));
      cost += pts.size();
      if (cost > bound) throw CostExceeded("functional_to_tilings_zd", "tiles too large");
      te.tiles.emplace_back(zt.system.group, std::move(pts));
    }
    te.target = target(listing(e.E, bound, "functional_to_tilings_zd").elements());
    zt.system.equations.push_back(std::move(te));
  }
  for (const auto& sigma : permutations(fs.J)) {
    TilingEquation te;
    for (std::size_t j = 0; j < fs.J; ++j) te.tiles.emplace_back(zt.system.group, layer_piece(sigma[j] + 1));
    te.target = target({});
    zt.system.equations.push_back(std::move(te));
  }
  return zt;
}

namespace {

struct ZdTorus {
  std::vector<std::int64_t> domain;  // free moduli of the domain
  std::int64_t z;
  std::vector<std::int64_t> lattice;
};

ZdTorus split_torus(const ZdFunctionalTiling& zt, const Torus& t) {
  const auto r = static_cast<std::size_t>(zt.source.domain.free_rank());
  const auto k = zt.moduli.size();
  if (t.moduli.size() != r + 1 + k) throw DimensionMismatch("torus rank");
  ZdTorus s{{t.moduli.begin(), t.moduli.begin() + static_cast<std::ptrdiff_t>(r)}, t.moduli[r],
            {t.moduli.begin() + static_cast<std::ptrdiff_t>(r) + 1, t.moduli.end()}};
  if (s.z % zt.N != 0) throw RegionIncompatible("stacking modulus must be a multiple of N");
  for (std::size_t i = 0; i < k; ++i)
    if (s.lattice[i] % zt.moduli[i] != 0) throw RegionIncompatible("lattice moduli must be multiples of N_i");
  return s;
}

}  // namespace

Assignment zd_forward(const ZdFunctionalTiling& zt, const FunctionTable& f, const Torus& torus) {
  const auto s = split_torus(zt, torus);
  if (f.torus != s.domain) throw DimensionMismatch("function table torus does not match");
  const auto tg = zt.system.group.torus(torus.moduli);
  const auto cg = f.cells_group();
  const auto k = zt.moduli.size();
  std::vector<std::int64_t> copies(k);
  for (std::size_t i = 0; i < k; ++i) copies[i] = s.lattice[i] / zt.moduli[i];
  Assignment a;
  for (const auto& fj : f.f) {
    std::vector<GroupElement> pts;
    for (std::size_t c = 0; c < cg.order(); ++c) {
      const auto n = cg.element_at(c);
      for (std::int64_t z = 0; z < s.z; z += zt.N) {
        std::vector<std::int64_t> q(k, 0);
        while (true) {
          GroupElement y(k);
          for (std::size_t i = 0; i < k; ++i) y[i] = fj[c][i] + q[i] * zt.moduli[i];
          pts.push_back(zt.embed(n, z, y));
          std::size_t i = 0;
          while (i < k && ++q[i] == copies[i]) q[i++] = 0;
          if (i == k) break;
        }
      }
    }
    a.sets.emplace_back(tg, std::move(pts));
  }
  return a;
}

FunctionTable zd_backward(const ZdFunctionalTiling& zt, const Assignment& a, const Torus& torus) {
  const auto s = split_torus(zt, torus);
  if (a.sets.size() != zt.source.J) throw DimensionMismatch("one set per unknown");
  FunctionTable out{zt.source.domain, s.domain, {}};
  const auto cg = out.cells_group();
  const auto r = static_cast<std::size_t>(zt.source.domain.free_rank());
  const auto k = zt.moduli.size();
  std::int64_t per_fiber = 1;
  for (std::size_t i = 0; i < k; ++i) per_fiber *= s.lattice[i] / zt.moduli[i];
  for (const auto& set : a.sets) {
    std::vector<GroupElement> fj(cg.order());
    std::vector<std::int64_t> seen(cg.order(), 0);
    for (const auto& x : set) {
      if (mod(x[r], zt.N) != 0) throw NotASolution("point off the stacking lattice: " + to_string(x));
      if (x[r] != 0) continue;
      GroupElement n(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(r));
      n.insert(n.end(), x.begin() + static_cast<std::ptrdiff_t>(r + 1 + k), x.end());
      GroupElement y(k);
      for (std::size_t i = 0; i < k; ++i) y[i] = mod(x[r + 1 + i], zt.moduli[i]);
      const auto c = cg.index_of(cg.normalize(n));
      if (seen[c]++ == 0)
        fj[c] = y;
      else if (fj[c] != y)
        throw NotASolution("slice over " + to_string(n) + " is not a single coset");
    }
    for (std::size_t c = 0; c < seen.size(); ++c)
      if (seen[c] != per_fiber) throw NotASolution("slice over " + to_string(cg.element_at(c)) + " is not a coset");
    out.f.push_back(std::move(fj));
  }
  return out;
}

}  // namespace tileforge
