#include "tileforge/solver/solver.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "tileforge/solver/sat.hpp"

namespace tileforge {
namespace {

// Exactly one of `cover` (at most none when the cell is outside the target).
// Long at-most-one constraints use a sequential counter with auxiliary
// variables numbered after the placements.
void add_exactly(std::vector<std::vector<int>>& clauses, int& num_vars, std::vector<int> cover, bool in_target) {
  std::sort(cover.begin(), cover.end());
  std::vector<int> distinct;
  for (std::size_t i = 0; i < cover.size(); ++i) {
    if (i + 1 < cover.size() && cover[i] == cover[i + 1]) {
      // A placement listed twice covers the cell twice: it cannot be used.
      clauses.push_back({-cover[i]});
      while (i + 1 < cover.size() && cover[i + 1] == cover[i]) ++i;
      continue;
    }
    distinct.push_back(cover[i]);
  }
  if (!in_target) {
    for (int v : distinct) clauses.push_back({-v});
    return;
  }
  auto alo = cover;
  alo.erase(std::unique(alo.begin(), alo.end()), alo.end());
  clauses.push_back(alo);
  const auto k = distinct.size();
  if (k <= 8) {
    for (std::size_t i = 0; i + 1 < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) clauses.push_back({-distinct[i], -distinct[j]});
    return;
  }
  int prev = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const int x = distinct[i];
    if (prev) clauses.push_back({-x, -prev});
    if (i + 1 == k) break;
    const int s = ++num_vars;
    clauses.push_back({-x, s});
    if (prev) clauses.push_back({-prev, s});
    prev = s;
  }
}

CnfInstance encode_torus(const TilingSystem& sys, const Torus& torus, std::uint64_t max_vars) {
  check_torus(sys, torus);
  const auto tg = sys.group.torus(torus.moduli);
  const auto n = tg.order();
  const auto J = sys.num_unknowns();
  if (static_cast<double>(n) * static_cast<double>(J) > static_cast<double>(max_vars))
    throw CostExceeded("encode", std::to_string(n * J) + " placements exceed the variable bound");
  CnfInstance cnf;
  cnf.num_unknowns = J;
  cnf.placement_group = tg;
  cnf.num_vars = static_cast<int>(n * J);
  for (std::size_t j = 0; j < J; ++j)
    for (std::size_t a = 0; a < n; ++a) cnf.var_map.push_back({j, tg.element_at(a)});
  for (const auto& eq : sys.equations) {
    std::vector<std::vector<int>> cover(n);
    for (std::size_t j = 0; j < J; ++j) {
      std::vector<GroupElement> offsets;
      for (const auto& f : eq.tiles[j]) offsets.push_back(reduce_to_torus(sys.group, f, torus.moduli));
      for (std::size_t a = 0; a < n; ++a) {
        auto ea = tg.element_at(a);
        for (const auto& f : offsets)
          cover[tg.index_of(tg.add(ea, f))].push_back(static_cast<int>(j * n + a + 1));
      }
    }
    auto target = eq.target.restrict_to_torus(torus.moduli);
    std::vector<char> in(n, 0);
    for (const auto& e : target) in[tg.index_of(e)] = 1;
    for (std::size_t c = 0; c < n; ++c) add_exactly(cnf.clauses, cnf.num_vars, std::move(cover[c]), in[c]);
  }
  return cnf;
}

CnfInstance encode_window(const TilingSystem& sys, const Window& w, std::uint64_t max_vars) {
  const auto& g = sys.group;
  const int d = g.free_rank();
  if (w.lo.size() != static_cast<std::size_t>(d) || w.hi.size() != static_cast<std::size_t>(d))
    throw RegionIncompatible("window needs one range per free coordinate");
  std::vector<std::int64_t> side(d), fmin(d, 0), fmax(d, 0);
  for (int i = 0; i < d; ++i) {
    if (w.hi[i] < w.lo[i]) throw RegionIncompatible("empty window");
    side[i] = w.hi[i] - w.lo[i] + 1;
  }
  bool seen = false;
  for (const auto& eq : sys.equations)
    for (const auto& f : eq.tiles)
      for (const auto& e : f) {
        for (int i = 0; i < d; ++i) {
          fmin[i] = seen ? std::min(fmin[i], e[i]) : e[i];
          fmax[i] = seen ? std::max(fmax[i], e[i]) : e[i];
        }
        seen = true;
      }
  const auto cells = g.torus(side);
  const auto ncell = cells.order();
  // Candidate positions: free coords in [lo - fmax, hi - fmin], any torsion.
  std::vector<std::int64_t> pside(d);
  for (int i = 0; i < d; ++i) pside[i] = side[i] + fmax[i] - fmin[i];
  const auto pgrid = g.torus(pside);
  const auto J = sys.num_unknowns();
  if (static_cast<double>(pgrid.order()) * static_cast<double>(J) > static_cast<double>(max_vars))
    throw CostExceeded("encode", "window placements exceed the variable bound");

  auto cell_of = [&](const GroupElement& x) -> std::optional<std::size_t> {
    GroupElement c = x;
    for (int i = 0; i < d; ++i) {
      if (x[i] < w.lo[i] || x[i] > w.hi[i]) return std::nullopt;
      c[i] = x[i] - w.lo[i];
    }
    return cells.index_of(c);
  };

  CnfInstance cnf;
  cnf.num_unknowns = J;
  cnf.placement_group = g;
  std::vector<std::vector<std::vector<int>>> cover(sys.equations.size(),
                                                   std::vector<std::vector<int>>(ncell));
  for (std::size_t j = 0; j < J; ++j)
    for (std::size_t p = 0; p < pgrid.order(); ++p) {
      auto a = pgrid.element_at(p);
      for (int i = 0; i < d; ++i) a[i] += w.lo[i] - fmax[i];
      std::vector<std::pair<std::size_t, std::size_t>> hits;
      for (std::size_t m = 0; m < sys.equations.size(); ++m)
        for (const auto& f : sys.equations[m].tiles[j])
          if (auto c = cell_of(g.add(a, f))) hits.emplace_back(m, *c);
      if (hits.empty()) continue;
      cnf.var_map.push_back({j, a});
      int v = ++cnf.num_vars;
      for (auto [m, c] : hits) cover[m][c].push_back(v);
    }
  for (std::size_t m = 0; m < sys.equations.size(); ++m)
    for (std::size_t c = 0; c < ncell; ++c) {
      auto x = cells.element_at(c);
      for (int i = 0; i < d; ++i) x[i] += w.lo[i];
      add_exactly(cnf.clauses, cnf.num_vars, std::move(cover[m][c]), sys.equations[m].target.contains(x));
    }
  return cnf;
}

}  // namespace

CnfInstance encode(const TilingSystem& system, const Region& region, std::uint64_t max_vars) {
  system.validate();
  if (auto* t = std::get_if<Torus>(&region)) return encode_torus(system, *t, max_vars);
  return encode_window(system, std::get<Window>(region), max_vars);
}

std::optional<std::vector<bool>> solve(const CnfInstance& cnf, std::uint64_t seed) {
  SatSolver s(cnf.num_vars, seed);
  for (const auto& c : cnf.clauses) s.add_clause(c);
  return s.solve();
}

Assignment decode(const CnfInstance& cnf, const std::vector<bool>& model) {
  std::vector<std::vector<GroupElement>> sets(cnf.num_unknowns);
  for (int v = 1; v <= static_cast<int>(cnf.var_map.size()); ++v)
    if (model.at(v)) sets[cnf.var_map[v - 1].tile].push_back(cnf.var_map[v - 1].position);
  Assignment a;
  for (auto& s : sets) a.sets.emplace_back(cnf.placement_group, std::move(s));
  return a;
}

std::vector<Assignment> enumerate_solutions(const TilingSystem& system, const Torus& torus,
                                            std::size_t cap, std::uint64_t seed) {
  auto cnf = encode(system, torus);
  SatSolver s(cnf.num_vars, seed);
  for (const auto& c : cnf.clauses) s.add_clause(c);
  std::vector<Assignment> out;
  while (auto model = s.solve()) {
    auto a = decode(cnf, *model);
    if (!verify(system, a, torus).ok) throw std::logic_error("decoded model fails verification");
    if (out.size() == cap) {
      std::sort(out.begin(), out.end());
      throw CapExceeded(std::move(out), cap);
    }
    out.push_back(std::move(a));
    std::vector<int> block;
    const int placements = static_cast<int>(cnf.var_map.size());
    block.reserve(placements);
    for (int v = 1; v <= placements; ++v) block.push_back((*model)[v] ? -v : v);
    s.add_clause(block);
  }
  std::sort(out.begin(), out.end());
  return out;
}

SearchVerdict dual_search(const TilingSystem& system, int budget, std::uint64_t seed) {
  system.validate();
  const int d = system.group.free_rank();
  const auto r = system.target_periods();
  for (int k = 1; k <= budget; ++k) {
    // (a) periodic search over the new torus shapes of this round.
    std::vector<std::vector<std::int64_t>> shapes;
    std::vector<std::int64_t> m(d, 1);
    while (true) {
      auto mx = d == 0 ? 1 : *std::max_element(m.begin(), m.end());
      if (mx == k + 1 || (k == 1 && mx == 1)) shapes.push_back(m);
      int i = d - 1;
      while (i >= 0 && m[i] == k + 1) m[i--] = 1;
      if (i < 0) break;
      ++m[i];
    }
    std::stable_sort(shapes.begin(), shapes.end(), [](const auto& a, const auto& b) {
      std::int64_t pa = 1, pb = 1;
      for (auto x : a) pa *= x;
      for (auto x : b) pb *= x;
      return pa < pb;
    });
    for (const auto& s : shapes) {
      Torus t{s};
      for (int i = 0; i < d; ++i) t.moduli[i] *= r[i];
      auto cnf = encode(system, t);
      if (auto model = solve(cnf, seed)) {
        auto a = decode(cnf, *model);
        if (!verify(system, a, t).ok) throw std::logic_error("periodic witness fails verification");
        return Satisfiable{std::move(a), std::move(t), k};
      }
    }
    // (b) refutation on the window [-k, k]^d.
    Window w{std::vector<std::int64_t>(d, -k), std::vector<std::int64_t>(d, k), 0};
    if (!solve(encode(system, w), seed)) return Unsatisfiable{std::move(w), k};
  }
  return Exhausted{budget};
}

std::string to_dimacs(const CnfInstance& cnf) {
  std::ostringstream os;
  os << "p cnf " << cnf.num_vars << ' ' << cnf.clauses.size() << '\n';
  for (const auto& c : cnf.clauses) {
    for (int l : c) os << l << ' ';
    os << "0\n";
  }
  return os.str();
}

}  // namespace tileforge
