#pragma once
// Brute-force oracles for the intermediate systems: each builds a CSP whose
// solutions are the torus solutions, read straight off the definitions
// (no UnionChecker, no SAT). Variables are cell-major so that constraints
// close early.
#include <map>
#include <memory>
#include <set>

#include "tileforge/reduct/csp.hpp"
#include "tileforge/reduct/ir.hpp"

namespace tileforge::testing {

inline std::vector<std::size_t> shifted(const ExplicitGroup& full, const std::vector<std::int64_t>& torus,
                                        const GroupElement& h) {
  const auto tg = full.torus(torus);
  std::vector<std::size_t> out(tg.order());
  for (std::size_t c = 0; c < out.size(); ++c) {
    auto x = tg.element_at(c);
    for (std::size_t i = 0; i < h.size(); ++i) x[i] += h[i];
    out[c] = tg.index_of(tg.normalize(x));
  }
  return out;
}

inline std::size_t cell_count(const std::vector<std::int64_t>& torus) {
  std::size_t n = 1;
  for (auto p : torus) n *= static_cast<std::size_t>(p);
  return n;
}

// Boolean functions with `rows` rows: variable n*rows + k is f_k(n), value 1 <-> -1.
inline BoolFunctions bits_of(const std::vector<int>& v, std::size_t rows, const std::vector<std::int64_t>& torus) {
  BoolFunctions b = BoolFunctions::constant(torus, rows);
  for (std::size_t n = 0; n < b.cells(); ++n)
    for (std::size_t k = 0; k < rows; ++k) b.f[k][n] = v[n * rows + k] ? -1 : 1;
  return b;
}

inline Csp bool_vars(std::size_t rows, std::size_t cells) {
  Csp c;
  for (std::size_t i = 0; i < rows * cells; ++i) c.add_var(2);
  return c;
}

inline Csp boolean_csp(const BooleanLocalSystem& s, const std::vector<std::int64_t>& torus) {
  const auto n = cell_count(torus);
  const auto D = static_cast<std::size_t>(s.D);
  const auto L = s.L();
  Csp c = bool_vars(D, n);
  std::vector<std::vector<std::size_t>> nx;
  for (const auto& h : s.shifts) nx.push_back(shifted(ExplicitGroup::lattice(s.rank()), torus, h));
  auto omega = std::make_shared<std::set<std::uint64_t>>(s.omega.begin(), s.omega.end());
  for (std::size_t x = 0; x < n; ++x) {
    CspConstraint con;
    for (std::size_t d = 0; d < D; ++d)
      for (std::size_t l = 0; l < L; ++l) con.scope.push_back(static_cast<int>(nx[l][x] * D + d));
    con.ok = [omega](std::span<const int> v) {
      std::uint64_t t = 0;
      for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i]) t |= 1ull << i;
      return omega->count(t) > 0;
    };
    c.constraints.push_back(std::move(con));
  }
  return c;
}

inline Csp antipode_csp(const AntipodeSystem& s, const std::vector<std::int64_t>& torus) {
  const auto n = cell_count(torus);
  const auto D0 = static_cast<std::size_t>(s.D0);
  Csp c = bool_vars(2 * D0, n);
  const auto r = static_cast<int>(s.shifts[0].size());
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t j = 0; j < 2; ++j) {
      CspConstraint con;
      for (std::size_t d = 0; d < D0; ++d) con.scope.push_back(static_cast<int>(x * 2 * D0 + j * D0 + d));
      auto bad = std::make_shared<std::set<std::vector<int>>>();
      for (auto e : s.forbidden[j]) {
        std::vector<int> a(D0), b(D0);
        for (std::size_t d = 0; d < D0; ++d) {
          a[d] = mask_entry(e, d) < 0;
          b[d] = 1 - a[d];
        }
        bad->insert(a);
        bad->insert(b);
      }
      con.ok = [bad](std::span<const int> v) { return !bad->count({v.begin(), v.end()}); };
      c.constraints.push_back(std::move(con));
    }
  for (std::size_t d = 0; d < D0; ++d) {
    auto nx = shifted(ExplicitGroup::lattice(r), torus, s.shifts[d]);
    for (std::size_t x = 0; x < n; ++x)
      c.constraints.push_back({{static_cast<int>(x * 2 * D0 + d), static_cast<int>(nx[x] * 2 * D0 + D0 + d)},
                               [](std::span<const int> v) { return v[0] != v[1]; }});
  }
  return c;
}

inline Csp linear_csp(const LinearBooleanSystem& s, const std::vector<std::int64_t>& torus) {
  const auto n = cell_count(torus);
  const auto D = static_cast<std::size_t>(s.D);
  Csp c = bool_vars(2 * D, n);
  const auto r = static_cast<int>(s.shifts[0].size());
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t j = 0; j < 2; ++j)
      for (const auto& row : s.coeffs[j]) {
        CspConstraint con;
        std::vector<std::int64_t> a;
        for (std::size_t d = 0; d < D; ++d)
          if (row[d] != 0) {
            con.scope.push_back(static_cast<int>(x * 2 * D + j * D + d));
            a.push_back(row[d]);
          }
        con.ok = [a](std::span<const int> v) {
          std::int64_t sum = 0;
          for (std::size_t i = 0; i < v.size(); ++i) sum += a[i] * (v[i] ? -1 : 1);
          return sum == 0;
        };
        c.constraints.push_back(std::move(con));
      }
  for (std::size_t d = 0; d < static_cast<std::size_t>(s.D0); ++d) {
    auto nx = shifted(ExplicitGroup::lattice(r), torus, s.shifts[d]);
    for (std::size_t x = 0; x < n; ++x)
      c.constraints.push_back({{static_cast<int>(x * 2 * D + d), static_cast<int>(nx[x] * 2 * D + D + d)},
                               [](std::span<const int> v) { return v[0] != v[1]; }});
  }
  return c;
}

// Disjoint-union check by listing the whole (small) codomain.
inline bool covers_exactly(const ExplicitGroup& G0, const std::vector<const StructuredSet*>& F,
                           const std::vector<GroupElement>& shifts, const StructuredSet& E) {
  for (const auto& y : G0.elements()) {
    int k = 0;
    for (std::size_t i = 0; i < F.size(); ++i) k += F[i]->contains(G0.sub(y, shifts[i]));
    if (k != (E.contains(y) ? 1 : 0)) return false;
  }
  return true;
}

inline Csp hamming_csp(const HammingSystem& s, const std::vector<std::int64_t>& torus) {
  const auto n = cell_count(torus);
  const auto D = static_cast<std::size_t>(s.D);
  Csp c = bool_vars(2 * D, n);
  const auto G0 = s.cube_group();
  const auto N = s.N;
  for (const auto& e : s.equations) {
    auto n1 = shifted(ExplicitGroup::lattice(s.rank), torus, e.h1);
    auto n2 = shifted(ExplicitGroup::lattice(s.rank), torus, e.h2);
    for (std::size_t x = 0; x < n; ++x) {
      CspConstraint con;
      for (std::size_t d = 0; d < D; ++d) con.scope.push_back(static_cast<int>(n1[x] * 2 * D + d));
      for (std::size_t d = 0; d < D; ++d) con.scope.push_back(static_cast<int>(n2[x] * 2 * D + D + d));
      // The verdict depends only on the values in scope: memoize it.
      auto memo = std::make_shared<std::map<std::vector<int>, bool>>();
      con.ok = [e, G0, D, N, memo](std::span<const int> v) {
        std::vector<int> key(v.begin(), v.end());
        if (auto it = memo->find(key); it != memo->end()) return it->second;
        bool good = true;
        for (int eps : {1, -1}) {
          GroupElement y1(D), y2(D);
          for (std::size_t d = 0; d < D; ++d) {
            y1[d] = mod(eps * (v[d] ? -1 : 1), N);
            y2[d] = mod(eps * (v[D + d] ? -1 : 1), N);
          }
          good = good && covers_exactly(G0, {&e.F1, &e.F2}, {y1, y2}, e.E);
        }
        return (*memo)[key] = good;
      };
      c.constraints.push_back(std::move(con));
    }
  }
  return c;
}

// Functional: variable cell*J + j ranges over the codomain elements.
inline Csp functional_csp(const FunctionalSystem& s, const std::vector<std::int64_t>& torus) {
  const auto tg = s.domain.torus(torus);
  const auto n = tg.order();
  const auto J = s.J;
  const auto G0 = s.codomain;
  const auto vals = std::make_shared<std::vector<GroupElement>>(G0.elements());
  Csp c;
  for (std::size_t i = 0; i < n * J; ++i) c.add_var(static_cast<int>(vals->size()));
  for (const auto& e : s.equations) {
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> slots;
    for (std::size_t j = 0; j < J; ++j)
      for (const auto& h : e.H[j]) {
        std::vector<std::size_t> nx(n);
        for (std::size_t x = 0; x < n; ++x) nx[x] = tg.index_of(tg.normalize(tg.add(tg.element_at(x), reduce_to_torus(s.domain, h, torus))));
        slots.emplace_back(j, std::move(nx));
      }
    auto eq = std::make_shared<FunctionalEquation>(e);
    for (std::size_t x = 0; x < n; ++x) {
      CspConstraint con;
      std::vector<std::size_t> which;
      for (const auto& [j, nx] : slots) {
        con.scope.push_back(static_cast<int>(nx[x] * J + j));
        which.push_back(j);
      }
      con.ok = [eq, G0, vals, which](std::span<const int> v) {
        std::vector<const StructuredSet*> F;
        std::vector<GroupElement> sh;
        for (std::size_t i = 0; i < v.size(); ++i) {
          F.push_back(&eq->F[which[i]]);
          sh.push_back((*vals)[v[i]]);
        }
        return covers_exactly(G0, F, sh, eq->E);
      };
      c.constraints.push_back(std::move(con));
    }
  }
  return c;
}

inline FunctionTable table_of(const FunctionalSystem& s, const std::vector<int>& v,
                              const std::vector<std::int64_t>& torus) {
  FunctionTable t{s.domain, torus, {}};
  const auto n = t.cells_group().order();
  const auto vals = s.codomain.elements();
  t.f.assign(s.J, std::vector<GroupElement>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t j = 0; j < s.J; ++j) t.f[j][x] = vals[v[x * s.J + j]];
  return t;
}

template <class Make>
auto all_solutions(const Csp& c, Make make) {
  std::vector<decltype(make(std::vector<int>{}))> out;
  csp_enumerate(c, [&](const std::vector<int>& v) {
    out.push_back(make(v));
    return true;
  });
  return out;
}

}  // namespace tileforge::testing
