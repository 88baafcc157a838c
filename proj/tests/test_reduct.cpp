#include <doctest.h>

#include <map>
#include <set>

#include "reduct_oracles.hpp"
#include "tileforge/error.hpp"
#include "tileforge/reduct/passes.hpp"
#include "tileforge/reduct/pipeline.hpp"
#include "tileforge/solver/solver.hpp"

using namespace tileforge;
using namespace tileforge::testing;

namespace {

using Torus_ = std::vector<std::int64_t>;

const ExplicitGroup Z1 = ExplicitGroup::lattice(1);
const ExplicitGroup Z2 = ExplicitGroup::lattice(2);

FiniteSet pts(const ExplicitGroup& g, std::vector<GroupElement> v) { return FiniteSet(g, std::move(v)); }

// ---- Boolean fixtures
BooleanLocalSystem fx_a() { return {1, {{0, 0}}, {0}}; }             // f = +1
BooleanLocalSystem fx_b() { return {1, {{0, 0}, {1, 0}}, {1, 2}}; }  // f alternates along x
BooleanLocalSystem fx_c() { return {2, {{0, 0}}, {0, 2, 3}}; }       // (f1, f2) != (-1, +1)

std::set<std::vector<std::vector<Sign>>> keys(const std::vector<BoolFunctions>& v) {
  std::set<std::vector<std::vector<Sign>>> s;
  for (const auto& b : v) s.insert(b.f);
  return s;
}

std::vector<BoolFunctions> boolean_solutions(const BooleanLocalSystem& s, const Torus_& t) {
  return all_solutions(boolean_csp(s, t), [&](const std::vector<int>& v) { return bits_of(v, s.D, t); });
}

// Number of cosets of <h_l - h_0> in the torus, by flood fill.
std::size_t window_cosets(const std::vector<GroupElement>& shifts, const Torus_& t) {
  const auto n = cell_count(t);
  std::vector<std::vector<std::size_t>> nx;
  for (const auto& h : shifts) {
    auto d = h;
    for (std::size_t i = 0; i < d.size(); ++i) d[i] -= shifts[0][i];
    nx.push_back(shifted(Z2, t, d));
    for (auto& x : d) x = -x;
    nx.push_back(shifted(Z2, t, d));
  }
  std::vector<int> seen(n, 0);
  std::size_t cosets = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    ++cosets;
    std::vector<std::size_t> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      auto x = stack.back();
      stack.pop_back();
      for (const auto& m : nx)
        if (!seen[m[x]]) seen[m[x]] = 1, stack.push_back(m[x]);
    }
  }
  return cosets;
}

std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::set<Assignment> as_set(const std::vector<Assignment>& v) { return {v.begin(), v.end()}; }

std::vector<Assignment> sat_solutions(const TilingSystem& s, const Torus_& t, std::size_t cap = 4096) {
  return enumerate_solutions(s, Torus{t}, cap);
}

// ---- functional fixtures
FunctionalSystem tilex() {  // f(n) + f(n+1) = {-1, 1} in Z_5
  const auto G0 = ExplicitGroup::finite({5});
  return {Z1, G0, 1, {{{{{0}, {1}}}, {StructuredSet::from_finite(pts(G0, {{0}}))},
                       StructuredSet::from_finite(pts(G0, {{1}, {4}}))}}};
}

FunctionalSystem no_equations() { return {Z1, ExplicitGroup::finite({2}), 2, {}}; }

FunctionalSystem wrong_cardinality() {  // |F| |H| = 1 but |E| = 2
  const auto G0 = ExplicitGroup::finite({5});
  return {Z1, G0, 1, {{{{{0}}}, {StructuredSet::from_finite(pts(G0, {{0}}))},
                       StructuredSet::from_finite(pts(G0, {{1}, {2}}))}}};
}

// Linear Boolean system with no equations: f_2(n + (1,0)) = -f_1(n).
LinearBooleanSystem bare_pairing() {
  LinearBooleanSystem ls;
  ls.D = ls.D0 = 1;
  ls.shifts = {{1, 0}};
  return ls;
}

std::set<std::vector<std::vector<GroupElement>>> table_keys(const std::vector<FunctionTable>& v) {
  std::set<std::vector<std::vector<GroupElement>>> s;
  for (const auto& t : v) s.insert(t.f);
  return s;
}

std::vector<FunctionTable> functional_solutions(const FunctionalSystem& s, const Torus_& t) {
  return all_solutions(functional_csp(s, t), [&](const std::vector<int>& v) { return table_of(s, v, t); });
}

}  // namespace

// ============================================================ tileset_to_boolean

TEST_CASE("tileset_to_boolean: domino constraint set") {
  auto tc = tileset_to_boolean({pts(Z2, {{0, 0}, {1, 0}})});
  CHECK(tc.system.D == 1);
  CHECK(tc.system.shifts == std::vector<GroupElement>{{0, 0}, {-1, 0}, {1, 0}});
  // left cell => right neighbour is a right cell; right cell => left neighbour is a left cell
  CHECK(tc.system.omega.size() == 4);
  CHECK_THROWS_AS(tileset_to_boolean({FiniteSet(Z2)}), EmptyTile);
}

TEST_CASE("tileset_to_boolean: colorings <-> tilings") {
  struct Fx {
    std::vector<FiniteSet> tiles;
    Torus_ torus;
  };
  std::vector<Fx> fixtures{
      {{pts(Z2, {{0, 0}, {1, 0}})}, {2, 2}},
      {{pts(Z2, {{0, 0}, {1, 0}})}, {4, 2}},
      {{pts(Z2, {{0, 0}, {1, 0}, {2, 0}})}, {3, 2}},
      {{pts(Z2, {{0, 0}, {1, 0}, {0, 1}})}, {3, 3}},
      {{pts(Z2, {{0, 0}}), pts(Z2, {{0, 0}, {1, 0}})}, {2, 2}},
  };
  for (const auto& fx : fixtures) {
    auto tc = tileset_to_boolean(fx.tiles);
    TilingSystem sys{Z2, {{fx.tiles, PeriodicSet::full(Z2)}}};
    auto tilings = sat_solutions(sys, fx.torus);
    auto colorings = boolean_solutions(tc.system, fx.torus);
    CAPTURE(fx.torus);
    CHECK(tilings.size() == colorings.size());
    std::set<Assignment> back;
    for (const auto& c : colorings) {
      auto a = bits_to_tiling(tc, c);
      CHECK(verify(sys, a, Torus{fx.torus}).ok);
      CHECK(tiling_to_bits(tc, a, fx.torus) == c);
      back.insert(a);
    }
    CHECK(back == as_set(tilings));
    for (const auto& a : tilings) CHECK(satisfies(tc.system, tiling_to_bits(tc, a, fx.torus)));
  }
}

// ============================================================ Boolean -> linear

TEST_CASE("symmetrize: symmetric, doubled, gauge count") {
  for (auto [bs, t] : {std::pair{fx_a(), Torus_{2, 1}}, {fx_b(), Torus_{2, 1}}, {fx_c(), Torus_{2, 1}},
                       {fx_b(), Torus_{4, 2}}}) {
    auto sym = symmetrize(bs);
    CHECK(sym.omega.size() == 2 * bs.omega.size());
    const auto full = (1ull << (sym.D * sym.L())) - 1;
    for (auto w : sym.omega) CHECK(sym.allows(~w & full));
    auto src = boolean_solutions(bs, t);
    auto out = boolean_solutions(sym, t);
    CHECK(out.size() == src.size() << window_cosets(bs.shifts, t));
    std::set<std::vector<std::vector<Sign>>> back;
    for (const auto& f : out) back.insert(symmetrize_backward(f).f);
    CHECK(back == keys(src));
    for (const auto& f : src) {
      CHECK(satisfies(sym, symmetrize_forward(f)));
      CHECK(symmetrize_backward(symmetrize_forward(f)) == f);
    }
  }
}

TEST_CASE("antipode: bijection with symmetric solutions") {
  for (auto [bs, t] : {std::pair{fx_a(), Torus_{2, 1}}, {fx_b(), Torus_{2, 1}}, {fx_c(), Torus_{2, 1}},
                       {fx_b(), Torus_{3, 1}}}) {
    auto sym = symmetrize(bs);
    auto as = to_antipode(sym);
    CHECK(as.D0 == sym.D * static_cast<int>(sym.L()));
    CHECK(as.forbidden[0].size() == (1u << (as.D0 - 1)) - bs.omega.size());
    CHECK(as.forbidden[1].size() == (1u << (as.D0 - 1)) - (1u << bs.D));
    auto src = boolean_solutions(sym, t);
    auto out = all_solutions(antipode_csp(as, t), [&](const std::vector<int>& v) { return bits_of(v, 2 * as.D0, t); });
    CHECK(out.size() == src.size());
    std::set<std::vector<std::vector<Sign>>> back;
    for (const auto& g : out) {
      auto f = antipode_backward(sym, g);
      CHECK(antipode_forward(sym, f) == g);
      back.insert(f.f);
    }
    CHECK(back == keys(src));
  }
  CHECK_THROWS_AS(to_antipode(fx_a()), PreconditionFailed);  // not symmetric
}

TEST_CASE("antipode avoidance <=> bounded sum <=> slack solvable (exhaustive)") {
  std::size_t counterexamples = 0;
  for (int D0 = 2; D0 <= 4; ++D0) {
    const auto S = D0 - 2;
    for (std::uint64_t eps = 0; eps < (1u << D0); ++eps)
      for (std::uint64_t y = 0; y < (1u << D0); ++y) {
        const auto full = (1ull << D0) - 1;
        const bool a = y != eps && y != (~eps & full);
        std::int64_t s = 0;
        for (int d = 0; d < D0; ++d) s += mask_entry(eps, d) * mask_entry(y, d);
        const bool b = -S <= s && s <= S;
        bool c = false;
        for (std::uint64_t z = 0; z < (1u << S); ++z) {
          std::int64_t t = s;
          for (int i = 0; i < S; ++i) t += mask_entry(z, i);
          c = c || t == 0;
        }
        counterexamples += (a != b) + (b != c);
      }
  }
  CHECK(counterexamples == 0);
}

TEST_CASE("boolean_to_linear: counts, images and round trips") {
  struct Fx {
    BooleanLocalSystem bs;
    Torus_ torus;
  };
  for (const auto& fx : {Fx{fx_a(), {2, 1}}, Fx{fx_b(), {2, 1}}, Fx{fx_c(), {2, 1}}, Fx{fx_c(), {1, 1}}}) {
    auto p = boolean_to_linear(fx.bs);
    const auto& as = p.antipode;
    const auto& ls = p.linear;
    const auto D0 = static_cast<std::uint64_t>(as.D0);
    auto src = boolean_solutions(fx.bs, fx.torus);
    auto anti = all_solutions(antipode_csp(as, fx.torus),
                              [&](const std::vector<int>& v) { return bits_of(v, 2 * D0, fx.torus); });
    auto lin = all_solutions(linear_csp(ls, fx.torus),
                             [&](const std::vector<int>& v) { return bits_of(v, 2 * ls.D, fx.torus); });

    // Each antipode solution has prod C(D0-2, (D0-2+s)/2) slack completions,
    // times 2 per slack variable of a family with no forbidden pairs.
    std::uint64_t expect = 0;
    const auto M = std::max(as.forbidden[0].size(), as.forbidden[1].size());
    for (const auto& g : anti) {
      std::uint64_t ways = 1;
      for (std::size_t n = 0; n < g.cells(); ++n)
        for (int j = 0; j < 2; ++j) {
          const auto& fj = as.forbidden[j];
          for (std::size_t m = 0; m < M; ++m) {
            if (fj.empty()) {
              ways <<= D0 - 2;
              continue;
            }
            std::int64_t s = 0;
            for (std::uint64_t d = 0; d < D0; ++d) s += mask_entry(fj[m % fj.size()], d) * g.f[j * D0 + d][n];
            ways *= binom(D0 - 2, static_cast<std::uint64_t>((static_cast<std::int64_t>(D0) - 2 + s) / 2));
          }
        }
      expect += ways;
    }
    CAPTURE(fx.torus);
    CHECK(lin.size() == expect);
    CHECK(anti.size() == src.size() << window_cosets(fx.bs.shifts, fx.torus));

    std::set<std::vector<std::vector<Sign>>> back;
    for (const auto& l : lin) {
      CHECK(satisfies(ls, l));
      back.insert(boolean_to_linear_backward(p, l).f);
    }
    CHECK(back == keys(src));
    auto lk = keys(lin);
    for (const auto& f : src) {
      auto l = boolean_to_linear_forward(p, f);
      CHECK(satisfies(ls, l));
      CHECK(lk.count(l.f) == 1);
      CHECK(boolean_to_linear_backward(p, l) == f);
    }
  }
}

TEST_CASE("boolean_to_linear: pinned sizes") {
  auto pa = boolean_to_linear(fx_a());
  CHECK(pa.linear.D == 2);  // D0 = 2, no slack
  CHECK(pa.linear.coeffs[0] == std::vector<std::vector<std::int64_t>>{{1, -1}});
  CHECK(pa.linear.coeffs[1].empty());

  auto pb = boolean_to_linear(fx_b());
  CHECK(pb.antipode.D0 == 4);
  CHECK(pb.antipode.forbidden[0].size() == 6);
  CHECK(pb.antipode.forbidden[1].size() == 6);
  CHECK(pb.linear.D == 16);
  // 4 antipode solutions, each with 2^8 slack completions
  CHECK(csp_count(linear_csp(pb.linear, {2, 1})) == 1024);

  auto pc = boolean_to_linear(fx_c());
  CHECK(pc.antipode.D0 == 3);
  CHECK(pc.antipode.forbidden[0].size() == 1);
  CHECK(pc.antipode.forbidden[1].empty());  // its slack stays free
  CHECK(pc.linear.D == 4);

  BooleanLocalSystem wide{8, {{0, 0}, {1, 0}, {2, 0}}, {0}};
  try {
    boolean_to_linear(wide);
    FAIL("expected CostExceeded");
  } catch (const CostExceeded& e) {
    CHECK(e.stage() == "boolean_to_linear");
  }
}

// ============================================================ linear -> Hamming

TEST_CASE("linear_to_hamming: modulus rule") {
  CHECK(linear_to_hamming(bare_pairing()).N == 4);
  CHECK(linear_to_hamming(boolean_to_linear(fx_a()).linear).N == 4);   // max sum 2
  CHECK(linear_to_hamming(boolean_to_linear(fx_c()).linear).N == 8);   // max sum 4
  CHECK(linear_to_hamming(boolean_to_linear(fx_b()).linear).N == 8);   // max sum 6
  CHECK(linear_to_hamming(bare_pairing(), 5).N == 8);
  auto hs = linear_to_hamming(boolean_to_linear(fx_c()).linear);
  CHECK(hs.equations.size() == 1 + 3);  // one row plus D0 pairings
}

TEST_CASE("linear_to_hamming: same solutions") {
  struct Fx {
    LinearBooleanSystem ls;
    Torus_ torus;
  };
  for (const auto& fx : {Fx{bare_pairing(), {2, 1}}, Fx{bare_pairing(), {3, 1}},
                         Fx{boolean_to_linear(fx_a()).linear, {2, 1}},
                         Fx{boolean_to_linear(fx_c()).linear, {2, 1}}}) {
    auto hs = linear_to_hamming(fx.ls);
    const auto rows = 2 * static_cast<std::size_t>(fx.ls.D);
    auto lin = all_solutions(linear_csp(fx.ls, fx.torus), [&](const std::vector<int>& v) { return bits_of(v, rows, fx.torus); });
    auto ham = all_solutions(hamming_csp(hs, fx.torus), [&](const std::vector<int>& v) { return bits_of(v, rows, fx.torus); });
    CAPTURE(fx.torus);
    CHECK(!lin.empty());
    CHECK(keys(lin) == keys(ham));
    for (const auto& f : lin) CHECK(satisfies(hs, f));
  }
}

// ======================================================= Hamming -> functional

TEST_CASE("hamming_to_functional: lift/extract equivalence") {
  struct Fx {
    HammingSystem hs;
    Torus_ torus;
  };
  auto ha = linear_to_hamming(boolean_to_linear(fx_a()).linear);
  auto hb = linear_to_hamming(bare_pairing());
  for (const auto& fx : {Fx{hb, {2, 1}}, Fx{hb, {3, 1}}, Fx{ha, {1, 1}}, Fx{ha, {2, 1}}}) {
    auto fs = hamming_to_functional(fx.hs);
    CHECK(fs.equations.size() == 2 * static_cast<std::size_t>(fx.hs.D) + fx.hs.equations.size());
    const auto rows = 2 * static_cast<std::size_t>(fx.hs.D);
    auto ham = all_solutions(hamming_csp(fx.hs, fx.torus), [&](const std::vector<int>& v) { return bits_of(v, rows, fx.torus); });
    auto fun = functional_solutions(fs, fx.torus);
    CAPTURE(fx.torus);
    CHECK(ham.size() == fun.size());
    std::set<std::vector<std::vector<Sign>>> back;
    for (const auto& t : fun) {
      CHECK(satisfies(fs, t));
      auto f = hamming_extract(fx.hs, t);
      CHECK(hamming_lift(fx.hs, f) == t);
      back.insert(f.f);
    }
    CHECK(back == keys(ham));
    for (const auto& f : ham) CHECK(satisfies(fs, hamming_lift(fx.hs, f)));
  }
  FunctionTable junk{ExplicitGroup(2, {2}), {1, 1}, {{{0}, {0}}, {{0}, {0}}}};
  CHECK_THROWS_AS(hamming_extract(hb, junk), NotInCube);
}

// ==================================================================== pullback

TEST_CASE("pullback_z2z: Z^r x Z_2 versus Z^(r+1)") {
  auto hb = linear_to_hamming(bare_pairing());
  auto ha = linear_to_hamming(boolean_to_linear(fx_a()).linear);
  struct Fx {
    FunctionalSystem fs;
    Torus_ torus;
  };
  for (const auto& fx : {Fx{hamming_to_functional(hb), {2, 1}}, Fx{hamming_to_functional(hb), {3, 1}},
                         Fx{hamming_to_functional(ha), {1, 1}}}) {
    auto pz = pullback_z2z(fx.fs);
    CHECK(pz.domain == ExplicitGroup::lattice(3));
    auto src = functional_solutions(fx.fs, fx.torus);
    auto t2 = fx.torus;
    t2.push_back(2);
    auto out = functional_solutions(pz, t2);
    CHECK(src.size() == out.size());
    std::vector<FunctionTable> back;
    for (const auto& g : out) {
      auto f = pullback_backward(fx.fs, g);
      CHECK(pullback_forward(pz, f) == g);
      back.push_back(f);
    }
    CHECK(table_keys(back) == table_keys(src));
    for (const auto& f : src) CHECK(satisfies(pz, pullback_forward(pz, f)));
    // a longer period in z changes nothing: the sign equations fix odd slices
    auto t4 = fx.torus;
    t4.push_back(4);
    CHECK(csp_count(functional_csp(pz, t4)) == src.size());
  }
  CHECK_THROWS_AS(pullback_z2z(tilex()), PreconditionFailed);
}

// ======================================================= functional -> tilings

TEST_CASE("functional_to_tilings: solutions are exactly graphs") {
  struct Fx {
    FunctionalSystem fs;
    Torus_ torus;
    std::size_t expect;
  };
  auto hb = hamming_to_functional(linear_to_hamming(bare_pairing()));
  for (const auto& fx : {Fx{tilex(), {4}, 2}, Fx{tilex(), {3}, 0}, Fx{no_equations(), {2}, 16},
                         Fx{wrong_cardinality(), {2}, 0}, Fx{hb, {1, 1}, 2}}) {
    auto ft = functional_to_tilings(fx.fs);
    CHECK(ft.system.equations.size() == fx.fs.equations.size() + (fx.fs.J == 1 ? 1 : 2));
    auto fun = functional_solutions(fx.fs, fx.torus);
    auto til = sat_solutions(ft.system, fx.torus);
    CAPTURE(fx.torus);
    CHECK(fun.size() == fx.expect);
    CHECK(til.size() == fx.expect);
    std::vector<FunctionTable> back;
    for (const auto& a : til) {
      auto t = ungraph(ft, a, fx.torus);
      CHECK(graph_of(ft, t) == a);
      back.push_back(t);
    }
    CHECK(table_keys(back) == table_keys(fun));
    for (const auto& t : fun) CHECK(verify(ft.system, graph_of(ft, t), Torus{fx.torus}).ok);
  }
  CHECK_THROWS_AS(functional_to_tilings(tilex(), 1), BadStackHeight);
  FunctionalSystem five{Z1, ExplicitGroup::finite({2}), 5, {}};
  CHECK_THROWS_AS(functional_to_tilings(five, 9), PreconditionFailed);
  auto domino = compile_two_tiles({pts(Z2, {{0, 0}, {1, 0}})}, {}, Stage::Functional);
  try {
    functional_to_tilings(domino.functional);
    FAIL("expected CostExceeded");
  } catch (const CostExceeded& e) {
    CHECK(e.stage() == "functional_to_tilings");
  }
}

TEST_CASE("functional_to_tilings: ungraph rejects non-graphs") {
  auto ft = functional_to_tilings(tilex());
  auto tg = ft.system.group.torus(std::vector<std::int64_t>{2});
  CHECK_THROWS_AS(ungraph(ft, {{FiniteSet(tg, {{0, 0, 1}, {1, 1, 4}})}}, {2}), NotASolution);
  CHECK_THROWS_AS(ungraph(ft, {{FiniteSet(tg, {{0, 0, 1}, {0, 0, 4}, {1, 0, 4}})}}, {2}), NotASolution);
  CHECK_THROWS_AS(ungraph(ft, {{FiniteSet(tg, {{0, 0, 1}})}}, {2}), NotASolution);
}

// ==================================================================== combine

TEST_CASE("combine: solutions stay in layer 0") {
  const ExplicitGroup zz2(1, {2});
  TilingSystem hand{zz2,
                    {{{pts(zz2, {{0, 0}, {0, 1}})}, PeriodicSet::full(zz2)},
                     {{pts(zz2, {{0, 0}})}, PeriodicSet::cylinder(zz2, {{0}})}}};
  struct Fx {
    TilingSystem sys;
    Torus_ torus;
    std::size_t expect;
  };
  for (const auto& fx : {Fx{functional_to_tilings(tilex()).system, {4}, 2},
                         Fx{functional_to_tilings(no_equations()).system, {2}, 16}, Fx{hand, {3}, 1}}) {
    const auto M = static_cast<std::int64_t>(fx.sys.equations.size());
    auto c = combine(fx.sys, M + 1);
    CHECK(c.equations.size() == 1);
    auto src = sat_solutions(fx.sys, fx.torus);
    auto out = sat_solutions(c, fx.torus);
    CHECK(src.size() == fx.expect);
    CHECK(out.size() == fx.expect);
    std::set<Assignment> back;
    for (const auto& a : out) {
      auto p = combine_project(fx.sys, a, fx.torus);  // throws if anything left layer 0
      CHECK(combine_lift(c, p, fx.torus) == a);
      back.insert(p);
    }
    CHECK(back == as_set(src));
    for (const auto& a : src) CHECK(verify(c, combine_lift(c, a, fx.torus), Torus{fx.torus}).ok);
  }
  CHECK_THROWS_AS(combine(hand, 2), BadStackHeight);
  TilingSystem periodic{Z1, {{{pts(Z1, {{0}})}, PeriodicSet(Z1, 2, pts(ExplicitGroup::finite({2}), {{0}}))}}};
  CHECK_THROWS_AS(combine(periodic, 3), PreconditionFailed);
}

TEST_CASE("combine_zd: stacked lattice system") {
  auto z2mod = [](const ExplicitGroup& g, std::vector<std::int64_t> p, std::vector<GroupElement> reps) {
    return PeriodicSet(g, p, FiniteSet(g.torus(p), std::move(reps)));
  };
  struct Fx {
    TilingSystem sys;
    Torus_ torus;
    std::int64_t N;
    std::size_t expect;
  };
  std::vector<Fx> fixtures{
      {{Z1, {{{pts(Z1, {{0}, {1}})}, PeriodicSet::full(Z1)}, {{pts(Z1, {{0}})}, z2mod(Z1, {2}, {{0}})}}}, {4}, 3, 1},
      {{Z1, {{{pts(Z1, {{0}, {1}})}, PeriodicSet::full(Z1)}}}, {4}, 2, 2},
      {{Z2, {{{pts(Z2, {{0, 0}, {1, 0}})}, PeriodicSet::full(Z2)}}}, {2, 2}, 2, 4},
      {{Z2,
        {{{pts(Z2, {{0, 0}, {1, 0}})}, PeriodicSet::full(Z2)}, {{pts(Z2, {{0, 0}})}, z2mod(Z2, {2, 1}, {{0, 0}})}}},
       {2, 2}, 3, 1},
  };
  for (const auto& fx : fixtures) {
    auto c = combine_zd(fx.sys, fx.N);
    auto st = fx.torus;
    st.push_back(fx.N);
    auto src = sat_solutions(fx.sys, fx.torus);
    auto out = sat_solutions(c, st);
    CAPTURE(fx.torus);
    CHECK(src.size() == fx.expect);
    CHECK(out.size() == fx.expect);
    std::set<Assignment> back;
    for (const auto& a : out) {
      auto p = combine_zd_project(fx.sys, a, st, fx.N);
      CHECK(combine_zd_lift(c, p, fx.torus, fx.N) == a);
      back.insert(p);
    }
    CHECK(back == as_set(src));
    for (const auto& a : src) {
      CHECK(verify(c, combine_zd_lift(c, a, fx.torus, fx.N), Torus{st}).ok);
      auto st2 = fx.torus;
      st2.push_back(2 * fx.N);
      CHECK(verify(c, combine_zd_lift(c, a, fx.torus, fx.N, 2), Torus{st2}).ok);
    }
  }
  CHECK_THROWS_AS(combine_zd(fixtures[0].sys, 2), BadStackHeight);
}

// ================================================================= rigid tile

TEST_CASE("rigid tile: shape and tilings") {
  CHECK(rigid_tile({5}) == pts(Z1, {{1}, {2}, {3}, {4}, {5}}));
  auto R2 = rigid_tile({5, 6}, {2, 3});
  CHECK(R2.size() == 30);
  CHECK(!R2.contains({0, 3}));
  CHECK(R2.contains({5, 3}));
  CHECK(!R2.contains({2, 0}));
  CHECK(R2.contains({2, 6}));
  CHECK_THROWS_AS(rigid_tile({4}), BadBumpPosition);
  CHECK_THROWS_AS(rigid_tile({6}, {1}), BadBumpPosition);
  CHECK_THROWS_AS(rigid_tile({6}, {4}), BadBumpPosition);

  TilingSystem one{Z1, {{{rigid_tile({5})}, PeriodicSet::full(Z1)}}};
  auto sols = sat_solutions(one, {10});
  CHECK(sols.size() == 5);
  for (const auto& a : sols) {
    auto x = a.sets[0].elements().at(0)[0];
    CHECK(a.sets[0] == pts(ExplicitGroup::finite({10}), {{x}, {x + 5}}));
  }
}

// ==================================================== functional -> tilings (Z^d)

TEST_CASE("functional_to_tilings_zd: rigid encoding of the codomain") {
  struct Fx {
    FunctionalSystem fs;
    Torus_ torus;
    std::size_t expect;
  };
  FunctionalSystem free5{Z1, ExplicitGroup::finite({5}), 1, {}};
  for (const auto& fx : {Fx{tilex(), {4}, 2}, Fx{free5, {1}, 5}, Fx{wrong_cardinality(), {2}, 0}}) {
    auto zt = functional_to_tilings_zd(fx.fs);
    CHECK(zt.system.group == ExplicitGroup::lattice(3));
    auto fun = functional_solutions(fx.fs, fx.torus);
    for (std::int64_t q : {1, 2}) {
      auto torus = zt.torus_for(fx.torus, 1, q);
      auto til = sat_solutions(zt.system, torus.moduli);
      CAPTURE(q);
      CHECK(fun.size() == fx.expect);
      CHECK(til.size() == fx.expect);
      std::vector<FunctionTable> back;
      for (const auto& a : til) {
        auto t = zd_backward(zt, a, torus);
        CHECK(zd_forward(zt, t, torus) == a);
        back.push_back(t);
      }
      CHECK(table_keys(back) == table_keys(fun));
      for (const auto& t : fun) CHECK(verify(zt.system, zd_forward(zt, t, torus), torus).ok);
    }
  }
  FunctionalSystem small{Z1, ExplicitGroup::finite({4}), 1, {}};
  CHECK_THROWS_AS(functional_to_tilings_zd(small), PreconditionFailed);
}

// ================================================================== pipeline

TEST_CASE("pipeline: domino sizes and symbolic round trip") {
  const std::vector<FiniteSet> domino{pts(Z2, {{0, 0}, {1, 0}})};
  auto trace = dry_run(domino);
  REQUIRE(trace.size() == 6);
  auto param = [&](std::size_t i, const std::string& k) {
    for (const auto& [key, v] : trace[i].params)
      if (key == k) return v;
    return std::string();
  };
  CHECK(trace[0].constraints == 4);
  CHECK(param(1, "D0") == "6");
  CHECK(param(1, "M1") == "28");
  CHECK(param(1, "M2") == "30");
  CHECK(param(1, "D") == "126");
  CHECK(param(2, "N") == "12");
  CHECK(trace[2].codomain == boost::multiprecision::pow(BigInt(12), 126));
  CHECK(trace[3].constraints == 2 * 126 + 66);
  for (std::size_t i = 1; i < trace.size(); ++i) CHECK(trace[i].codomain >= trace[i - 1].codomain);

  try {
    compile_two_tiles(domino);
    FAIL("expected CostExceeded");
  } catch (const CostExceeded& e) {
    CHECK(e.stage() == "functional_to_tilings");
  }

  auto cp = compile_two_tiles(domino, {}, Stage::Functional);
  CHECK(cp.hamming.D == 126);
  CHECK(cp.functional.equations.size() == 2 * 126 + 66);
  TilingSystem sys{Z2, {{domino, PeriodicSet::full(Z2)}}};
  for (const Torus_& t : {Torus_{2, 2}, Torus_{2, 1}}) {
    for (const auto& a : sat_solutions(sys, t)) {
      auto ft = pipeline_forward_functional(cp, a, t);
      CHECK(satisfies(cp.functional, ft));
      CHECK(pipeline_backward_functional(cp, ft) == a);
    }
  }
}

TEST_CASE("pipeline: single cell end to end") {
  const std::vector<FiniteSet> cell{pts(Z2, {{0, 0}})};
  auto trace = dry_run(cell);
  auto cp = compile_two_tiles(cell);
  REQUIRE(cp.instance);
  CHECK(cp.hamming.equations.size() == 3);
  CHECK(cp.functional.equations.size() == 7);
  CHECK(cp.tilings->system.equations.size() == 9);
  CHECK(cp.instance->G0.order() == 960);

  // The dry run predicts the materialized sizes.
  CHECK(trace[1].functions == 2 * cp.linear.linear.D);
  CHECK(trace[2].constraints == cp.hamming.equations.size());
  CHECK(trace[3].constraints == cp.functional.equations.size());
  CHECK(trace[4].constraints == cp.tilings->system.equations.size());
  CHECK(trace[4].codomain == cp.tilings->system.group.torsion().order());
  CHECK(trace[5].codomain == cp.instance->G0.order());
  CHECK(trace[5].tile_sizes[0] == cp.instance->F1.size());
  CHECK(trace[5].tile_sizes[1] == cp.instance->F2.size());

  const auto two = cp.instance->to_system();
  for (const Torus_& t : {Torus_{1, 1}, Torus_{2, 1}}) {
    TilingSystem sys{Z2, {{cell, PeriodicSet::full(Z2)}}};
    auto a = sat_solutions(sys, t).at(0);
    auto b = pipeline_forward(cp, a, t);
    CHECK(verify(two, b, Torus{t}).ok);
    CHECK(pipeline_backward(cp, b, t) == a);

    // The other sign gauge of the symmetrized system maps back to the same tiling.
    auto bits = tiling_to_bits(cp.coloring, a, t);
    auto sym = symmetrize_forward(bits);
    for (auto& row : sym.f)
      for (auto& v : row) v = static_cast<Sign>(-v);
    auto lin = slack_forward(cp.linear.antipode, cp.linear.linear, antipode_forward(cp.linear.symmetric, sym));
    auto b2 = combine_lift(*cp.combined, graph_of(*cp.tilings, hamming_lift(cp.hamming, lin)), t);
    CHECK(b2 != b);
    CHECK(verify(two, b2, Torus{t}).ok);
    CHECK(pipeline_backward(cp, b2, t) == a);
  }
}
