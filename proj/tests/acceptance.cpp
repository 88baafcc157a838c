// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// fails. Criterion 2 runs the reduction-pass suite (tests/test_reduct.cpp is
// linked into this binary).
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "swap_fixtures.hpp"
#include "tileforge/nonab/encoding.hpp"
#include "tileforge/reduct/passes.hpp"
#include "tileforge/solver/solver.hpp"
#include "tileforge/tiling/newman.hpp"
#include "tileforge/tiling/swap.hpp"

using namespace tileforge;

namespace {

struct Outcome {
  bool ok;
  std::string detail;
};

int failures = 0;

void criterion(int id, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (s > limit_s) {
    o.ok = false;
    o.detail += " (over the " + std::to_string(static_cast<int>(limit_s)) + " s limit)";
  }
  failures += !o.ok;
  std::printf("criterion %d: %s  [%.2f s]  %s\n", id, o.ok ? "PASS" : "FAIL", s, o.detail.c_str());
  std::fflush(stdout);
}

// ---------------------------------------------------------------- 1
Outcome rigid_tile_cosets() {
  const auto g = ExplicitGroup::lattice(2);
  TilingSystem sys{g, {{{rigid_tile({5, 5}, {2, 2})}, PeriodicSet::full(g)}}};
  const auto sols = enumerate_solutions(sys, Torus{{10, 10}}, 100);
  const auto tg = g.torus(std::vector<std::int64_t>{10, 10});
  int cosets = 0;
  for (const auto& a : sols) {
    const auto& first = a.sets[0].elements().at(0);
    std::vector<GroupElement> c;
    for (std::int64_t i = 0; i < 10; i += 5)
      for (std::int64_t j = 0; j < 10; j += 5) c.push_back(tg.normalize({first[0] + i, first[1] + j}));
    cosets += a.sets[0] == FiniteSet(tg, c);
  }
  std::ostringstream d;
  d << sols.size() << " solutions, " << cosets << " are cosets of 5Z x 5Z";
  return {sols.size() == 25 && cosets == 25, d.str()};
}

// ---------------------------------------------------------------- 2
Outcome pass_suite() {
  doctest::Context ctx;
  ctx.setOption("minimal", true);
  ctx.setOption("no-intro", true);
  const int rc = ctx.run();
  return {rc == 0, "reduction-pass suite (all nine passes, >= 3 fixtures each) " + std::string(rc ? "failed" : "passed")};
}

// ---------------------------------------------------------------- 3
// Avoiding {eps, -eps} <=> |<eps, y>| <= D0 - 2 <=> some slack in {-1,1}^{D0-2}
// brings the sum to 0.
Outcome antipode_equivalence() {
  std::size_t cases = 0, bad = 0;
  for (int D0 = 2; D0 <= 4; ++D0) {
    const int S = D0 - 2;
    const std::uint64_t full = (1ull << D0) - 1;
    for (std::uint64_t eps = 0; eps <= full; ++eps)
      for (std::uint64_t y = 0; y <= full; ++y) {
        const bool a = y != eps && y != (~eps & full);
        std::int64_t s = 0;
        for (int d = 0; d < D0; ++d) s += mask_entry(eps, d) * mask_entry(y, d);
        const bool b = -S <= s && s <= S;
        bool c = false;
        for (std::uint64_t z = 0; z < (1ull << S); ++z) {
          std::int64_t t = s;
          for (int i = 0; i < S; ++i) t += mask_entry(z, i);
          c = c || t == 0;
        }
        ++cases;
        bad += (a != b) || (b != c);
      }
  }
  return {bad == 0, std::to_string(cases) + " (eps, y) cases, " + std::to_string(bad) + " counterexamples"};
}

// ---------------------------------------------------------------- 4
Outcome newman_random() {
  std::mt19937_64 rng(2024);
  int done = 0, verified = 0, tries = 0;
  std::int64_t max_period = 0;
  while (done < 20 && tries++ < 5000) {
    static const std::vector<std::vector<std::int64_t>> torsions = {{}, {2}, {3}, {4}, {2, 2}};
    const auto& mods = torsions[rng() % torsions.size()];
    const auto g = ExplicitGroup(1, mods);
    const auto g0 = g.torsion();
    const std::size_t J = 1 + rng() % 2;
    TilingEquation eq{{}, PeriodicSet::full(g)};
    for (std::size_t j = 0; j < J; ++j) {
      std::vector<GroupElement> f{g.zero()};
      for (std::size_t i = 0; i < 3 * g0.order(); ++i)
        if (rng() % 3 == 0) {
          GroupElement e{static_cast<std::int64_t>(i / g0.order())};
          const auto t = g0.element_at(i % g0.order());
          e.insert(e.end(), t.begin(), t.end());
          f.push_back(e);
        }
      eq.tiles.push_back(FiniteSet(g, f));
    }
    TilingSystem sys{g, {eq}};
    bool sat = false;
    for (std::int64_t P = 1; P <= 6 && !sat; ++P) sat = solve(encode(sys, Torus{{P}})).has_value();
    if (!sat) continue;
    const auto cnf = encode(sys, Window{{-40}, {40}, 0});
    const auto model = solve(cnf, rng());
    if (!model) return {false, "window unsatisfiable for a torus-satisfiable system"};
    const auto L = sys.tile_diameter();
    if (L > 3) continue;
    const auto out = newman_periodize(sys, decode(cnf, *model), {-40, 40}, L, 1);
    ++done;
    verified += verify(sys, out.on_torus(), Torus{{out.period}}).ok;
    max_period = std::max(max_period, out.period);
  }
  std::ostringstream d;
  d << done << " systems, " << verified << " periodized outputs verify (max period " << max_period << ")";
  return {done == 20 && verified == 20, d.str()};
}

// ---------------------------------------------------------------- 5
Outcome swapping() {
  std::mt19937_64 rng(77);
  int instances = 0, swaps = 0, swap_fail = 0, dich_fail = 0;
  double residual = 0;
  for (int it = 0; it < 5000 && instances < 100; ++it) {
    auto inst = testing::random_swap_instance(rng);
    if (!inst) continue;
    ++instances;
    const Window w{{inst->lo}, {inst->hi}, 0};
    for (int k = 0; k < 20; ++k) {
      const std::uint64_t bits = rng();
      auto s = fiber_swap(inst->a0, inst->a1, [&](std::int64_t n) { return static_cast<int>((bits >> mod(n, 64)) & 1); },
                          inst->diff_lo - 1);
      ++swaps;
      swap_fail += !verify(inst->system, Assignment{{s}}, w).ok;
    }
    const auto rep = swap_dichotomy_check(inst->a0, inst->a1, inst->system.equations[0].tiles[0]);
    residual = std::max(residual, rep.max_residual);
    dich_fail += !rep.ok || rep.max_residual >= 1e-9;
  }
  // F = {(0,0),(1,1)} over Z x Z_2: the two constant graphs both tile, a
  // non-constant swap of them does not.
  const auto g = ExplicitGroup(1, {2});
  TilingSystem sys{g, {{{FiniteSet(g, {{0, 0}, {1, 1}})}, PeriodicSet::full(g)}}};
  std::vector<GroupElement> v0, v1;
  for (std::int64_t n = -12; n <= 12; ++n) {
    v0.push_back({n, 0});
    v1.push_back({n, 1});
  }
  const FiniteSet a0(g, v0), a1(g, v1);
  const Window w{{-10}, {10}, 0};
  const bool both = verify(sys, Assignment{{a0}}, w).ok && verify(sys, Assignment{{a1}}, w).ok;
  const auto mixed = fiber_swap(a0, a1, [](std::int64_t n) { return n > 0; });
  const bool counter_fails = both && !verify(sys, Assignment{{mixed}}, w).ok;
  std::ostringstream d;
  d << instances << " instances, " << swaps - swap_fail << "/" << swaps << " swaps verify, dichotomy failures "
    << dich_fail << ", max residual " << residual << ", counterexample " << (counter_fails ? "fails verify" : "VERIFIES");
  return {instances == 100 && swap_fail == 0 && dich_fail == 0 && counter_fails, d.str()};
}

// ---------------------------------------------------------------- 6
Outcome nonabelian() {
  constexpr std::uint64_t kSamples = 10000, kDefectSamples = 100000;
  std::uint64_t families = 0, violations = 0, defect_families = 0, defect_missed = 0, seed = 1;
  Rng rng(606);
  const auto G = perm_ambient();
  const auto GG = perm_point_ambient();
  auto tally = [&](const CoverStats& s) {
    ++families;
    violations += s.violations;
  };
  auto tally_defect = [&](const CoverStats& s) {
    ++defect_families;
    defect_missed += s.violations == 0;
  };
  for (auto y : kCube) {
    const auto o = lemma_oracles(y);
    const auto gr = graph_oracles(y);
    tally(sampled_cover_check(G, o.A, o.F_tau, o.B, kSamples, seed++));
    tally(sampled_cover_check(GG, gr.A, gr.F_tau, gr.E_tau, kSamples, seed++));
    for (int c = 0; c < 5; ++c) {
      const auto sigma = random_cycle(rng);
      std::vector<Perm16> phis{Perm16()};
      for (int k = 0; k < 3; ++k) phis.push_back(random_stabilizer(rng));
      for (const auto& phi : phis) {
        tally(sampled_cover_check(G, o.A, o.F_cycle(sigma, phi), o.all, kSamples, seed++));
        tally(sampled_cover_check(GG, gr.A, gr.F_cycle(sigma, phi), gr.all, kSamples, seed++));
      }
    }
    const auto bad = unite(o.A, fiber_defect(cell_add(y, cell(2, 0)), cell(0, 1)));
    tally_defect(sampled_cover_check(G, bad, o.F_tau, o.B, kDefectSamples, seed++));
    tally_defect(sampled_cover_check(G, bad, o.F_cycle(random_cycle(rng), Perm16()), o.all, kDefectSamples, seed++));
  }

  // Minimal linear encoding: D = D0 = 1, zero rows, pairing f_2(n + 1) = -f_1(n) on Z_2 x Z_1.
  LinearBooleanSystem s;
  s.D = s.D0 = 1;
  s.coeffs[0] = {{0}};
  s.coeffs[1] = {{0}};
  s.shifts = {{1, 0}};
  auto f = BoolFunctions::constant({2, 1}, 2);
  f.f[0] = {1, -1};
  f.f[1] = {1, -1};
  EncodingOptions opt;
  opt.samples = kSamples;
  opt.cycles = 5;
  opt.stabilizers = 3;
  for (const auto& st : linear_encoding_forward(s, f, opt)) tally(st);
  opt.samples = kDefectSamples;
  opt.cycles = 1;
  opt.stabilizers = 1;
  opt.defect = true;
  for (const auto& st : linear_encoding_forward(s, f, opt)) tally_defect(st);

  std::ostringstream d;
  d << families << " families x >= " << kSamples << " samples: " << violations << " violations; " << defect_families
    << " defect variants, " << defect_missed << " undetected within " << kDefectSamples;
  return {violations == 0 && defect_missed == 0, d.str()};
}

// ---------------------------------------------------------------- 7
Outcome dual() {
  const auto z2 = ExplicitGroup::lattice(2);
  TilingSystem domino{z2, {{{FiniteSet(z2, {{0, 0}, {1, 0}})}, PeriodicSet::full(z2)}}};
  const auto z = ExplicitGroup::lattice(1);
  TilingSystem unsat{z,
                     {{{FiniteSet(z, {{0}, {1}, {2}})}, PeriodicSet::full(z)},
                      {{FiniteSet(z, {{0}})}, PeriodicSet(z, 2, FiniteSet(z.torus(std::vector<std::int64_t>{2}), {{0}}))}}};
  const auto a = dual_search(domino, 1);
  const auto b = dual_search(unsat, 4);
  const auto c = dual_search(domino, 0);
  const auto* sa = std::get_if<Satisfiable>(&a);
  const auto* ub = std::get_if<Unsatisfiable>(&b);
  const bool ok = sa && sa->k == 1 && verify(domino, sa->assignment, sa->torus).ok && ub && ub->k <= 4 &&
                  std::holds_alternative<Exhausted>(c);
  std::ostringstream d;
  d << "domino " << (sa ? "Satisfiable(" + std::to_string(sa->k) + ")" : "?") << ", unsat fixture "
    << (ub ? "Unsatisfiable(" + std::to_string(ub->k) + ")" : "?") << ", budget 0 "
    << (std::holds_alternative<Exhausted>(c) ? "Exhausted" : "?");
  return {ok, d.str()};
}

// ---------------------------------------------------------------- 8
Outcome perm_laws() {
  Rng rng(8);
  int fails = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto a = random_perm(rng), b = random_perm(rng), c = random_perm(rng);
    fails += !((a + b) + c == a + (b + c) && a + Perm16() == a && Perm16() + a == a && a + (-a) == Perm16() &&
               (-a) + a == Perm16());
  }
  for (int i = 0; i < 10000; ++i) {
    const auto a = random_perm(rng), b = random_perm(rng);
    fails += pi(a + b) != (-b)(pi(a));
  }
  for (int i = 0; i < 10000; ++i) {
    const auto a = random_perm(rng);
    const auto h = static_cast<Cell>(rng() % 16);
    fails += pi(a + tau(h)) != cell_add(pi(a), h);
  }
  return {fails == 0, "3 x 10^4 random checks, " + std::to_string(fails) + " failures"};
}

}  // namespace

int main() {
  criterion(1, 60, rigid_tile_cosets);
  criterion(2, 300, pass_suite);
  criterion(3, 1, antipode_equivalence);
  criterion(4, 60, newman_random);
  criterion(5, 120, swapping);
  criterion(6, 300, nonabelian);
  criterion(7, 30, dual);
  criterion(8, 5, perm_laws);
  return failures ? 1 : 0;
}
