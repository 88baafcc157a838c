// tileforge command-line frontend.
// Exit codes: 0 ok, 1 parse/usage/invalid input, 2 cost or region limits, 3 internal.
#include <CLI11.hpp>

#include <iostream>
#include <numeric>
#include <sstream>

#include "tileforge/io/json.hpp"
#include "tileforge/io/render.hpp"
#include "tileforge/nonab/encoding.hpp"
#include "tileforge/tiling/swap.hpp"

using namespace tileforge;

namespace {

struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

std::vector<std::int64_t> parse_ints(const std::string& s) {
  std::vector<std::int64_t> out;
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, ',');) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ParseError("not an integer list: '" + s + "'");
    }
  }
  if (out.empty()) throw ParseError("empty integer list");
  return out;
}

// "lo:hi,lo:hi,..."
Window parse_window(const std::string& s) {
  Window w{{}, {}, 0};
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, ',');) {
    const auto colon = tok.find(':');
    if (colon == std::string::npos) throw ParseError("window needs lo:hi per coordinate: '" + s + "'");
    w.lo.push_back(parse_ints(tok.substr(0, colon))[0]);
    w.hi.push_back(parse_ints(tok.substr(colon + 1))[0]);
  }
  return w;
}

void emit(const std::string& out, const Json& doc) {
  const auto text = to_text(doc);
  if (out.empty() || out == "-")
    std::cout << text;
  else
    write_text_file(out, text);
}

Json region_json(const Region& r) {
  if (const auto* t = std::get_if<Torus>(&r)) return {{"torus", t->moduli}};
  const auto& w = std::get<Window>(r);
  return {{"window", {{"lo", w.lo}, {"hi", w.hi}}}};
}

Region region_of(const std::string& torus, const std::string& window) {
  if (!torus.empty() == !window.empty()) throw ParseError("give exactly one of --torus and --window");
  if (!torus.empty()) return Torus{parse_ints(torus)};
  return parse_window(window);
}

ExplicitGroup placement_group(const TilingSystem& sys, const Region& r) {
  if (const auto* t = std::get_if<Torus>(&r)) return sys.group.torus(t->moduli);
  return sys.group;
}

// ---------------------------------------------------------------- compile
int cmd_compile(const std::string& input, const std::string& to, bool dry, PipelineOptions opt,
                const std::string& out) {
  const auto tiles = tileset_from(payload_of(read_json_file(input), kind::kTileset));
  if (dry) {
    emit(out, envelope(kind::kTrace, trace_json(dry_run(tiles, opt))));
    return 0;
  }
  const bool zd = to == "zd";
  if (zd) opt.min_N = std::max<std::int64_t>(opt.min_N, 5);  // the lattice variant needs moduli >= 5
  const auto stop = zd ? Stage::Functional : parse_stage(to);
  const auto cp = compile_two_tiles(tiles, opt, stop);
  Json doc;
  switch (stop) {
    case Stage::Boolean: doc = envelope(kind::kBoolean, boolean_json(cp.coloring.system)); break;
    case Stage::Linear: doc = envelope(kind::kLinear, linear_json(cp.linear.linear)); break;
    case Stage::Hamming: doc = envelope(kind::kHamming, hamming_json(cp.hamming)); break;
    case Stage::Functional:
      if (zd)
        doc = envelope(kind::kTiling, tiling_json(functional_to_tilings_zd(cp.functional, opt.layer_N, {}, opt.bound).system));
      else
        doc = envelope(kind::kFunctional, functional_json(cp.functional));
      break;
    case Stage::Tilings: doc = envelope(kind::kTiling, tiling_json(cp.tilings->system)); break;
    case Stage::TwoTile: doc = envelope(kind::kTiling, tiling_json(*cp.combined)); break;
  }
  emit(out, doc);
  return 0;
}

// ---------------------------------------------------------------- solve
int cmd_solve(const std::string& input, const Region& region, std::size_t cap, std::uint64_t seed,
              const std::string& out) {
  const auto sys = instance_from(read_json_file(input));
  std::vector<Assignment> sols;
  std::string verdict;
  if (const auto* t = std::get_if<Torus>(&region); t && cap > 0) {
    try {
      sols = enumerate_solutions(sys, *t, cap, seed);
      verdict = sols.empty() ? "unsatisfiable" : "satisfiable";
    } catch (const CapExceeded& e) {
      sols = e.partial();
      verdict = "cap-exceeded";
    }
  } else {
    if (const auto* t = std::get_if<Torus>(&region)) check_torus(sys, *t);
    const auto cnf = encode(sys, region);
    if (auto model = solve(cnf, seed)) sols.push_back(decode(cnf, *model));
    verdict = sols.empty() ? "unsatisfiable" : "satisfiable";
  }
  Json list = Json::array();
  for (const auto& s : sols) {
    if (!verify(sys, s, region).ok) throw InternalError("solver returned a non-solution");
    list.push_back(assignment_json(s));
  }
  emit(out, envelope(kind::kSolutions, {{"system", tiling_json(sys)},
                                        {"region", region_json(region)},
                                        {"verdict", verdict},
                                        {"count", sols.size()},
                                        {"solutions", list}}));
  return 0;
}

// ---------------------------------------------------------------- dual-search
int cmd_dual(const std::string& input, int budget, std::uint64_t seed) {
  const auto sys = instance_from(read_json_file(input));
  const auto v = dual_search(sys, budget, seed);
  if (const auto* s = std::get_if<Satisfiable>(&v)) {
    if (!verify(sys, s->assignment, s->torus).ok) throw InternalError("periodic witness does not verify");
    std::cout << "Satisfiable(" << s->k << ") torus=" << to_string(s->torus.moduli) << "\n";
  } else if (const auto* u = std::get_if<Unsatisfiable>(&v)) {
    std::cout << "Unsatisfiable(" << u->k << ") window=" << to_string(u->window.lo) << ".." << to_string(u->window.hi)
              << "\n";
  } else {
    std::cout << "Exhausted\n";
  }
  return 0;
}

// ---------------------------------------------------------------- render
int cmd_render(const std::string& input, std::size_t index, const std::string& out) {
  const auto doc = read_json_file(input);
  const auto& p = payload_of(doc, kind::kSolutions);
  const auto sys = tiling_from(p.at("system"));
  if (!p.at("region").contains("torus")) throw NotTwoDimensional("render needs a torus solution");
  const Torus torus{p["region"]["torus"].get<std::vector<std::int64_t>>()};
  const auto& list = p.at("solutions");
  Assignment a;
  if (list.empty())
    a.sets.assign(sys.num_unknowns(), FiniteSet(sys.group.torus(torus.moduli)));
  else if (index < list.size())
    a = assignment_from(sys.group.torus(torus.moduli), list[index]);
  else
    throw ParseError("no solution with index " + std::to_string(index));
  const auto svg = render_svg(sys, a, torus);
  if (out.empty() || out == "-")
    std::cout << svg;
  else
    write_text_file(out, svg);
  return 0;
}

// ---------------------------------------------------------------- export-cnf
int cmd_export(const std::string& input, const Region& region, std::uint64_t max_vars, const std::string& out) {
  const auto sys = instance_from(read_json_file(input));
  if (const auto* t = std::get_if<Torus>(&region)) check_torus(sys, *t);
  const auto cnf = encode(sys, region, max_vars);
  const auto dimacs = to_dimacs(cnf);
  if (out.empty() || out == "-") {
    std::cout << dimacs;
  } else {
    write_text_file(out, dimacs);
    write_text_file(out + ".map.json", to_text(envelope(kind::kVarMap, var_map_json(cnf))));
  }
  return 0;
}

// ---------------------------------------------------------------- periodize
int cmd_periodize(const std::string& input, const std::string& window, std::int64_t L, std::int64_t r,
                  std::uint64_t seed, const std::string& out) {
  const auto sys = instance_from(read_json_file(input));
  if (sys.group.free_rank() != 1) throw PreconditionFailed("periodize needs a system over Z x G0");
  const auto w = parse_window(window);
  if (w.lo.size() != 1) throw ParseError("periodize takes a one-dimensional window lo:hi");
  if (L < 0) L = sys.tile_radius();
  if (r <= 0) r = sys.target_periods()[0];
  const auto cnf = encode(sys, w);
  const auto model = solve(cnf, seed);
  if (!model) {
    emit(out, envelope(kind::kPeriodic, {{"verdict", "unsatisfiable"}, {"window", {w.lo[0], w.hi[0]}}}));
    return 0;
  }
  const auto pa = newman_periodize(sys, decode(cnf, *model), {w.lo[0], w.hi[0]}, L, r);
  const bool ok = verify(sys, pa.on_torus(), Torus{{pa.period}}).ok;
  if (!ok) throw InternalError("periodized solution does not verify");
  auto body = periodic_assignment_json(pa);
  body["verdict"] = "periodic";
  body["system"] = tiling_json(sys);
  emit(out, envelope(kind::kPeriodic, body));
  return 0;
}

// ---------------------------------------------------------------- swap-check
int cmd_swap(const std::string& input, int trials, std::uint64_t seed, const std::string& out) {
  const auto doc = read_json_file(input);
  const auto& p = payload_of(doc, kind::kSwap);
  const auto sys = tiling_from(p.at("system"));
  if (sys.group.free_rank() != 1 || sys.equations.size() != 1 || sys.num_unknowns() != 1)
    throw PreconditionFailed("swap-check needs one equation with one tile over Z x G0");
  const auto a0 = set_from(sys.group, p.at("a0")), a1 = set_from(sys.group, p.at("a1"));
  const auto win = p.at("window").get<std::vector<std::int64_t>>();
  if (win.size() != 2) throw ParseError("window is [lo, hi]");
  const Window w{{win[0]}, {win[1]}, 0};
  const auto agree = p.value("agree_through", win[0] - 1);
  const auto rep = swap_dichotomy_check(a0, a1, sys.equations[0].tiles[0]);
  Rng rng(seed);
  int failed = 0;
  for (int i = 0; i < trials; ++i) {
    const auto bits = rng();
    auto s = fiber_swap(a0, a1, [&](std::int64_t n) { return n <= agree ? 0 : static_cast<int>((bits >> mod(n, 64)) & 1); },
                        agree);
    failed += !verify(sys, Assignment{{s}}, w).ok;
  }
  emit(out, envelope("swap-report", {{"dichotomy_ok", rep.ok},
                                     {"max_residual", rep.max_residual},
                                     {"max_dichotomy_defect", rep.max_dichotomy_defect},
                                     {"characters", rep.characters},
                                     {"fibers", rep.fibers},
                                     {"trials", trials},
                                     {"failed_swaps", failed}}));
  return 0;
}

// ---------------------------------------------------------------- nonab-check
int cmd_nonab(const std::string& y, std::uint64_t samples, std::uint64_t seed, int cycles, int stabilizers,
              bool defect, bool linear, const std::string& out) {
  std::vector<CoverStats> stats;
  if (linear) {
    LinearBooleanSystem s;
    s.D = s.D0 = 1;
    s.coeffs[0] = {{0}};
    s.coeffs[1] = {{0}};
    s.shifts = {{1, 0}};
    auto f = BoolFunctions::constant({2, 1}, 2);
    f.f[0] = {1, -1};
    f.f[1] = {1, -1};  // f_2(n + 1) = -f_1(n) on Z_2
    EncodingOptions opt;
    opt.samples = samples;
    opt.seed = seed;
    opt.cycles = cycles;
    opt.stabilizers = stabilizers;
    opt.defect = defect;
    stats = linear_encoding_forward(s, f, opt);
  } else {
    std::vector<Cell> ys;
    if (y.empty()) {
      ys.assign(kCube.begin(), kCube.end());
    } else {
      const auto v = parse_ints(y);
      if (v.size() != 2) throw ParseError("--y takes two entries");
      ys.push_back(cell(static_cast<int>(mod(v[0], 4)), static_cast<int>(mod(v[1], 4))));
    }
    Rng rng(seed);
    std::uint64_t s = seed;
    const auto G = perm_ambient();
    for (auto c : ys) {
      auto o = lemma_oracles(c);
      if (defect) o.A = unite(o.A, fiber_defect(cell_add(c, cell(2, 0)), cell(0, 1)));
      stats.push_back(sampled_cover_check(G, o.A, o.F_tau, o.B, samples, ++s));
      for (int i = 0; i < cycles; ++i) {
        const auto sigma = random_cycle(rng);
        stats.push_back(sampled_cover_check(G, o.A, o.F_cycle(sigma, Perm16()), o.all, samples, ++s));
        for (int k = 0; k < stabilizers; ++k)
          stats.push_back(sampled_cover_check(G, o.A, o.F_cycle(sigma, random_stabilizer(rng)), o.all, samples, ++s));
      }
    }
  }
  emit(out, envelope(kind::kCoverStats, cover_stats_json(stats)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tileforge: tiling equations, reductions and checks"};
  app.require_subcommand(1);
  std::string input, out, torus, window, to = "two-tile", y;
  std::uint64_t seed = 0, samples = 10000, max_vars = kDefaultMaxVars;
  std::size_t cap = 0, index = 0;
  int budget = 4, trials = 100, cycles = 5, stabilizers = 3;
  std::int64_t L = -1, r = 0;
  bool dry = false, defect = false, linear = false;
  PipelineOptions popt;

  auto* compile = app.add_subcommand("compile", "compile a tile set of Z^2 down the reduction chain");
  compile->add_option("input", input, "tileset document")->required();
  compile->add_option("--to", to, "boolean|linear|hamming|functional|tilings|two-tile|zd");
  compile->add_flag("--dry-run", dry, "report stage sizes only");
  compile->add_option("--layer-N", popt.layer_N, "stacking height of the functional -> tilings pass");
  compile->add_option("--min-N", popt.min_N, "lower bound for the Hamming modulus");
  compile->add_option("--bound", popt.bound, "largest listing any pass may materialize");
  compile->add_option("-o,--out", out);

  auto* solve_cmd = app.add_subcommand("solve", "solve a tiling instance on a torus or window");
  solve_cmd->add_option("input", input)->required();
  solve_cmd->add_option("--torus", torus, "p1,p2,...");
  solve_cmd->add_option("--window", window, "lo:hi,lo:hi,...");
  solve_cmd->add_option("--enumerate", cap, "enumerate up to this many torus solutions");
  solve_cmd->add_option("--seed", seed);
  solve_cmd->add_option("-o,--out", out);

  auto* dual = app.add_subcommand("dual-search", "interleave periodic search and window refutation");
  dual->add_option("input", input)->required();
  dual->add_option("--budget", budget);
  dual->add_option("--seed", seed);

  auto* render = app.add_subcommand("render", "draw a torus solution as SVG");
  render->add_option("input", input, "solutions document")->required();
  render->add_option("--index", index);
  render->add_option("-o,--out", out);

  auto* cnf = app.add_subcommand("export-cnf", "write the exact-cover CNF in DIMACS (+ .map.json)");
  cnf->add_option("input", input)->required();
  cnf->add_option("--torus", torus);
  cnf->add_option("--window", window);
  cnf->add_option("--max-vars", max_vars);
  cnf->add_option("-o,--out", out);

  auto* per = app.add_subcommand("periodize", "solve a 1D system on a window and periodize it");
  per->add_option("input", input)->required();
  per->add_option("--window", window, "lo:hi")->required();
  per->add_option("--L", L, "pattern radius (default: tile radius)");
  per->add_option("--r", r, "target period (default: from the target)");
  per->add_option("--seed", seed);
  per->add_option("-o,--out", out);

  auto* swp = app.add_subcommand("swap-check", "fiber swaps and the Fourier dichotomy for a J = 1 pair");
  swp->add_option("input", input)->required();
  swp->add_option("--trials", trials);
  swp->add_option("--seed", seed);
  swp->add_option("-o,--out", out);

  auto* nab = app.add_subcommand("nonab-check", "sampled cover checks of the S_16 encodings");
  nab->add_option("--y", y, "cube point y1,y2 (default: all four)");
  nab->add_option("--samples", samples);
  nab->add_option("--seed", seed);
  nab->add_option("--cycles", cycles);
  nab->add_option("--stabilizers", stabilizers);
  nab->add_flag("--defect", defect, "inject a wrong-fiber defect");
  nab->add_flag("--linear", linear, "check the minimal linear encoding instead");
  nab->add_option("-o,--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*compile) return cmd_compile(input, to, dry, popt, out);
    if (*solve_cmd) return cmd_solve(input, region_of(torus, window), cap, seed, out);
    if (*dual) return cmd_dual(input, budget, seed);
    if (*render) return cmd_render(input, index, out);
    if (*cnf) return cmd_export(input, region_of(torus, window), max_vars, out);
    if (*per) return cmd_periodize(input, window, L, r, seed, out);
    if (*swp) return cmd_swap(input, trials, seed, out);
    if (*nab) return cmd_nonab(y, samples, seed, cycles, stabilizers, defect, linear, out);
  } catch (const CostExceeded& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const RegionIncompatible& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const CapExceeded& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const InternalError& e) {
    std::cerr << "internal: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal: " << e.what() << "\n";
    return 3;
  }
  return 1;
}
