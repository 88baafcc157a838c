#include "tileforge/reduct/pipeline.hpp"

#include <algorithm>

#include "tileforge/error.hpp"

namespace tileforge {

namespace {

constexpr const char* kNames[] = {"boolean", "linear", "hamming", "functional", "tilings", "two-tile"};

BigInt pow(BigInt b, std::uint64_t e) {
  BigInt r = 1;
  while (e--) r *= b;
  return r;
}

std::string str(const BigInt& v) { return v.str(); }

}  // namespace

const char* stage_name(Stage s) { return kNames[static_cast<int>(s)]; }

Stage parse_stage(const std::string& s) {
  for (int i = 0; i < 6; ++i)
    if (s == kNames[i]) return static_cast<Stage>(i);
  throw ParseError("unknown stage '" + s + "'");
}

std::vector<StageReport> dry_run(const std::vector<FiniteSet>& tiles, const PipelineOptions& opt) {
  const auto tc = tileset_to_boolean(tiles, opt.bound);
  const auto& bs = tc.system;
  const auto L = bs.L();
  const BigInt omega = bs.omega.size();
  std::vector<StageReport> out;
  out.push_back({"tileset_to_boolean", bs.D, omega, 2, {},
                 {{"colors", std::to_string(tc.colors.size())}, {"D", std::to_string(bs.D)},
                  {"L", std::to_string(L)}}});

  const std::uint64_t D0 = static_cast<std::uint64_t>(bs.D + 1) * L;
  const BigInt M1 = pow(2, D0 - 1) - omega;
  const BigInt M2 = pow(2, D0 - 1) - pow(2, static_cast<std::uint64_t>(bs.D));
  const BigInt M = std::max(M1, M2);
  const BigInt D = D0 + M * (D0 - 2);
  const BigInt rows = (M1 > 0 ? M : BigInt(0)) + (M2 > 0 ? M : BigInt(0));
  out.push_back({"boolean_to_linear", 2 * D, rows + D0, 2, {},
                 {{"D0", std::to_string(D0)}, {"M1", str(M1)}, {"M2", str(M2)}, {"D", str(D)}}});

  const std::int64_t max_sum = rows > 0 ? static_cast<std::int64_t>(2 * D0 - 2) : 0;
  std::int64_t N = 4;
  while (N <= max_sum || N < opt.min_N) N += 4;
  const auto Du = static_cast<std::uint64_t>(D);
  const BigInt cube = pow(N, Du);
  const BigInt hyper = pow(N, Du - 1);  // every fiber and coordinate slice used here
  const BigInt ham_eqs = rows + D0;
  out.push_back({"linear_to_hamming", 2, ham_eqs, cube, {}, {{"N", std::to_string(N)}, {"D", str(D)}}});

  const BigInt fun_eqs = 2 * D + ham_eqs;
  out.push_back({"hamming_to_functional", 2, fun_eqs, cube, {}, {{"domain", "Z^2 x Z_2"}}});

  // Tile sizes of functional_to_tilings, summed over its equations: every
  // equation carries the layer piece (|G0| per tile); the sign equations add
  // 2 |pi^-1(0)| to one tile, the linear rows |H| to one tile, the pairing
  // equations |pi^-1(0)| to both.
  const BigInt t_eqs = fun_eqs + 2;
  const BigInt layers = t_eqs * cube;
  const BigInt rows1 = M1 > 0 ? M : BigInt(0), rows2 = M2 > 0 ? M : BigInt(0);
  std::vector<BigInt> sizes{layers + D * 2 * hyper + rows1 * hyper + D0 * hyper,
                            layers + D * 2 * hyper + rows2 * hyper + D0 * hyper};
  const BigInt g1 = 2 * opt.layer_N * cube;
  out.push_back({"functional_to_tilings", 2, t_eqs, g1, sizes, {{"N", std::to_string(opt.layer_N)}}});

  const BigInt stack = t_eqs + 1;
  out.push_back({"combine", 2, 1, g1 * stack, sizes, {{"N", str(stack)}}});
  return out;
}

TwoTileInstance to_two_tile(const TilingSystem& combined) {
  if (combined.equations.size() != 1 || combined.num_unknowns() != 2)
    throw PreconditionFailed("need one equation with two tiles");
  if (combined.group.free_rank() != 2) throw PreconditionFailed("need a group Z^2 x G0");
  const auto& eq = combined.equations[0];
  TwoTileInstance inst{combined.group.torsion(), {}, eq.tiles[0], eq.tiles[1]};
  std::vector<GroupElement> e0;
  for (const auto& x : eq.target.reps()) e0.emplace_back(x.begin() + 2, x.end());
  inst.E0 = FiniteSet(inst.G0, std::move(e0));
  return inst;
}

CompiledPipeline compile_two_tiles(const std::vector<FiniteSet>& tiles, const PipelineOptions& opt, Stage stop) {
  CompiledPipeline cp;
  cp.coloring = tileset_to_boolean(tiles, opt.bound);
  cp.reached = Stage::Boolean;
  if (stop == Stage::Boolean) return cp;
  cp.linear = boolean_to_linear(cp.coloring.system, opt.bound);
  cp.reached = Stage::Linear;
  if (stop == Stage::Linear) return cp;
  cp.hamming = linear_to_hamming(cp.linear.linear, opt.min_N);
  cp.reached = Stage::Hamming;
  if (stop == Stage::Hamming) return cp;
  cp.functional = hamming_to_functional(cp.hamming);
  cp.reached = Stage::Functional;
  if (stop == Stage::Functional) return cp;
  cp.tilings = functional_to_tilings(cp.functional, opt.layer_N, opt.bound);
  cp.reached = Stage::Tilings;
  if (stop == Stage::Tilings) return cp;
  const auto M = static_cast<std::int64_t>(cp.tilings->system.equations.size());
  cp.combined = combine(cp.tilings->system, M + 1);
  cp.instance = to_two_tile(*cp.combined);
  cp.reached = Stage::TwoTile;
  return cp;
}

FunctionTable pipeline_forward_functional(const CompiledPipeline& cp, const Assignment& tiling,
                                          const std::vector<std::int64_t>& torus) {
  auto bits = tiling_to_bits(cp.coloring, tiling, torus);
  auto lin = boolean_to_linear_forward(cp.linear, bits);
  return hamming_lift(cp.hamming, lin);
}

Assignment pipeline_backward_functional(const CompiledPipeline& cp, const FunctionTable& ft) {
  auto lin = hamming_extract(cp.hamming, ft);
  return bits_to_tiling(cp.coloring, boolean_to_linear_backward(cp.linear, lin));
}

Assignment pipeline_forward(const CompiledPipeline& cp, const Assignment& tiling, const std::vector<std::int64_t>& torus) {
  if (!cp.combined) throw PreconditionFailed("pipeline was not materialized");
  auto ft = pipeline_forward_functional(cp, tiling, torus);
  return combine_lift(*cp.combined, graph_of(*cp.tilings, ft), torus);
}

Assignment pipeline_backward(const CompiledPipeline& cp, const Assignment& two_tile,
                             const std::vector<std::int64_t>& torus) {
  if (!cp.combined) throw PreconditionFailed("pipeline was not materialized");
  auto layered = combine_project(cp.tilings->system, two_tile, torus);
  return pipeline_backward_functional(cp, ungraph(*cp.tilings, layered, torus));
}

}  // namespace tileforge
