#pragma once
// The full chain: finite tile set in Z^2 -> Boolean local constraints ->
// linear Boolean -> Hamming -> functional -> tilings -> one equation with
// two tiles. Sizes explode quickly, so there is a dry run that only counts,
// and materialization stops with CostExceeded(stage) at the first stage
// whose listing exceeds the bound. Everything up to the functional level is
// symbolic and always materializes.
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tileforge/reduct/passes.hpp"

namespace tileforge {

enum class Stage { Boolean, Linear, Hamming, Functional, Tilings, TwoTile };

const char* stage_name(Stage s);
Stage parse_stage(const std::string& s);  // ParseError

struct StageReport {
  std::string stage;
  BigInt functions;    // unknown functions / sets
  BigInt constraints;  // equations (for the Boolean stage: |Omega|)
  BigInt codomain;     // order of the value group (2 for Boolean stages)
  std::vector<BigInt> tile_sizes;  // tiling stages: |F_j| summed over equations
  std::vector<std::pair<std::string, std::string>> params;
};

struct PipelineOptions {
  std::int64_t layer_N = 3;  // stacking height for functional -> tilings
  std::int64_t min_N = 0;
  std::uint64_t bound = kDefaultCostBound;
};

std::vector<StageReport> dry_run(const std::vector<FiniteSet>& tiles, const PipelineOptions& opt = {});

struct CompiledPipeline {
  TileColoring coloring;
  BooleanToLinear linear;
  HammingSystem hamming;
  FunctionalSystem functional;
  std::optional<FunctionalTiling> tilings;
  std::optional<TilingSystem> combined;
  std::optional<TwoTileInstance> instance;
  Stage reached = Stage::Boolean;
};

CompiledPipeline compile_two_tiles(const std::vector<FiniteSet>& tiles, const PipelineOptions& opt = {},
                                   Stage stop = Stage::TwoTile);
TwoTileInstance to_two_tile(const TilingSystem& combined);

// Solution maps across the whole chain, on a torus of Z^2. The functional
// versions stop at the last symbolic stage.
FunctionTable pipeline_forward_functional(const CompiledPipeline& cp, const Assignment& tiling,
                                          const std::vector<std::int64_t>& torus);
Assignment pipeline_backward_functional(const CompiledPipeline& cp, const FunctionTable& ft);
Assignment pipeline_forward(const CompiledPipeline& cp, const Assignment& tiling, const std::vector<std::int64_t>& torus);
Assignment pipeline_backward(const CompiledPipeline& cp, const Assignment& two_tile, const std::vector<std::int64_t>& torus);

}  // namespace tileforge
