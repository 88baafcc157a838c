#pragma once
// JSON interchange. Every document is an envelope
//   {"schema_version": "tileforge-ir/1", "kind": ..., "payload": ...}
// Sets inside a system carry no group of their own: they live in the group
// the enclosing object names (the system group, the codomain, the torus).
#include <string>
#include <vector>

#include <json.hpp>

#include "tileforge/nonab/cover.hpp"
#include "tileforge/reduct/pipeline.hpp"
#include "tileforge/solver/solver.hpp"
#include "tileforge/tiling/newman.hpp"

namespace tileforge {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "tileforge-ir/1";

namespace kind {
inline constexpr const char* kTileset = "tileset";
inline constexpr const char* kBoolean = "boolean";
inline constexpr const char* kLinear = "linear";
inline constexpr const char* kHamming = "hamming";
inline constexpr const char* kFunctional = "functional";
inline constexpr const char* kTiling = "tiling";
inline constexpr const char* kSolutions = "solutions";
inline constexpr const char* kTrace = "trace";
inline constexpr const char* kCoverStats = "cover-stats";
inline constexpr const char* kPeriodic = "periodic";
inline constexpr const char* kSwap = "swap";
inline constexpr const char* kVarMap = "var-map";
}  // namespace kind

Json envelope(const std::string& kind, Json payload);
std::string kind_of(const Json& doc);                             // ParseError
const Json& payload_of(const Json& doc, const std::string& kind);  // ParseError on wrong version/kind

Json parse_json(const std::string& text);  // ParseError with line and column
// Indented text with element lists kept on one line each.
std::string to_text(const Json& doc);
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// Payloads. The *_from functions turn malformed JSON into ParseError.
Json group_json(const ExplicitGroup& g);
ExplicitGroup group_from(const Json& j);
Json elements_json(const FiniteSet& s);
FiniteSet set_from(const ExplicitGroup& g, const Json& j);
Json periodic_json(const PeriodicSet& s);
PeriodicSet periodic_from(const ExplicitGroup& g, const Json& j);
Json structured_json(const StructuredSet& s);
StructuredSet structured_from(const ExplicitGroup& g, const Json& j);

Json tileset_json(const std::vector<FiniteSet>& tiles);
std::vector<FiniteSet> tileset_from(const Json& payload);
Json tiling_json(const TilingSystem& s);
TilingSystem tiling_from(const Json& payload);
Json boolean_json(const BooleanLocalSystem& s);
BooleanLocalSystem boolean_from(const Json& payload);
Json linear_json(const LinearBooleanSystem& s);
LinearBooleanSystem linear_from(const Json& payload);
Json hamming_json(const HammingSystem& s);
HammingSystem hamming_from(const Json& payload);
Json functional_json(const FunctionalSystem& s);
FunctionalSystem functional_from(const Json& payload);

Json assignment_json(const Assignment& a);
Assignment assignment_from(const ExplicitGroup& g, const Json& j);
Json trace_json(const std::vector<StageReport>& stages);
Json cover_stats_json(const std::vector<CoverStats>& stats);
Json periodic_assignment_json(const PeriodicAssignment& p);

// A tiling instance: a "tiling" document, or a "tileset" (tiles in Z^2 that
// must cover Z^2 exactly).
TilingSystem instance_from(const Json& doc);

// Variable map sidecar for a DIMACS file.
Json var_map_json(const CnfInstance& cnf);

}  // namespace tileforge
