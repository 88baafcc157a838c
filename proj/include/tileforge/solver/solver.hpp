#pragma once
// Exact-cover CNF encodings of tiling systems on tori and windows, solution
// enumeration with blocking clauses, and the interleaved periodic-search /
// window-refutation loop (Wang's dual semi-decision).
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tileforge/error.hpp"
#include "tileforge/tiling/tiling.hpp"

namespace tileforge {

struct Placement {
  std::size_t tile;       // unknown index j
  GroupElement position;  // a, in the torus group or the system group
};

struct CnfInstance {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;
  std::vector<Placement> var_map;  // variable v <-> var_map[v - 1]; later variables are auxiliary
  std::size_t num_unknowns = 0;
  ExplicitGroup placement_group;   // torus group, or the system group for windows
};

inline constexpr std::uint64_t kDefaultMaxVars = 1'000'000;

// Torus: one variable per (j, a in torus). Window: one variable per placement
// whose tile meets the window; only window cells are constrained, so
// placements may hang over the boundary.
CnfInstance encode(const TilingSystem& system, const Region& region,
                   std::uint64_t max_vars = kDefaultMaxVars);

std::optional<std::vector<bool>> solve(const CnfInstance& cnf, std::uint64_t seed = 0);
Assignment decode(const CnfInstance& cnf, const std::vector<bool>& model);

class CapExceeded : public Error {
 public:
  CapExceeded(std::vector<Assignment> partial, std::size_t cap)
      : Error("CapExceeded: more than " + std::to_string(cap) + " solutions"),
        partial_(std::move(partial)) {}
  const std::vector<Assignment>& partial() const { return partial_; }

 private:
  std::vector<Assignment> partial_;
};

// All solutions on the torus, sorted; CapExceeded if there are more than cap.
std::vector<Assignment> enumerate_solutions(const TilingSystem& system, const Torus& torus,
                                            std::size_t cap, std::uint64_t seed = 0);

struct Satisfiable {
  Assignment assignment;
  Torus torus;
  int k;
};
struct Unsatisfiable {
  Window window;
  int k;
};
struct Exhausted {
  int budget;
};
using SearchVerdict = std::variant<Satisfiable, Unsatisfiable, Exhausted>;

// Round k tries every torus with moduli m_i * r_i, m_i <= k + 1, not tried in
// an earlier round, then the window [-k, k]^d.
SearchVerdict dual_search(const TilingSystem& system, int budget, std::uint64_t seed = 0);

// DIMACS text ("p cnf V C", 0-terminated clause lines).
std::string to_dimacs(const CnfInstance& cnf);

}  // namespace tileforge
