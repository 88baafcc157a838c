#pragma once
// Small CDCL SAT solver: two watched literals, first-UIP learning,
// activity-based branching with phase saving, Luby restarts. Deterministic for
// a fixed seed. Clauses may be added between solve() calls, which is how
// solution enumeration installs blocking clauses.
//
// Literals use the DIMACS convention: +v / -v for variable v in 1..num_vars.
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace tileforge {

class SatSolver {
 public:
  explicit SatSolver(int num_vars, std::uint64_t seed = 0);

  int num_vars() const { return num_vars_; }
  void add_clause(std::span<const int> lits);
  // Model indexed by variable (entry 0 unused), or nullopt if UNSAT.
  std::optional<std::vector<bool>> solve();

  std::uint64_t conflicts() const { return conflicts_; }
  std::uint64_t decisions() const { return decisions_; }

 private:
  using Lit = std::uint32_t;  // 2*var + negated, var 0-based
  static Lit from_dimacs(int l) {
    return l > 0 ? 2u * static_cast<Lit>(l - 1) : 2u * static_cast<Lit>(-l - 1) + 1u;
  }
  static Lit neg(Lit l) { return l ^ 1u; }
  static std::uint32_t var(Lit l) { return l >> 1; }

  // 0 false, 1 true, 2 unassigned
  std::uint8_t value(Lit l) const {
    auto v = assign_[var(l)];
    return v == 2 ? 2 : static_cast<std::uint8_t>(v ^ (l & 1u));
  }
  void enqueue(Lit l, int reason);
  int propagate();  // conflicting clause or -1
  void analyze(int confl, std::vector<Lit>& learnt, int& bt_level);
  void cancel_until(int level);
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }
  std::optional<Lit> pick_branch();
  void bump(std::uint32_t v);
  int attach(std::vector<Lit> c);
  bool check_model() const;

  int num_vars_;
  bool unsat_ = false;
  std::vector<std::vector<Lit>> clauses_;
  std::vector<std::vector<int>> watches_;  // by literal: clauses watching its negation
  std::vector<std::uint8_t> assign_;
  std::vector<int> level_, reason_;
  std::vector<std::uint8_t> phase_;
  std::vector<double> activity_;
  double var_inc_ = 1.0;
  std::vector<Lit> trail_;
  std::vector<int> trail_lim_;
  std::size_t qhead_ = 0;
  std::vector<char> seen_;
  std::uint64_t conflicts_ = 0, decisions_ = 0;
  std::vector<std::vector<Lit>> originals_;
};

}  // namespace tileforge
