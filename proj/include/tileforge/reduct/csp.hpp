#pragma once
// Plain backtracking enumeration of a finite constraint satisfaction problem.
// Deliberately independent of the SAT machinery: the tests use it as an oracle
// for solution sets of the intermediate systems.
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace tileforge {

struct CspConstraint {
  std::vector<int> scope;
  std::function<bool(std::span<const int>)> ok;  // values in scope order
};

struct Csp {
  std::vector<int> domain_size;
  std::vector<CspConstraint> constraints;

  int add_var(int size) {
    domain_size.push_back(size);
    return static_cast<int>(domain_size.size()) - 1;
  }
};

// Calls `visit` on every full solution until it returns false. Each
// constraint is checked as soon as its last variable is assigned. Returns the
// number of solutions visited.
std::uint64_t csp_enumerate(const Csp& csp,
                            const std::function<bool(const std::vector<int>&)>& visit);

std::uint64_t csp_count(const Csp& csp);

}  // namespace tileforge
