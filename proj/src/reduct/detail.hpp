#pragma once
#include <span>
#include <vector>

#include "tileforge/groups/group.hpp"

namespace tileforge::detail {

// next[k][cell] = cell + shifts[k] on the torus of `full` with the given moduli.
std::vector<std::vector<std::size_t>> shift_table(const ExplicitGroup& full, std::span<const std::int64_t> moduli,
                                                  const std::vector<GroupElement>& shifts);

}  // namespace tileforge::detail
