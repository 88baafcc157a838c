#include "tileforge/reduct/csp.hpp"

#include <algorithm>

namespace tileforge {

std::uint64_t csp_enumerate(const Csp& csp,
                            const std::function<bool(const std::vector<int>&)>& visit) {
  const int n = static_cast<int>(csp.domain_size.size());
  std::vector<std::vector<int>> due(n);  // constraints completed at var v
  std::vector<int> always;               // empty scope
  for (std::size_t c = 0; c < csp.constraints.size(); ++c) {
    const auto& s = csp.constraints[c].scope;
    if (s.empty())
      always.push_back(static_cast<int>(c));
    else
      due[*std::max_element(s.begin(), s.end())].push_back(static_cast<int>(c));
  }
  for (int c : always)
    if (!csp.constraints[c].ok({})) return 0;

  std::vector<int> val(n, -1), buf;
  std::uint64_t found = 0;
  bool stop = false;
  auto consistent = [&](int v) {
    for (int c : due[v]) {
      const auto& con = csp.constraints[c];
      buf.resize(con.scope.size());
      for (std::size_t i = 0; i < con.scope.size(); ++i) buf[i] = val[con.scope[i]];
      if (!con.ok(buf)) return false;
    }
    return true;
  };
  // Iterative depth-first search.
  int v = 0;
  if (n == 0) {
    ++found;
    visit(val);
    return found;
  }
  val[0] = -1;
  while (v >= 0 && !stop) {
    if (++val[v] >= csp.domain_size[v]) {
      val[v] = -1;
      --v;
      continue;
    }
    if (!consistent(v)) continue;
    if (v + 1 == n) {
      ++found;
      if (!visit(val)) stop = true;
    } else {
      ++v;
    }
  }
  return found;
}

std::uint64_t csp_count(const Csp& csp) {
  return csp_enumerate(csp, [](const std::vector<int>&) { return true; });
}

}  // namespace tileforge
