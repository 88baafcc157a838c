#include "tileforge/groups/sets.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>

#include "tileforge/error.hpp"

namespace tileforge {

FiniteSet::FiniteSet(ExplicitGroup g, std::vector<GroupElement> elems) : group_(std::move(g)) {
  for (auto& e : elems) e = group_.normalize(std::move(e));
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  elems_ = std::move(elems);
}

bool FiniteSet::contains(const GroupElement& a) const {
  return std::binary_search(elems_.begin(), elems_.end(), group_.normalize(a));
}

FiniteSet FiniteSet::translate(const GroupElement& v) const {
  std::vector<GroupElement> out;
  out.reserve(elems_.size());
  for (const auto& e : elems_) out.push_back(group_.add(e, v));
  return FiniteSet(group_, std::move(out));
}

FiniteSet FiniteSet::negate() const {
  std::vector<GroupElement> out;
  out.reserve(elems_.size());
  for (const auto& e : elems_) out.push_back(group_.neg(e));
  return FiniteSet(group_, std::move(out));
}

FiniteSet FiniteSet::unite(const FiniteSet& o) const {
  if (!(o.group_ == group_)) throw DimensionMismatch("union across groups");
  auto all = elems_;
  all.insert(all.end(), o.elems_.begin(), o.elems_.end());
  return FiniteSet(group_, std::move(all));
}

std::int64_t FiniteSet::free_radius() const {
  std::int64_t r = 0;
  for (const auto& e : elems_)
    for (int i = 0; i < group_.free_rank(); ++i) r = std::max(r, std::abs(e[i]));
  return r;
}

FiniteSet direct_sum(const FiniteSet& a, const FiniteSet& f) {
  if (!(a.group() == f.group())) throw DimensionMismatch("direct_sum across groups");
  if (a.empty() || f.empty()) return FiniteSet(a.group());
  std::map<GroupElement, std::pair<std::size_t, std::size_t>> seen;
  std::size_t ia = 0;
  for (const auto& x : a) {
    std::size_t jf = 0;
    for (const auto& y : f) {
      auto s = a.group().add(x, y);
      auto [it, fresh] = seen.emplace(s, std::make_pair(ia, jf));
      if (!fresh)
        throw OverlapError(s, to_string(s) + " = " + to_string(a.elements()[it->second.first]) +
                                  "+" + to_string(f.elements()[it->second.second]) + " = " +
                                  to_string(x) + "+" + to_string(y));
      ++jf;
    }
    ++ia;
  }
  std::vector<GroupElement> out;
  out.reserve(seen.size());
  for (auto& kv : seen) out.push_back(kv.first);
  return FiniteSet(a.group(), std::move(out));
}

PeriodicSet::PeriodicSet(ExplicitGroup g, std::int64_t r, FiniteSet reps)
    : PeriodicSet(g, std::vector<std::int64_t>(g.free_rank(), r), std::move(reps)) {}

PeriodicSet::PeriodicSet(ExplicitGroup g, std::vector<std::int64_t> periods, FiniteSet reps)
    : group_(std::move(g)), periods_(std::move(periods)), reps_(std::move(reps)) {
  if (periods_.size() != static_cast<std::size_t>(group_.free_rank()))
    throw DimensionMismatch("one period per free coordinate");
  for (auto r : periods_)
    if (r < 1) throw PeriodMismatch("period must be positive");
  if (!(reps_.group() == quotient()))
    throw DimensionMismatch("reps must live in " + quotient().to_string());
}

PeriodicSet PeriodicSet::cylinder(const ExplicitGroup& g, const std::vector<GroupElement>& e0) {
  std::vector<GroupElement> reps;
  for (const auto& x : e0) {
    if (x.size() != g.moduli().size()) throw DimensionMismatch("cylinder base element");
    GroupElement r(g.free_rank(), 0);
    r.insert(r.end(), x.begin(), x.end());
    reps.push_back(std::move(r));
  }
  std::vector<std::int64_t> ones(g.free_rank(), 1);
  return PeriodicSet(g, ones, FiniteSet(g.torus(ones), std::move(reps)));
}

PeriodicSet PeriodicSet::full(const ExplicitGroup& g) {
  return cylinder(g, g.torsion().elements());
}

bool PeriodicSet::contains(const GroupElement& a) const {
  return reps_.contains(reduce_to_torus(group_, a, periods_));
}

FiniteSet PeriodicSet::restrict_to_torus(std::span<const std::int64_t> free_moduli) const {
  if (free_moduli.size() != periods_.size()) throw DimensionMismatch("torus moduli count");
  std::uint64_t copies = 1;
  for (std::size_t i = 0; i < periods_.size(); ++i) {
    if (free_moduli[i] < 1 || free_moduli[i] % periods_[i] != 0)
      throw PeriodMismatch("torus modulus " + std::to_string(free_moduli[i]) +
                           " is not a multiple of period " + std::to_string(periods_[i]));
    copies *= static_cast<std::uint64_t>(free_moduli[i] / periods_[i]);
  }
  auto torus = group_.torus(free_moduli);
  std::vector<GroupElement> out;
  out.reserve(copies * reps_.size());
  const int d = group_.free_rank();
  for (const auto& rep : reps_) {
    for (std::uint64_t c = 0; c < copies; ++c) {
      GroupElement e = rep;
      std::uint64_t k = c;
      for (int i = d; i-- > 0;) {
        auto m = static_cast<std::uint64_t>(free_moduli[i] / periods_[i]);
        e[i] += static_cast<std::int64_t>(k % m) * periods_[i];
        k /= m;
      }
      out.push_back(std::move(e));
    }
  }
  return FiniteSet(torus, std::move(out));
}

PeriodicSet PeriodicSet::refine(std::vector<std::int64_t> periods) const {
  auto reps = restrict_to_torus(periods);
  return PeriodicSet(group_, std::move(periods), std::move(reps));
}

FiniteSet restrict_to_torus(const FiniteSet& s, std::span<const std::int64_t> free_moduli) {
  auto torus = s.group().torus(free_moduli);
  std::vector<GroupElement> out;
  out.reserve(s.size());
  for (const auto& e : s) out.push_back(reduce_to_torus(s.group(), e, free_moduli));
  return FiniteSet(torus, std::move(out));
}

}  // namespace tileforge
