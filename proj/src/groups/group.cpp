#include "tileforge/groups/group.hpp"

#include <limits>
#include <sstream>

#include "tileforge/error.hpp"

namespace tileforge {

ExplicitGroup::ExplicitGroup(int free_rank, std::vector<std::int64_t> moduli)
    : free_rank_(free_rank), moduli_(std::move(moduli)) {
  if (free_rank_ < 0) throw DimensionMismatch("negative free rank");
  for (auto n : moduli_)
    if (n < 1) throw DimensionMismatch("modulus must be >= 1");
}

std::int64_t ExplicitGroup::modulus_at(std::size_t i) const {
  if (i < static_cast<std::size_t>(free_rank_)) return 0;
  return moduli_.at(i - free_rank_);
}

void ExplicitGroup::check(const GroupElement& a) const {
  if (a.size() != dim())
    throw DimensionMismatch("element " + tileforge::to_string(a) + " not in " + to_string());
}

GroupElement ExplicitGroup::normalize(GroupElement a) const {
  check(a);
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    auto& c = a[free_rank_ + i];
    c = mod(c, moduli_[i]);
  }
  return a;
}

GroupElement ExplicitGroup::add(const GroupElement& a, const GroupElement& b) const {
  check(a);
  check(b);
  GroupElement r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return normalize(std::move(r));
}

GroupElement ExplicitGroup::sub(const GroupElement& a, const GroupElement& b) const {
  check(a);
  check(b);
  GroupElement r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return normalize(std::move(r));
}

GroupElement ExplicitGroup::neg(const GroupElement& a) const {
  check(a);
  GroupElement r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return normalize(std::move(r));
}

GroupElement ExplicitGroup::scale(const GroupElement& a, std::int64_t k) const {
  check(a);
  GroupElement r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * k;
  return normalize(std::move(r));
}

std::uint64_t ExplicitGroup::order() const {
  if (!is_finite()) throw NotFinite("order of infinite group " + to_string());
  std::uint64_t n = 1;
  for (auto m : moduli_) {
    if (n > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(m))
      throw CostExceeded("order", "group order overflows 64 bits");
    n *= static_cast<std::uint64_t>(m);
  }
  return n;
}

std::size_t ExplicitGroup::index_of(const GroupElement& a) const {
  if (!is_finite()) throw NotFinite("index_of in infinite group");
  check(a);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < moduli_.size(); ++i)
    idx = idx * static_cast<std::size_t>(moduli_[i]) +
          static_cast<std::size_t>(mod(a[i], moduli_[i]));
  return idx;
}

GroupElement ExplicitGroup::element_at(std::size_t idx) const {
  if (!is_finite()) throw NotFinite("element_at in infinite group");
  GroupElement a(moduli_.size());
  for (std::size_t i = moduli_.size(); i-- > 0;) {
    auto m = static_cast<std::size_t>(moduli_[i]);
    a[i] = static_cast<std::int64_t>(idx % m);
    idx /= m;
  }
  return a;
}

std::vector<GroupElement> ExplicitGroup::elements() const {
  auto n = order();
  std::vector<GroupElement> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(element_at(i));
  return out;
}

ExplicitGroup ExplicitGroup::torus(std::span<const std::int64_t> free_moduli) const {
  if (free_moduli.size() != static_cast<std::size_t>(free_rank_))
    throw DimensionMismatch("torus needs one modulus per free coordinate");
  std::vector<std::int64_t> m(free_moduli.begin(), free_moduli.end());
  m.insert(m.end(), moduli_.begin(), moduli_.end());
  return finite(std::move(m));
}

ExplicitGroup ExplicitGroup::with_cyclic(std::int64_t n) const {
  auto m = moduli_;
  m.push_back(n);
  return ExplicitGroup(free_rank_, std::move(m));
}

ExplicitGroup ExplicitGroup::with_free(int k) const { return ExplicitGroup(free_rank_ + k, moduli_); }

std::string ExplicitGroup::to_string() const {
  std::ostringstream os;
  bool first = true;
  if (free_rank_ > 0) {
    os << "Z^" << free_rank_;
    first = false;
  }
  for (auto m : moduli_) {
    os << (first ? "" : " x ") << "Z_" << m;
    first = false;
  }
  if (first) os << "{0}";
  return os.str();
}

GroupElement reduce_to_torus(const ExplicitGroup& g, const GroupElement& a,
                             std::span<const std::int64_t> free_moduli) {
  g.check(a);
  if (free_moduli.size() != static_cast<std::size_t>(g.free_rank()))
    throw DimensionMismatch("torus moduli count");
  GroupElement r = a;
  for (std::size_t i = 0; i < free_moduli.size(); ++i) r[i] = mod(r[i], free_moduli[i]);
  for (std::size_t i = 0; i < g.moduli().size(); ++i) {
    auto& c = r[g.free_rank() + i];
    c = mod(c, g.moduli()[i]);
  }
  return r;
}

std::string to_string(const GroupElement& a) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
  os << ')';
  return os.str();
}

}  // namespace tileforge
