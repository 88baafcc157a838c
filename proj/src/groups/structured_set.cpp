#include "tileforge/groups/structured_set.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "tileforge/error.hpp"

namespace tileforge {
namespace {

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

const std::vector<std::size_t>& coords_of(const Factor& f) {
  return std::visit([](const auto& x) -> const std::vector<std::size_t>& { return x.coords; }, f);
}

std::int64_t fiber_value(const FiberFactor& f, const GroupElement& y) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < f.coords.size(); ++i)
    s = mod(s + mod(f.coeffs[i], f.modulus) * mod(y[f.coords[i]], f.modulus), f.modulus);
  return s;
}

bool factor_contains(const Factor& f, const GroupElement& y) {
  if (auto* l = std::get_if<ListFactor>(&f)) {
    std::vector<std::int64_t> t;
    t.reserve(l->coords.size());
    for (auto c : l->coords) t.push_back(y[c]);
    return std::binary_search(l->allowed.begin(), l->allowed.end(), t);
  }
  const auto& fb = std::get<FiberFactor>(f);
  return std::binary_search(fb.targets.begin(), fb.targets.end(), fiber_value(fb, y));
}

// All tuples over `coords` (mixed radix), in lexicographic order.
std::vector<std::vector<std::int64_t>> all_tuples(const ExplicitGroup& g,
                                                  const std::vector<std::size_t>& coords,
                                                  std::uint64_t bound, const char* what) {
  std::uint64_t n = 1;
  for (auto c : coords) n = sat_mul(n, static_cast<std::uint64_t>(g.modulus_at(c)));
  if (n > bound) throw CostExceeded("structured_set", std::string(what) + " needs " +
                                                          std::to_string(n) + " candidates");
  std::vector<std::vector<std::int64_t>> out;
  out.reserve(n);
  std::vector<std::int64_t> t(coords.size(), 0);
  for (std::uint64_t k = 0; k < n; ++k) {
    out.push_back(t);
    for (std::size_t i = coords.size(); i-- > 0;) {
      if (++t[i] < g.modulus_at(coords[i])) break;
      t[i] = 0;
    }
  }
  return out;
}

std::vector<std::vector<std::int64_t>> factor_tuples(const ExplicitGroup& g, const Factor& f,
                                                     std::uint64_t bound) {
  if (auto* l = std::get_if<ListFactor>(&f)) return l->allowed;
  const auto& fb = std::get<FiberFactor>(f);
  std::vector<std::vector<std::int64_t>> out;
  GroupElement y(g.dim(), 0);
  for (auto& t : all_tuples(g, fb.coords, bound, "fiber factor")) {
    for (std::size_t i = 0; i < t.size(); ++i) y[fb.coords[i]] = t[i];
    if (std::binary_search(fb.targets.begin(), fb.targets.end(), fiber_value(fb, y)))
      out.push_back(std::move(t));
  }
  return out;
}

BigInt fiber_size(const ExplicitGroup& g, const FiberFactor& f) {
  // Residue-count DP over the coordinates of the linear form.
  std::vector<BigInt> cnt(f.modulus, 0);
  cnt[0] = 1;
  for (std::size_t i = 0; i < f.coords.size(); ++i) {
    std::vector<BigInt> nxt(f.modulus, 0);
    auto n = g.modulus_at(f.coords[i]);
    // y ranges over [0, n); since modulus | n each residue of a*y repeats n/q times.
    std::vector<std::int64_t> hits(f.modulus, 0);
    for (std::int64_t y = 0; y < f.modulus; ++y) ++hits[mod(f.coeffs[i] * y, f.modulus)];
    for (std::int64_t r = 0; r < f.modulus; ++r) {
      if (cnt[r] == 0) continue;
      for (std::int64_t s = 0; s < f.modulus; ++s)
        if (hits[s]) nxt[(r + s) % f.modulus] += cnt[r] * hits[s] * (n / f.modulus);
    }
    cnt = std::move(nxt);
  }
  BigInt total = 0;
  for (auto t : f.targets) total += cnt[t];
  return total;
}

std::vector<std::int64_t> sorted_residues(std::vector<std::int64_t> v, std::int64_t q) {
  for (auto& x : v) x = mod(x, q);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

StructuredSet::StructuredSet(ExplicitGroup g, std::vector<Box> boxes)
    : group_(std::move(g)), boxes_(std::move(boxes)) {
  if (!group_.is_finite()) throw NotFinite("structured sets live in finite groups");
  for (auto& b : boxes_) {
    std::set<std::size_t> used;
    for (auto& f : b.factors) {
      for (auto c : coords_of(f)) {
        if (c >= group_.dim()) throw DimensionMismatch("factor coordinate out of range");
        if (!used.insert(c).second) throw DimensionMismatch("factors of a box must be disjoint");
      }
      if (auto* l = std::get_if<ListFactor>(&f)) {
        for (auto& t : l->allowed) {
          if (t.size() != l->coords.size()) throw DimensionMismatch("list tuple arity");
          for (std::size_t i = 0; i < t.size(); ++i) t[i] = mod(t[i], group_.modulus_at(l->coords[i]));
        }
        std::sort(l->allowed.begin(), l->allowed.end());
        l->allowed.erase(std::unique(l->allowed.begin(), l->allowed.end()), l->allowed.end());
      } else {
        auto& fb = std::get<FiberFactor>(f);
        if (fb.coeffs.size() != fb.coords.size()) throw DimensionMismatch("fiber arity");
        for (auto c : fb.coords)
          if (group_.modulus_at(c) % fb.modulus != 0)
            throw DimensionMismatch("fiber modulus must divide coordinate moduli");
        fb.targets = sorted_residues(std::move(fb.targets), fb.modulus);
      }
    }
  }
}

StructuredSet StructuredSet::full(const ExplicitGroup& g) { return StructuredSet(g, {Box{}}); }

StructuredSet StructuredSet::empty(const ExplicitGroup& g) { return StructuredSet(g, {}); }

StructuredSet StructuredSet::from_finite(const FiniteSet& s) {
  if (s.empty()) return empty(s.group());
  ListFactor l;
  for (std::size_t i = 0; i < s.group().dim(); ++i) l.coords.push_back(i);
  l.allowed = s.elements();
  return StructuredSet(s.group(), {Box{{l}}});
}

StructuredSet StructuredSet::coordinate_preimage(const ExplicitGroup& g, std::size_t d,
                                                 std::vector<std::int64_t> values) {
  ListFactor l{{d}, {}};
  for (auto v : values) l.allowed.push_back({v});
  return StructuredSet(g, {Box{{l}}});
}

StructuredSet StructuredSet::linear_fiber(const ExplicitGroup& g, std::vector<std::int64_t> coeffs,
                                          std::int64_t q, std::vector<std::int64_t> targets) {
  if (coeffs.size() != g.dim()) throw DimensionMismatch("linear form arity");
  FiberFactor f;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (mod(coeffs[i], q) == 0) continue;
    f.coords.push_back(i);
    f.coeffs.push_back(mod(coeffs[i], q));
  }
  f.modulus = q;
  f.targets = std::move(targets);
  if (f.coords.empty()) {
    // Degenerate form: the whole group or nothing.
    bool zero_ok = std::find_if(f.targets.begin(), f.targets.end(),
                                [q](auto t) { return mod(t, q) == 0; }) != f.targets.end();
    return zero_ok ? full(g) : empty(g);
  }
  return StructuredSet(g, {Box{{f}}});
}

bool StructuredSet::contains(const GroupElement& y0) const {
  auto y = group_.normalize(y0);
  for (const auto& b : boxes_) {
    bool ok = true;
    for (const auto& f : b.factors)
      if (!factor_contains(f, y)) {
        ok = false;
        break;
      }
    if (ok) return true;
  }
  return false;
}

StructuredSet StructuredSet::translate(const GroupElement& v0) const {
  auto v = group_.normalize(v0);
  auto boxes = boxes_;
  for (auto& b : boxes)
    for (auto& f : b.factors) {
      if (auto* l = std::get_if<ListFactor>(&f)) {
        for (auto& t : l->allowed)
          for (std::size_t i = 0; i < t.size(); ++i) t[i] += v[l->coords[i]];
      } else {
        auto& fb = std::get<FiberFactor>(f);
        auto shift = fiber_value(fb, v);
        for (auto& t : fb.targets) t += shift;
      }
    }
  return StructuredSet(group_, std::move(boxes));
}

StructuredSet StructuredSet::negate() const {
  auto boxes = boxes_;
  for (auto& b : boxes)
    for (auto& f : b.factors) {
      if (auto* l = std::get_if<ListFactor>(&f)) {
        for (auto& t : l->allowed)
          for (auto& x : t) x = -x;
      } else {
        for (auto& t : std::get<FiberFactor>(f).targets) t = -t;
      }
    }
  return StructuredSet(group_, std::move(boxes));
}

std::uint64_t StructuredSet::constrained_cost(const ExplicitGroup& g, const Box& b) {
  std::uint64_t c = 1;
  for (const auto& f : b.factors) {
    if (auto* l = std::get_if<ListFactor>(&f)) {
      c = sat_mul(c, l->allowed.size());
    } else {
      auto s = fiber_size(g, std::get<FiberFactor>(f));
      c = s > std::numeric_limits<std::uint64_t>::max() ? std::numeric_limits<std::uint64_t>::max()
                                                        : sat_mul(c, static_cast<std::uint64_t>(s));
    }
  }
  return c;
}

BigInt StructuredSet::cardinality(std::uint64_t bound) const {
  if (boxes_.size() > 1) {
    bool small = true;
    try {
      small = group_.order() <= bound;
    } catch (const CostExceeded&) {
      small = false;
    }
    if (small) return enumerate(bound).size();
  }
  BigInt total = 0;
  for (const auto& b : boxes_) {
    BigInt s = 1;
    std::set<std::size_t> used;
    for (const auto& f : b.factors) {
      for (auto c : coords_of(f)) used.insert(c);
      if (auto* l = std::get_if<ListFactor>(&f))
        s *= l->allowed.size();
      else
        s *= fiber_size(group_, std::get<FiberFactor>(f));
    }
    for (std::size_t c = 0; c < group_.dim(); ++c)
      if (!used.count(c)) s *= group_.modulus_at(c);
    total += s;
  }
  return total;
}

FiniteSet StructuredSet::enumerate(std::uint64_t bound) const {
  std::vector<GroupElement> out;
  for (const auto& b : boxes_) {
    // Backward enumeration: product of factor tuples times the FULL coordinates.
    std::vector<std::pair<std::vector<std::size_t>, std::vector<std::vector<std::int64_t>>>> parts;
    std::set<std::size_t> used;
    std::uint64_t size = 1;
    for (const auto& f : b.factors) {
      for (auto c : coords_of(f)) used.insert(c);
      parts.emplace_back(coords_of(f), factor_tuples(group_, f, bound));
      size = sat_mul(size, parts.back().second.size());
    }
    std::vector<std::size_t> free_coords;
    for (std::size_t c = 0; c < group_.dim(); ++c)
      if (!used.count(c)) free_coords.push_back(c);
    std::uint64_t free_size = 1;
    for (auto c : free_coords) free_size = sat_mul(free_size, group_.modulus_at(c));
    size = sat_mul(size, free_size);
    if (size > bound || out.size() + size > bound)
      throw CostExceeded("structured_set", "enumeration of " + std::to_string(size) +
                                               " elements exceeds bound " + std::to_string(bound));
    if (size == 0) continue;
    parts.emplace_back(free_coords, all_tuples(group_, free_coords, bound, "full coordinates"));
    std::vector<std::size_t> pos(parts.size(), 0);
    GroupElement y(group_.dim(), 0);
    while (true) {
      for (std::size_t p = 0; p < parts.size(); ++p) {
        const auto& t = parts[p].second[pos[p]];
        for (std::size_t i = 0; i < t.size(); ++i) y[parts[p].first[i]] = t[i];
      }
      out.push_back(y);
      std::size_t p = parts.size();
      while (p-- > 0) {
        if (++pos[p] < parts[p].second.size()) break;
        pos[p] = 0;
      }
      if (p == static_cast<std::size_t>(-1)) break;
    }
  }
  return FiniteSet(group_, std::move(out));
}

FiniteSet restrict_to_torus(const StructuredSet& s, std::uint64_t bound) { return s.enumerate(bound); }

// ---------------------------------------------------------------------------

UnionChecker::UnionChecker(std::vector<StructuredSet> pieces, StructuredSet target,
                           std::uint64_t bound)
    : group_(target.group()), pieces_(std::move(pieces)), target_(std::move(target)) {
  for (const auto& p : pieces_)
    if (!(p.group() == group_)) throw DimensionMismatch("union pieces in different groups");
  for (const auto& p : pieces_) compiled_pieces_.push_back(compile(p));
  compiled_target_ = compile(target_);

  // Image of y -> (features) is generated by the images of the unit vectors.
  std::vector<std::vector<std::int64_t>> gens;
  for (std::size_t i = 0; i < group_.dim(); ++i) {
    GroupElement e(group_.dim(), 0);
    e[i] = 1;
    auto g = features_of(e);
    if (std::any_of(g.begin(), g.end(), [](auto x) { return x != 0; })) gens.push_back(g);
  }
  std::set<std::vector<std::int64_t>> seen;
  std::vector<std::int64_t> zero(features_.size(), 0);
  seen.insert(zero);
  image_.push_back(zero);
  for (std::size_t k = 0; k < image_.size(); ++k) {
    for (const auto& g : gens) {
      auto n = image_[k];
      for (std::size_t i = 0; i < n.size(); ++i) n[i] = (n[i] + g[i]) % features_[i].modulus;
      if (seen.insert(n).second) {
        image_.push_back(std::move(n));
        if (image_.size() > bound)
          throw CostExceeded("union_check", "feature image exceeds bound");
      }
    }
  }
}

std::size_t UnionChecker::feature_index(const Feature& f) {
  for (std::size_t i = 0; i < features_.size(); ++i)
    if (features_[i] == f) return i;
  features_.push_back(f);
  return features_.size() - 1;
}

UnionChecker::CompiledSet UnionChecker::compile(const StructuredSet& s) {
  CompiledSet out;
  for (const auto& b : s.boxes()) {
    std::vector<CompiledFactor> cb;
    for (const auto& f : b.factors) {
      CompiledFactor cf;
      cf.factor = f;
      if (auto* l = std::get_if<ListFactor>(&f)) {
        cf.is_list = true;
        for (auto c : l->coords) {
          Feature ft{std::vector<std::int64_t>(group_.dim(), 0), group_.modulus_at(c)};
          ft.coeffs[c] = 1;
          cf.feats.push_back(feature_index(ft));
          cf.coord_moduli.push_back(group_.modulus_at(c));
        }
      } else {
        const auto& fb = std::get<FiberFactor>(f);
        cf.is_list = false;
        Feature ft{std::vector<std::int64_t>(group_.dim(), 0), fb.modulus};
        for (std::size_t i = 0; i < fb.coords.size(); ++i) ft.coeffs[fb.coords[i]] = fb.coeffs[i];
        cf.feats.push_back(feature_index(ft));
      }
      cb.push_back(std::move(cf));
    }
    out.boxes.push_back(std::move(cb));
  }
  return out;
}

std::vector<std::int64_t> UnionChecker::features_of(const GroupElement& v) const {
  std::vector<std::int64_t> out(features_.size(), 0);
  for (std::size_t k = 0; k < features_.size(); ++k) {
    std::int64_t s = 0;
    const auto q = features_[k].modulus;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (features_[k].coeffs[i]) s = mod(s + mod(features_[k].coeffs[i], q) * mod(v[i], q), q);
    out[k] = s;
  }
  return out;
}

bool UnionChecker::member(const CompiledSet& s, const std::vector<std::int64_t>& p,
                          const std::vector<std::int64_t>& shift) const {
  std::vector<std::int64_t> t;
  for (const auto& b : s.boxes) {
    bool ok = true;
    for (const auto& f : b) {
      if (f.is_list) {
        t.clear();
        for (std::size_t i = 0; i < f.feats.size(); ++i)
          t.push_back(mod(p[f.feats[i]] - shift[f.feats[i]], f.coord_moduli[i]));
        const auto& al = std::get<ListFactor>(f.factor).allowed;
        ok = std::binary_search(al.begin(), al.end(), t);
      } else {
        const auto& fb = std::get<FiberFactor>(f.factor);
        auto k = f.feats[0];
        ok = std::binary_search(fb.targets.begin(), fb.targets.end(),
                                mod(p[k] - shift[k], fb.modulus));
      }
      if (!ok) break;
    }
    if (ok) return true;
  }
  return false;
}

bool UnionChecker::check(std::span<const GroupElement> shifts) const {
  if (shifts.size() != pieces_.size()) throw DimensionMismatch("one shift per piece");
  std::vector<std::vector<std::int64_t>> sf;
  sf.reserve(shifts.size());
  for (const auto& v : shifts) {
    group_.check(v);
    sf.push_back(features_of(v));
  }
  std::vector<std::int64_t> zero(features_.size(), 0);
  for (const auto& p : image_) {
    int count = 0;
    for (std::size_t i = 0; i < compiled_pieces_.size(); ++i)
      if (member(compiled_pieces_[i], p, sf[i]) && ++count > 1) return false;
    if (count != (member(compiled_target_, p, zero) ? 1 : 0)) return false;
  }
  return true;
}

}  // namespace tileforge
