#include "tileforge/tiling/swap.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "tileforge/error.hpp"

namespace tileforge {
namespace {

std::vector<Complex> dft(const ExplicitGroup& g, std::span<const Complex> f, double sign) {
  if (!g.is_finite()) throw NotFinite("Fourier transform needs a finite group");
  const auto n = g.order();
  if (f.size() != n) throw DimensionMismatch("function size does not match group order");
  const auto elems = g.elements();
  std::vector<Complex> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    Complex s = 0;
    for (std::size_t x = 0; x < n; ++x) {
      if (f[x] == Complex(0)) continue;
      double phase = 0;
      for (std::size_t i = 0; i < g.moduli().size(); ++i)
        phase += static_cast<double>(mod(elems[k][i] * elems[x][i], g.moduli()[i])) /
                 static_cast<double>(g.moduli()[i]);
      s += f[x] * std::polar(1.0, sign * 2 * std::numbers::pi * phase);
    }
    out[k] = s;
  }
  return out;
}

// Fibers of a subset of Z x G0 as indicator vectors over G0.
std::map<std::int64_t, std::vector<Complex>> fibers(const FiniteSet& a, const ExplicitGroup& g0) {
  std::map<std::int64_t, std::vector<Complex>> out;
  for (const auto& x : a) {
    auto& v = out[x[0]];
    if (v.empty()) v.assign(g0.order(), 0);
    v[g0.index_of(GroupElement(x.begin() + 1, x.end()))] += 1;
  }
  return out;
}

}  // namespace

std::vector<Complex> fourier(const ExplicitGroup& g0, std::span<const Complex> f) {
  return dft(g0, f, -1);
}

std::vector<Complex> inverse_fourier(const ExplicitGroup& g0, std::span<const Complex> fhat) {
  auto v = dft(g0, fhat, +1);
  for (auto& x : v) x /= static_cast<double>(g0.order());
  return v;
}

FiniteSet fiber_swap(const FiniteSet& a0, const FiniteSet& a1,
                     const std::function<int(std::int64_t)>& omega,
                     std::optional<std::int64_t> agree_through) {
  const auto& g = a0.group();
  if (!(a1.group() == g)) throw DimensionMismatch("swap across groups");
  if (g.free_rank() != 1) throw DimensionMismatch("fiber_swap needs Z x G0");
  if (agree_through) {
    auto fiber = [](const FiniteSet& s, std::int64_t n) {
      std::vector<GroupElement> v;
      for (const auto& x : s)
        if (x[0] == n) v.push_back(x);
      return v;
    };
    std::vector<std::int64_t> cols;
    for (const auto* s : {&a0, &a1})
      for (const auto& x : *s)
        if (x[0] <= *agree_through) cols.push_back(x[0]);
    for (auto n : cols)
      if (fiber(a0, n) != fiber(a1, n))
        throw AgreementViolation("fibers differ at n = " + std::to_string(n));
  }
  std::vector<GroupElement> out;
  for (const auto& x : a0)
    if (omega(x[0]) == 0) out.push_back(x);
  for (const auto& x : a1)
    if (omega(x[0]) != 0) out.push_back(x);
  return FiniteSet(g, std::move(out));
}

DichotomyReport swap_dichotomy_check(const FiniteSet& a0, const FiniteSet& a1, const FiniteSet& f) {
  const auto& g = a0.group();
  if (!(a1.group() == g) || !(f.group() == g)) throw DimensionMismatch("sets in different groups");
  if (g.free_rank() != 1) throw DimensionMismatch("swap_dichotomy_check needs Z x G0");
  const auto g0 = g.torsion();
  const auto n0 = g0.order();

  // f_n = 1_{A1_n} - 1_{A0_n}, keeping only nonzero fibers.
  auto f0 = fibers(a0, g0), f1 = fibers(a1, g0);
  std::map<std::int64_t, std::vector<Complex>> diff;
  for (auto& [n, v] : f1) diff[n] = v;
  for (auto& [n, v] : f0) {
    auto& d = diff[n];
    if (d.empty()) d.assign(n0, 0);
    for (std::size_t i = 0; i < n0; ++i) d[i] -= v[i];
  }
  std::erase_if(diff, [](const auto& kv) {
    return std::all_of(kv.second.begin(), kv.second.end(), [](Complex c) { return c == Complex(0); });
  });
  auto slices = fibers(f, g0);

  // Physical-space co-tiling: sum_l f_{n-l} * 1_{F_l} must vanish identically.
  if (!diff.empty()) {
    const auto lo = diff.begin()->first + slices.begin()->first;
    const auto hi = diff.rbegin()->first + slices.rbegin()->first;
    const auto elems = g0.elements();
    for (auto n = lo; n <= hi; ++n) {
      std::vector<double> conv(n0, 0);
      for (const auto& [l, s] : slices) {
        auto it = diff.find(n - l);
        if (it == diff.end()) continue;
        for (std::size_t x = 0; x < n0; ++x)
          if (it->second[x] != Complex(0))
            for (std::size_t y = 0; y < n0; ++y)
              if (s[y] != Complex(0)) conv[g0.index_of(g0.add(elems[x], elems[y]))] += it->second[x].real();
      }
      for (auto c : conv)
        if (std::abs(c) > 0.5)
          throw PrereqViolation("A0 (+) F and A1 (+) F differ in column " + std::to_string(n));
    }
  }

  DichotomyReport rep;
  rep.characters = n0;
  rep.fibers = diff.size();
  std::map<std::int64_t, std::vector<Complex>> fhat, shat;
  for (auto& [n, v] : diff) fhat[n] = fourier(g0, v);
  for (auto& [l, v] : slices) shat[l] = fourier(g0, v);
  for (std::size_t xi = 0; xi < n0; ++xi) {
    double a = 0, b = 0;
    for (auto& [l, v] : shat) a = std::max(a, std::abs(v[xi]));
    for (auto& [n, v] : fhat) b = std::max(b, std::abs(v[xi]));
    rep.max_dichotomy_defect = std::max(rep.max_dichotomy_defect, std::min(a, b));
  }
  if (!diff.empty()) {
    const auto lo = diff.begin()->first + shat.begin()->first;
    const auto hi = diff.rbegin()->first + shat.rbegin()->first;
    for (auto n = lo; n <= hi; ++n)
      for (std::size_t xi = 0; xi < n0; ++xi) {
        Complex s = 0;
        for (auto& [l, v] : shat) {
          auto it = fhat.find(n - l);
          if (it != fhat.end()) s += it->second[xi] * v[xi];
        }
        rep.max_residual = std::max(rep.max_residual, std::abs(s));
      }
  }
  rep.ok = rep.max_residual < kFourierTol && rep.max_dichotomy_defect < kFourierTol;
  return rep;
}

}  // namespace tileforge
