#include "tileforge/nonab/encoding.hpp"

#include <algorithm>

namespace tileforge {

namespace {

constexpr std::array<Cell, 2> kK{cell(0, 0), cell(0, 2)};
constexpr Cell kDefectValue = cell(0, 1);

ExplicitGroup torus_group(const LinearEncoding& enc) { return enc.f.group(); }

Cell to_cell(std::int64_t a, std::int64_t b) { return cell(static_cast<int>(mod(a, 4)), static_cast<int>(mod(b, 4))); }

GroupElement shift_on_torus(const LinearEncoding& enc, std::size_t d) {
  const auto& h = enc.system.shifts[d];
  return reduce_to_torus(ExplicitGroup::lattice(static_cast<int>(h.size())), h, enc.f.torus);
}

std::string point_str(const BigPoint& p) {
  std::string s = "n=" + to_string(p.n) + " t=" + std::to_string(p.t) + " y=(";
  for (std::size_t i = 0; i < p.y.size(); ++i) s += (i ? "," : "") + std::to_string(p.y[i]);
  s += ") zeta=";
  for (const auto& z : p.zeta) s += z.str();
  return s;
}

}  // namespace

std::vector<std::int64_t> LinearEncoding::y_at(std::size_t cell_index, int t) const {
  const auto d_count = static_cast<std::size_t>(system.D);
  std::vector<std::int64_t> y(2 * d_count);
  const std::int64_t sign = t ? -1 : 1;
  for (std::size_t d = 0; d < d_count; ++d)
    for (std::size_t j = 0; j < 2; ++j) y[2 * d + j] = mod(sign * f.f[j * d_count + d][cell_index], N);
  return y;
}

std::uint64_t LinearEncoding::count_fixed(std::size_t cell_index, int t,
                                          const std::vector<std::pair<std::size_t, Perm16>>& fixed) const {
  if (fixed.empty()) throw CostExceeded("linear_encoding_forward", "no fixed coordinate: the fiber has 15! matches");
  const auto y = y_at(cell_index, t);
  std::uint64_t total = 0;
  for (int mode = 0; mode < (defect ? 2 : 1); ++mode) {
    auto fiber = [&](std::size_t d) {
      const Cell c = to_cell(y[2 * d], y[2 * d + 1]);
      return mode && d == 0 ? cell_add(c, cell(2, 0)) : c;
    };
    std::uint64_t k = 0;
    bool ok = true;
    const Perm16* first = nullptr;
    for (const auto& [d, z] : fixed) {
      const Cell c = fiber(d);
      if (z(c) != 0) {
        ok = false;
        break;
      }
      const auto r = rank_in_fiber(z, c);
      if (k && k != r) {
        ok = false;
        break;
      }
      k = r;
      if (d == 0) first = &z;
    }
    if (!ok) continue;
    if (mode) {
      const Perm16 z0 = first ? *first : unrank_in_fiber(k, fiber(0));
      if (z0(0) != kDefectValue) continue;
    }
    ++total;
  }
  return total;
}

bool LinearEncoding::contains(const BigPoint& p) const {
  const auto tg = f.group();
  const auto idx = tg.index_of(tg.normalize(p.n));
  const auto y = y_at(idx, p.t & 1);
  if (p.y.size() != y.size() || p.zeta.size() != static_cast<std::size_t>(system.D)) return false;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (mod(p.y[i], N) != y[i]) return false;
  std::vector<std::pair<std::size_t, Perm16>> fixed;
  for (std::size_t d = 0; d < p.zeta.size(); ++d) fixed.emplace_back(d, p.zeta[d]);
  return count_fixed(idx, p.t & 1, fixed) > 0;
}

LinearEncoding make_linear_encoding(const LinearBooleanSystem& s, const BoolFunctions& f, std::int64_t N, bool defect) {
  s.validate();
  const auto D = static_cast<std::size_t>(s.D);
  if (f.f.size() != 2 * D) throw DimensionMismatch("need 2D Boolean functions");
  const auto max_sum = s.max_abs_row_sum();
  if (N == 0) {
    N = 4;
    while (N <= max_sum) N += 4;
  }
  if (N % 4 != 0 || N <= max_sum)
    throw PreconditionFailed("N = " + std::to_string(N) + " must be a multiple of 4 above " + std::to_string(max_sum));

  LinearEncoding enc{s, f, N, defect};
  const auto tg = f.group();
  for (std::size_t n = 0; n < f.cells(); ++n) {
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t m = 0; m < s.coeffs[j].size(); ++m) {
        std::int64_t sum = 0;
        for (std::size_t d = 0; d < D; ++d) sum += s.coeffs[j][m][d] * f.f[j * D + d][n];
        if (sum != 0)
          throw PreconditionFailed("linear row " + std::to_string(m + 1) + " of f_" + std::to_string(j + 1) +
                                   " fails at " + to_string(tg.element_at(n)) + " (sum " + std::to_string(sum) + ")");
      }
    for (std::size_t d = 0; d < static_cast<std::size_t>(s.D0); ++d) {
      const auto m = tg.index_of(tg.add(tg.element_at(n), shift_on_torus(enc, d)));
      if (f.f[D + d][m] != -f.f[d][n])
        throw PreconditionFailed("pairing f_2," + std::to_string(d + 1) + "(n + h) = -f_1," + std::to_string(d + 1) +
                                 "(n) fails at " + to_string(tg.element_at(n)));
    }
  }
  return enc;
}

std::vector<TileFamily> bigtile_families(const LinearEncoding& enc, int cycles, int stabilizers, std::uint64_t seed) {
  const auto& s = enc.system;
  const auto D = static_cast<std::size_t>(s.D);
  const auto N = enc.N;
  const auto zero = torus_group(enc).zero();
  Rng rng(seed);
  std::vector<TileFamily> out;

  auto cycle_pieces = [&](const Perm16& sigma, const Perm16& phi, std::size_t d, int dt,
                          std::function<bool(const std::vector<std::int64_t>&)> y_ok) {
    std::vector<TilePiece> p;
    for (int i = 0; i < 16; ++i) p.push_back({zero, dt, y_ok, {{d, i == 0 ? phi : times(i, sigma)}}});
    return p;
  };

  // 1: {0} x H_j^(m) x C_sigma, C_sigma = <sigma> x S_16^{D-1}.
  for (std::size_t j = 0; j < 2; ++j)
    for (std::size_t m = 0; m < s.coeffs[j].size(); ++m) {
      const auto row = s.coeffs[j][m];
      auto in_h = [row, j, N](const std::vector<std::int64_t>& y) {
        std::int64_t sum = 0;
        for (std::size_t d = 0; d < row.size(); ++d) sum += row[d] * y[2 * d + j];
        return mod(sum, N) == 0;
      };
      for (int c = 0; c < cycles; ++c) {
        TileFamily fam{"bigtile-1[j=" + std::to_string(j + 1) + ",m=" + std::to_string(m + 1) +
                           ",cycle=" + std::to_string(c) + "]",
                       cycle_pieces(random_cycle(rng), Perm16(), 0, 0, in_h),
                       [in_h](const BigPoint& e) { return in_h(e.y); }};
        out.push_back(std::move(fam));
      }
    }

  // 2: {0} x Z_2 x (coordinate (d,j) = 0) x C_sigma onto coordinate (d,j) in {-1,1}.
  for (std::size_t d = 0; d < D; ++d)
    for (std::size_t j = 0; j < 2; ++j) {
      const auto idx = 2 * d + j;
      auto vanish = [idx](const std::vector<std::int64_t>& y) { return y[idx] == 0; };
      for (int c = 0; c < cycles; ++c) {
        const auto sigma = random_cycle(rng);
        auto p = cycle_pieces(sigma, Perm16(), 0, 0, vanish);
        auto q = cycle_pieces(sigma, Perm16(), 0, 1, vanish);
        p.insert(p.end(), q.begin(), q.end());
        out.push_back({"bigtile-2[d=" + std::to_string(d + 1) + ",j=" + std::to_string(j + 1) +
                           ",cycle=" + std::to_string(c) + "]",
                       std::move(p), [idx, N](const BigPoint& e) { return e.y[idx] == 1 || e.y[idx] == N - 1; }});
      }
    }

  // 3: T_d (+) T'_d onto zeta_d in B.
  auto any_y = [](const std::vector<std::int64_t>&) { return true; };
  const auto tg = torus_group(enc);
  for (std::size_t d = 0; d < static_cast<std::size_t>(s.D0); ++d) {
    TileFamily fam{"bigtile-3[d=" + std::to_string(d + 1) + "]", {},
                   [d](const BigPoint& e) { return in_cube(pi(e.zeta[d])); }};
    const auto back = tg.neg(shift_on_torus(enc, d));
    for (auto k : kK) fam.pieces.push_back({zero, 0, any_y, {{d, tau(k)}}});
    for (auto k : kK) fam.pieces.push_back({back, 0, any_y, {{d, rho() + tau(k)}}});
    out.push_back(std::move(fam));
  }

  // 4: graph form of the cube encoding on coordinate d.
  std::vector<std::pair<Perm16, Perm16>> pairs;
  for (int c = 0; c < cycles; ++c) {
    const auto sigma = random_cycle(rng);
    pairs.emplace_back(sigma, Perm16());
    for (int k = 0; k < stabilizers; ++k) pairs.emplace_back(sigma, random_stabilizer(rng));
  }
  for (std::size_t d = 0; d < D; ++d) {
    TileFamily fam{"bigtile-4[d=" + std::to_string(d + 1) + ",tau]", {}, [d](const BigPoint& e) {
                     const Cell p = pi(e.zeta[d]);
                     return in_cube(p) && to_cell(e.y[2 * d], e.y[2 * d + 1]) == p;
                   }};
    for (auto h : kEvenCells)
      fam.pieces.push_back({zero, 0, [d, h](const std::vector<std::int64_t>& y) {
                              return to_cell(y[2 * d], y[2 * d + 1]) == h;
                            },
                            {{d, tau(h)}}});
    out.push_back(std::move(fam));
    for (std::size_t i = 0; i < pairs.size(); ++i)
      out.push_back({"bigtile-4[d=" + std::to_string(d + 1) + ",cycle=" + std::to_string(i) + "]",
                     cycle_pieces(pairs[i].first, pairs[i].second, d, 0, any_y),
                     [](const BigPoint&) { return true; }});
  }
  return out;
}

std::uint64_t count_representations(const LinearEncoding& enc, const TileFamily& fam, const BigPoint& e) {
  const auto tg = torus_group(enc);
  std::uint64_t k = 0;
  std::vector<std::int64_t> fy(e.y.size());
  for (const auto& p : fam.pieces) {
    const auto cell_index = tg.index_of(tg.sub(e.n, p.dn));
    const int t = (e.t - p.dt) & 1;
    const auto ya = enc.y_at(cell_index, t);
    for (std::size_t i = 0; i < fy.size(); ++i) fy[i] = mod(e.y[i] - ya[i], enc.N);
    if (!p.y_ok(fy)) continue;
    std::vector<std::pair<std::size_t, Perm16>> fixed;
    for (const auto& [d, z] : p.zeta) fixed.emplace_back(d, e.zeta[d] - z);
    k += enc.count_fixed(cell_index, t, fixed);
  }
  return k;
}

BigPoint sample_point(const LinearEncoding& enc, Rng& rng) {
  const auto tg = torus_group(enc);
  BigPoint e;
  e.n = tg.element_at(static_cast<std::size_t>(rng() % tg.order()));
  e.t = static_cast<int>(rng() & 1);
  e.y.resize(2 * static_cast<std::size_t>(enc.D()));
  for (auto& v : e.y) v = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(enc.N));
  for (int d = 0; d < enc.D(); ++d) e.zeta.push_back(random_perm(rng));
  return e;
}

CoverStats check_family(const LinearEncoding& enc, const TileFamily& fam, std::uint64_t samples, std::uint64_t seed) {
  if (fam.pieces.size() > kMaxListedFactor) throw CostExceeded("linear_encoding_forward", fam.name + " lists too much");
  return detail::run_samples(fam.name, samples, seed, [&](Rng& rng) {
    auto e = sample_point(enc, rng);
    const auto k = count_representations(enc, fam, e);
    return detail::SampleOutcome{fam.in_target(e), k, [e] { return point_str(e); }};
  });
}

std::vector<CoverStats> linear_encoding_forward(const LinearBooleanSystem& s, const BoolFunctions& f,
                                                const EncodingOptions& opt) {
  const auto enc = make_linear_encoding(s, f, opt.N, opt.defect);
  std::vector<CoverStats> out;
  std::uint64_t i = 0;
  for (const auto& fam : bigtile_families(enc, opt.cycles, opt.stabilizers, opt.seed))
    out.push_back(check_family(enc, fam, opt.samples, opt.seed + 1 + i++));
  return out;
}

std::pair<std::vector<Cell>, std::vector<Cell>> pairing_halves(const LinearEncoding& enc, std::size_t cell_index,
                                                                int t, std::size_t d) {
  if (d >= static_cast<std::size_t>(enc.system.D0)) throw PreconditionFailed("d is not a paired coordinate");
  const auto tg = torus_group(enc);
  const auto next = tg.index_of(tg.add(tg.element_at(cell_index), shift_on_torus(enc, d)));
  const auto y = enc.y_at(cell_index, t), y2 = enc.y_at(next, t);
  const Cell c = to_cell(y[2 * d], y[2 * d + 1]);
  const Cell c2 = rho()(to_cell(y2[2 * d], y2[2 * d + 1]));
  std::pair<std::vector<Cell>, std::vector<Cell>> out;
  for (auto k : kK) {
    out.first.push_back(cell_add(c, k));
    out.second.push_back(cell_add(c2, k));
  }
  return out;
}

}  // namespace tileforge
