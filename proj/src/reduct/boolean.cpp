#include <algorithm>
#include <bit>
#include <map>

#include "detail.hpp"
#include "tileforge/error.hpp"
#include "tileforge/reduct/passes.hpp"

namespace tileforge {

namespace {

std::uint64_t low_bits(std::size_t n) { return n >= 64 ? ~0ull : (1ull << n) - 1; }

void check_rows(const BoolFunctions& f, std::size_t rows) {
  if (f.f.size() != rows) throw DimensionMismatch("wrong number of functions");
  for (const auto& r : f.f)
    if (r.size() != f.cells()) throw DimensionMismatch("function size != torus size");
}

}  // namespace

// ------------------------------------------------------------------ colorings

TileColoring tileset_to_boolean(const std::vector<FiniteSet>& tiles, std::uint64_t bound) {
  if (tiles.empty()) throw PreconditionFailed("need at least one tile");
  const auto& g = tiles[0].group();
  if (!g.moduli().empty()) throw PreconditionFailed("tiles must live in a lattice Z^r");
  for (const auto& t : tiles) {
    if (!(t.group() == g)) throw DimensionMismatch("tiles over different groups");
    if (t.empty()) throw EmptyTile("empty tile");
  }

  TileColoring tc;
  tc.tiles = tiles;
  for (std::size_t j = 0; j < tiles.size(); ++j)
    for (const auto& h : tiles[j]) tc.colors.emplace_back(j, h);
  const auto C = tc.colors.size();
  int D = 1;
  while ((std::size_t{1} << D) < C) ++D;

  std::vector<GroupElement> diffs;
  for (const auto& t : tiles)
    for (const auto& h : t)
      for (const auto& h2 : t)
        if (h != h2) diffs.push_back(g.sub(h2, h));
  std::sort(diffs.begin(), diffs.end());
  diffs.erase(std::unique(diffs.begin(), diffs.end()), diffs.end());

  auto& bs = tc.system;
  bs.D = D;
  bs.shifts.push_back(g.zero());
  bs.shifts.insert(bs.shifts.end(), diffs.begin(), diffs.end());
  const auto L = bs.L();
  if (static_cast<std::size_t>(D) * L > 64) throw CostExceeded("tileset_to_boolean", "D*L exceeds 64 bits");
  std::map<GroupElement, std::size_t> pos;
  for (std::size_t l = 0; l < L; ++l) pos[bs.shifts[l]] = l;

  auto code_mask = [&](std::size_t code, std::size_t l) {
    std::uint64_t m = 0;
    for (int d = 0; d < D; ++d)
      if ((code >> d) & 1) m |= 1ull << (d * L + l);
    return m;
  };

  std::size_t first = 0;  // color index of (j, first element of F_j)
  std::uint64_t total = 0;
  for (std::size_t j = 0; j < tiles.size(); ++j) {
    const auto& el = tiles[j].elements();
    for (std::size_t a = 0; a < el.size(); ++a) {
      // Window position -> forced color; the rest range over all colors.
      std::vector<std::int64_t> forced(L, -1);
      for (std::size_t b = 0; b < el.size(); ++b)
        forced[pos.at(g.sub(el[b], el[a]))] = static_cast<std::int64_t>(first + b);
      std::vector<std::size_t> free;
      std::uint64_t base = 0;
      for (std::size_t l = 0; l < L; ++l) {
        if (forced[l] < 0)
          free.push_back(l);
        else
          base |= code_mask(static_cast<std::size_t>(forced[l]), l);
      }
      std::uint64_t count = 1;
      for (std::size_t i = 0; i < free.size(); ++i) {
        if (count > bound / C) throw CostExceeded("tileset_to_boolean", "constraint set too large");
        count *= C;
      }
      total += count;
      if (total > bound) throw CostExceeded("tileset_to_boolean", "constraint set too large");
      std::vector<std::size_t> digit(free.size(), 0);
      for (std::uint64_t k = 0; k < count; ++k) {
        std::uint64_t m = base;
        for (std::size_t i = 0; i < free.size(); ++i) m |= code_mask(digit[i], free[i]);
        bs.omega.push_back(m);
        for (std::size_t i = 0; i < free.size(); ++i) {
          if (++digit[i] < C) break;
          digit[i] = 0;
        }
      }
    }
    first += el.size();
  }
  std::sort(bs.omega.begin(), bs.omega.end());
  bs.omega.erase(std::unique(bs.omega.begin(), bs.omega.end()), bs.omega.end());
  return tc;
}

namespace {

std::size_t color_index(const TileColoring& tc, std::size_t j, const GroupElement& h) {
  auto it = std::lower_bound(tc.colors.begin(), tc.colors.end(), std::make_pair(j, h));
  if (it == tc.colors.end() || it->first != j || it->second != h) throw PreconditionFailed("not a color");
  return static_cast<std::size_t>(it - tc.colors.begin());
}

}  // namespace

BoolFunctions tiling_to_bits(const TileColoring& tc, const Assignment& a, const std::vector<std::int64_t>& torus) {
  if (a.sets.size() != tc.tiles.size()) throw DimensionMismatch("one set per tile");
  const auto& lat = tc.tiles[0].group();
  if (torus.size() != lat.dim()) throw DimensionMismatch("torus rank");
  const auto tg = lat.torus(torus);
  std::vector<std::int64_t> color(tg.order(), -1);
  for (std::size_t j = 0; j < a.sets.size(); ++j)
    for (const auto& x : a.sets[j])
      for (const auto& h : tc.tiles[j]) {
        auto cell = tg.index_of(tg.add(tg.normalize(x), reduce_to_torus(lat, h, torus)));
        if (color[cell] >= 0) throw NotASolution("tiles overlap at " + to_string(tg.element_at(cell)));
        color[cell] = static_cast<std::int64_t>(color_index(tc, j, h));
      }
  BoolFunctions out = BoolFunctions::constant(torus, static_cast<std::size_t>(tc.system.D));
  for (std::size_t c = 0; c < color.size(); ++c) {
    if (color[c] < 0) throw NotASolution("cell " + to_string(tg.element_at(c)) + " is not covered");
    for (int d = 0; d < tc.system.D; ++d) out.f[d][c] = mask_entry(static_cast<std::uint64_t>(color[c]), d);
  }
  return out;
}

Assignment bits_to_tiling(const TileColoring& tc, const BoolFunctions& bits) {
  check_rows(bits, static_cast<std::size_t>(tc.system.D));
  const auto& lat = tc.tiles[0].group();
  const auto tg = lat.torus(bits.torus);
  std::vector<std::vector<GroupElement>> sets(tc.tiles.size());
  for (std::size_t c = 0; c < bits.cells(); ++c) {
    std::size_t code = 0;
    for (int d = 0; d < tc.system.D; ++d)
      if (bits.f[d][c] < 0) code |= std::size_t{1} << d;
    if (code >= tc.colors.size()) throw NotASolution("cell value is not a color code");
    const auto& [j, h] = tc.colors[code];
    sets[j].push_back(tg.sub(tg.element_at(c), reduce_to_torus(lat, h, bits.torus)));
  }
  Assignment a;
  for (auto& s : sets) a.sets.emplace_back(tg, std::move(s));
  return a;
}

// ----------------------------------------------------------------- symmetrize

BooleanLocalSystem symmetrize(const BooleanLocalSystem& bs) {
  bs.validate();
  const auto L = bs.L();
  const auto width = static_cast<std::size_t>(bs.D + 1) * L;
  if (width > 64) throw CostExceeded("boolean_to_linear", "(D+1)*L exceeds 64 bits");
  BooleanLocalSystem out{bs.D + 1, bs.shifts, {}};
  const auto inner = low_bits(static_cast<std::size_t>(bs.D) * L);
  const auto last = low_bits(width) & ~inner;
  for (auto w : bs.omega) {
    out.omega.push_back(w);
    out.omega.push_back((~w & inner) | last);
  }
  std::sort(out.omega.begin(), out.omega.end());
  return out;
}

BoolFunctions symmetrize_forward(const BoolFunctions& f) {
  auto out = f;
  out.f.emplace_back(f.cells(), Sign(1));
  return out;
}

BoolFunctions symmetrize_backward(const BoolFunctions& f) {
  if (f.f.empty()) throw DimensionMismatch("no functions");
  BoolFunctions out{f.torus, {}};
  const auto& s = f.f.back();
  for (std::size_t d = 0; d + 1 < f.f.size(); ++d) {
    std::vector<Sign> row(f.cells());
    for (std::size_t c = 0; c < row.size(); ++c) row[c] = static_cast<Sign>(f.f[d][c] * s[c]);
    out.f.push_back(std::move(row));
  }
  return out;
}

// ------------------------------------------------------------------- antipode

AntipodeSystem to_antipode(const BooleanLocalSystem& sym, std::uint64_t bound) {
  sym.validate();
  const auto L = sym.L();
  const auto D0 = static_cast<std::size_t>(sym.D) * L;
  if (D0 < 2) throw PreconditionFailed("need D*L >= 2");
  if (D0 > 62 || (1ull << D0) > bound) throw CostExceeded("boolean_to_linear", "2^D0 exceeds the cost bound");
  const auto full = low_bits(D0);
  for (auto w : sym.omega)
    if (!sym.allows(~w & full)) throw PreconditionFailed("constraint set is not symmetric");

  AntipodeSystem as;
  as.D0 = static_cast<int>(D0);
  for (int d = 0; d < sym.D; ++d)
    for (std::size_t l = 0; l < L; ++l) as.shifts.push_back(sym.shifts[l]);
  auto constant_blocks = [&](std::uint64_t x) {
    for (int d = 0; d < sym.D; ++d) {
      auto block = (x >> (d * L)) & low_bits(L);
      if (block != 0 && block != low_bits(L)) return false;
    }
    return true;
  };
  for (std::uint64_t x = 0; x <= full; x += 2) {  // bit 0 clear: first entry +1
    if (!sym.allows(x)) as.forbidden[0].push_back(x);
    if (!constant_blocks(x)) as.forbidden[1].push_back(x);
  }
  return as;
}

BoolFunctions antipode_forward(const BooleanLocalSystem& sym, const BoolFunctions& f) {
  check_rows(f, static_cast<std::size_t>(sym.D));
  const auto L = sym.L();
  const auto D0 = static_cast<std::size_t>(sym.D) * L;
  auto next = detail::shift_table(ExplicitGroup::lattice(sym.rank()), f.torus, sym.shifts);
  BoolFunctions out = BoolFunctions::constant(f.torus, 2 * D0);
  for (std::size_t d = 0; d < static_cast<std::size_t>(sym.D); ++d)
    for (std::size_t l = 0; l < L; ++l)
      for (std::size_t n = 0; n < f.cells(); ++n) {
        out.f[d * L + l][n] = f.f[d][next[l][n]];
        out.f[D0 + d * L + l][n] = static_cast<Sign>(-f.f[d][n]);
      }
  return out;
}

BoolFunctions antipode_backward(const BooleanLocalSystem& sym, const BoolFunctions& g) {
  const auto L = sym.L();
  const auto D0 = static_cast<std::size_t>(sym.D) * L;
  check_rows(g, 2 * D0);
  BoolFunctions out{g.torus, {}};
  for (std::size_t d = 0; d < static_cast<std::size_t>(sym.D); ++d) {
    std::vector<Sign> row(g.cells());
    for (std::size_t n = 0; n < row.size(); ++n) row[n] = static_cast<Sign>(-g.f[D0 + d * L][n]);
    out.f.push_back(std::move(row));
  }
  return out;
}

// ---------------------------------------------------------------------- slack

LinearBooleanSystem antipode_to_linear(const AntipodeSystem& as) {
  as.validate();
  const auto D0 = static_cast<std::size_t>(as.D0);
  const auto M = std::max(as.forbidden[0].size(), as.forbidden[1].size());
  LinearBooleanSystem ls;
  ls.D0 = as.D0;
  ls.D = static_cast<int>(D0 + M * (D0 - 2));
  ls.shifts = as.shifts;
  for (int j = 0; j < 2; ++j) {
    const auto& fj = as.forbidden[j];
    if (fj.empty()) continue;
    for (std::size_t m = 0; m < M; ++m) {
      std::vector<std::int64_t> row(static_cast<std::size_t>(ls.D), 0);
      const auto eps = fj[m % fj.size()];
      for (std::size_t d = 0; d < D0; ++d) row[d] = mask_entry(eps, d);
      for (std::size_t i = 0; i < D0 - 2; ++i) row[D0 + m * (D0 - 2) + i] = 1;
      ls.coeffs[j].push_back(std::move(row));
    }
  }
  return ls;
}

BoolFunctions slack_forward(const AntipodeSystem& as, const LinearBooleanSystem& ls, const BoolFunctions& g) {
  const auto D0 = static_cast<std::size_t>(as.D0);
  const auto D = static_cast<std::size_t>(ls.D);
  check_rows(g, 2 * D0);
  BoolFunctions out = BoolFunctions::constant(g.torus, 2 * D);
  const auto M = D0 > 2 ? (D - D0) / (D0 - 2) : std::max(as.forbidden[0].size(), as.forbidden[1].size());
  for (std::size_t j = 0; j < 2; ++j) {
    for (std::size_t d = 0; d < D0; ++d) out.f[j * D + d] = g.f[j * D0 + d];
    const auto& fj = as.forbidden[j];
    for (std::size_t n = 0; n < g.cells(); ++n) {
      for (std::size_t m = 0; m < M && !fj.empty(); ++m) {
        const auto eps = fj[m % fj.size()];
        std::int64_t s = 0;
        for (std::size_t d = 0; d < D0; ++d) s += mask_entry(eps, d) * g.f[j * D0 + d][n];
        if (s > static_cast<std::int64_t>(D0) - 2 || -s > static_cast<std::int64_t>(D0) - 2)
          throw NotASolution("value hits a forbidden pair");
        const auto k = static_cast<std::size_t>((static_cast<std::int64_t>(D0) - 2 + s) / 2);
        for (std::size_t i = 0; i < k; ++i) out.f[j * D + D0 + m * (D0 - 2) + i][n] = -1;
      }
    }
  }
  return out;
}

BoolFunctions slack_backward(const AntipodeSystem& as, const BoolFunctions& lin) {
  const auto D0 = static_cast<std::size_t>(as.D0);
  if (lin.f.size() % 2 != 0 || lin.f.size() < 2 * D0) throw DimensionMismatch("wrong number of functions");
  const auto D = lin.f.size() / 2;
  BoolFunctions out{lin.torus, {}};
  for (std::size_t j = 0; j < 2; ++j)
    for (std::size_t d = 0; d < D0; ++d) out.f.push_back(lin.f[j * D + d]);
  return out;
}

BooleanToLinear boolean_to_linear(const BooleanLocalSystem& bs, std::uint64_t bound) {
  BooleanToLinear p;
  p.source = bs;
  p.symmetric = symmetrize(bs);
  p.antipode = to_antipode(p.symmetric, bound);
  p.linear = antipode_to_linear(p.antipode);
  return p;
}

BoolFunctions boolean_to_linear_forward(const BooleanToLinear& p, const BoolFunctions& f) {
  return slack_forward(p.antipode, p.linear, antipode_forward(p.symmetric, symmetrize_forward(f)));
}

BoolFunctions boolean_to_linear_backward(const BooleanToLinear& p, const BoolFunctions& lin) {
  return symmetrize_backward(antipode_backward(p.symmetric, slack_backward(p.antipode, lin)));
}

}  // namespace tileforge
