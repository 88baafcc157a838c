#include "tileforge/io/render.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "tileforge/error.hpp"

namespace tileforge {

namespace {

// Golden-angle hues: neighbours in placement order get distant colors.
std::string color(std::size_t i) {
  const double h = std::fmod(static_cast<double>(i) * 137.508, 360.0);
  char buf[32];
  std::snprintf(buf, sizeof buf, "hsl(%.1f,65%%,60%%)", h);
  return buf;
}

}  // namespace

std::string render_svg(const TilingSystem& system, const Assignment& solution, const Torus& torus, int cell_px) {
  if (system.group.free_rank() != 2 || !system.group.moduli().empty() || torus.moduli.size() != 2)
    throw NotTwoDimensional("rendering needs solutions on a torus of Z^2");
  if (system.equations.empty()) throw PreconditionFailed("system has no equation");
  const auto& eq = system.equations[0];
  const auto tg = system.group.torus(torus.moduli);
  const auto w = torus.moduli[0], h = torus.moduli[1];
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w * cell_px << "\" height=\"" << h * cell_px
      << "\" viewBox=\"0 0 " << w * cell_px << ' ' << h * cell_px << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::size_t placed = 0;
  for (std::size_t j = 0; j < solution.sets.size() && j < eq.tiles.size(); ++j)
    for (const auto& a : solution.sets[j]) {
      out << "<g class=\"translate\" data-tile=\"" << j << "\" data-at=\"" << to_string(a) << "\" fill=\""
          << color(placed++) << "\" stroke=\"black\" stroke-width=\"1\">\n";
      for (const auto& f : eq.tiles[j]) {
        const auto c = tg.normalize(tg.add(tg.normalize(a), reduce_to_torus(system.group, f, torus.moduli)));
        // y grows upwards
        out << "  <rect x=\"" << c[0] * cell_px << "\" y=\"" << (h - 1 - c[1]) * cell_px << "\" width=\"" << cell_px
            << "\" height=\"" << cell_px << "\"/>\n";
      }
      out << "</g>\n";
    }
  out << "</svg>\n";
  return out.str();
}

}  // namespace tileforge
