#pragma once
#include <string>

#include "tileforge/tiling/tiling.hpp"

namespace tileforge {

// SVG of a solution on a torus of Z^2: every placed translate a + F_j is one
// colored group of unit squares (wrapped around the torus). Throws
// NotTwoDimensional for anything but Z^2.
std::string render_svg(const TilingSystem& system, const Assignment& solution, const Torus& torus,
                       int cell_px = 24);

}  // namespace tileforge
