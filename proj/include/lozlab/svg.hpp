#pragma once
#include "lozlab/shape.hpp"
#include "lozlab/tiling.hpp"

#include <string>

namespace loz {

// Tiling picture: each face is paired with its partner across the unique
// interior-of-a-lozenge edge; lozenges are colored by type (which of the
// three axis planes the projected square face is parallel to).
std::string render_tiling_svg(const Domain& d, const Heights& h);

// Hexagon limit shape heatmap with the arctic ellipse overlay, sampled on a
// grid; a,b,c sum to 1.
std::string render_hexagon_shape_svg(double a, double b, double c, int samples = 120);

} // namespace loz
