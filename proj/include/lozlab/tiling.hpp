#pragma once
#include "lozlab/lattice.hpp"

namespace loz {

// A lozenge tiling is stored as its height function (integer units of 1/L),
// one value per domain vertex.

// every face edge u -> u+e has h(v)-h(u) in {-1,0}
bool validate_heights(const Domain& d, const Heights& h);

// Vertical edge = edge with dir 2, from e.u downward to e.v. The upward step
// e.v -> e.u crosses the interior of a horizontal lozenge exactly when the
// height is unchanged.
bool crosses_horizontal(const Domain& d, const Heights& h, const Edge& e);

// A vertex is a flip site when all six neighbors are present. Raising by one
// needs all predecessors at h(v)+1 and all successors at h(v); lowering needs
// successors at h(v)-1 and predecessors at h(v). The two are exclusive.
bool flippable(const Domain& d, const Heights& h, int v, int delta);
void apply_flip(Heights& h, int v, int delta);

// All height extensions of the boundary data, lexicographic in vertex order.
// Throws when more than `cap` tilings exist.
std::vector<Heights> enumerate_tilings(const Domain& d, const BoundaryHeight& b,
                                       size_t cap = 10'000'000);

std::string tiling_to_json(const Domain& d, const BoundaryHeight& b, const Heights& h);
// returns domain, boundary and heights; validates
std::tuple<Domain, BoundaryHeight, Heights> tiling_from_json(const std::string& text);

} // namespace loz
