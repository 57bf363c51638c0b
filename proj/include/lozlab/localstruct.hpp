#pragma once
#include "lozlab/shape.hpp"

#include <array>
#include <optional>

namespace loz {

// Four-parameter family w = (a, b, x, y): hexagon side fractions a, b
// (c = 1-a-b) and a point (x,y) inside the arctic ellipse. The local
// structure map sends w to z = (z1, z2, z11, z12): the limit-shape gradient
// and the first row of its Hessian at (x,y).

struct LocalData {
    double z1, z2, z11, z12;
};
using Mat4 = std::array<std::array<double, 4>, 4>;
using Mat2 = std::array<std::array<double, 2>, 2>;

// membership in W: a,b > 0, a+b < 1, (x,y) strictly inside the ellipse of
// (a,b,c); margin is the smallest of the four barrier quantities (ellipse
// barrier scaled by its center value 3abc)
double w_margin(const std::array<double, 4>& w);

LocalData forward(const std::array<double, 4>& w);

// exact Jacobian d(z1,z2,z11,z12)/d(a,b,x,y), chain rule propagated through
// the closed forms (no finite differences)
Mat4 jacobian(const std::array<double, 4>& w);

// det Df = N / (32 pi^4 D); negative on W
double det_closed(const std::array<double, 4>& w);
double det_numer_N(const std::array<double, 4>& w);  // positive on the open hexagon
double det_denom_D(const std::array<double, 4>& w);  // negative inside, zero on the sides

struct InverseOpts {
    double tol = 1e-11;     // sup-norm residual in z
    int max_newton = 60;
    int grid_ab = 5;        // multi-start grid over (a,b)
    int grid_xy = 7;        // multi-start grid over (x,y) per (a,b)
    bool allow_flow = true; // continuation fallback from the symmetric point
};
// Newton multi-start, then predictor-corrector continuation along the ray
// from f(1/3,1/3,0,0). nullopt when both fail.
std::optional<std::array<double, 4>> inverse(const LocalData& z, const InverseOpts& opts = {});

// z22 from the elliptic relation a11 z11 + 2 a12 z12 + a22 z22 = 0
double complete_hessian(const LocalData& z);

// H - (<H,a>/<Hpsi,a>) Hpsi with <M,a> = a11 M11 + 2 a12 M12 + a22 M22,
// a = a_coeffs(slope); the result pairs to zero against a
Mat2 project_hessian(const std::array<double, 2>& slope, const Mat2& H, const Mat2& Hpsi);

} // namespace loz
