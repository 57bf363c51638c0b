#pragma once
#include "lozlab/lattice.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <optional>

namespace loz {

// ---- surface tension ----

// Lambda(theta) = -int_0^{-theta} log(2 sin t) dt on [-pi, 0]
double lobachevsky(double theta);

// Admissible slopes (s,t) live in the open triangle T:
// s < 0, t < 0, s + t > -1. margin = min(-s, -t, 1+s+t).
double slope_margin(double s, double t);

// sigma(s,t) = -(1/pi) [Lambda(pi s) + Lambda(pi t) + Lambda(pi(-1-s-t))];
// strictly convex on T, minimum at (-1/3,-1/3)
double sigma(double s, double t);
// (d_s sigma, d_t sigma) = (log(2 sin(pi(1+s+t))) - log(2 sin(-pi s)), ...)
std::array<double, 2> sigma_grad(double s, double t);

// coefficients of the Euler-Lagrange operator, det == 1, positive definite;
// throws when margin <= 1e-9
struct Coeffs {
    double a11, a12, a22;
};
Coeffs a_coeffs(double s, double t);

// ---- hexagon closed forms (a+b+c = 1, center at origin) ----

// quadratic forms behind the closed-form slope; templated so the same
// expressions drive both double evaluation and derivative propagation
template <class T>
T q_form(const T& p, const T& q, const T& r, const T& u, const T& v) {
    const double s3 = std::sqrt(3.0);
    return (s3 / 2.0) * ((4.0 / 3.0) * v * v - 4.0 * u * u + q * q + p * q + q * r - p * r);
}
template <class T>
T e_form(const T& p, const T& q, const T& r, const T& u, const T& v) {
    const double s3 = std::sqrt(3.0);
    T apc = p + r, sum = p + 2.0 * q + r, dif = p - r;
    return 3.0 * (p * q * r) -
           (3.0 * (apc * apc) * (u * u) - 2.0 * s3 * (sum * dif) * (u * v) +
            ((sum * sum) - 4.0 * (p * r)) * (v * v));
}

// branch of arccot with range (0, pi)
inline double acot_principal(double x) { return std::atan2(1.0, x); }

// gradient (z1,z2) = (d_x phi, d_y phi) of the hexagon limit shape at a
// liquid point; z3 = -1 - z1 - z2. Throws outside the arctic ellipse.
std::array<double, 2> hexagon_slope(double a, double b, double c, double x, double y);

// arctic ellipse indicator: positive inside, zero on the ellipse. The three
// rotated forms agree; this returns the first.
double ellipse_E(double a, double b, double c, double x, double y);
std::array<double, 3> ellipse_E_all(double a, double b, double c, double x, double y);

// tangency point of the arctic ellipse on side k (0..5, walk order c,b,a,c,b,a)
std::array<double, 2> ellipse_contact(double a, double b, double c, int side);

// facet classification at a point of the closed hexagon
enum class Phase {
    Liquid,
    Frozen0, // gradient (0,0), horizontal lozenges, corners V0/V3
    FrozenX, // gradient (-1,0), corners V2/V5
    FrozenY, // gradient (0,-1), corners V1/V4
};
struct PhaseInfo {
    Phase phase;
    std::array<double, 2> grad; // limit-shape gradient (frozen: exact facet slope)
    int corner = -1;            // owning hexagon corner for frozen components
};
PhaseInfo classify(double a, double b, double c, double x, double y);

// hexagon corner V_k, walk order c,b,a,c,b,a starting at the a/c corner V0
std::array<double, 2> hexagon_corner(double a, double b, double c, int k);

// limit shape anchored to 0 at corner V0 (where an a-side meets a c-side)
double hexagon_height(double a, double b, double c, double x, double y);

// ---- variational solver ----

struct MacroShape {
    Domain mesh; // mesh geometry, resolution mesh.L
    std::vector<double> phi;

    double eval(double x, double y) const;              // linear interpolation
    std::array<double, 2> slope_face(int f) const;      // (s,t) on face f
    double min_margin() const;                          // min slope margin over faces
    // discrete divergence-form residual at an interior node (gradient of the
    // area functional divided by the lumped node area)
    double node_residual(int v) const;
};

struct SolveOpts {
    double inset = 1e-6;     // keep slopes at least this far inside T
    double grad_tol = 1e-12; // stop when the functional gradient is below this
    int max_iter = 200;
};

// Minimizes sum_f area_f sigma(slope_f) over interior nodal values with the
// boundary pinned to floor-free continuum samples of `bnd`; `bnd` must be
// defined on the whole mesh (used for the initial guess).
MacroShape variational_solve(const Domain& mesh, const std::function<double(double, double)>& bnd,
                             const SolveOpts& opts = {});

} // namespace loz
