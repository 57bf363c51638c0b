#pragma once
#include <cmath>
#include <functional>
#include <stdexcept>

namespace loz {

namespace detail {
inline double simpson(const std::function<double(double)>& f, double a, double fa, double b,
                      double fb, double m, double fm) {
    return (b - a) / 6.0 * (fa + 4 * fm + fb);
}
inline double adsimp(const std::function<double(double)>& f, double a, double fa, double b,
                     double fb, double m, double fm, double whole, double tol, int depth) {
    double lm = (a + m) / 2, rm = (m + b) / 2;
    double flm = f(lm), frm = f(rm);
    double left = simpson(f, a, fa, m, fm, lm, flm);
    double right = simpson(f, m, fm, b, fb, rm, frm);
    if (depth <= 0) return left + right;
    if (std::abs(left + right - whole) <= 15 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adsimp(f, a, fa, m, fm, lm, flm, left, tol / 2, depth - 1) +
           adsimp(f, m, fm, b, fb, rm, frm, right, tol / 2, depth - 1);
}
} // namespace detail

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol, int max_depth = 50) {
    if (a == b) return 0;
    double fa = f(a), fb = f(b), m = (a + b) / 2, fm = f(m);
    double whole = detail::simpson(f, a, fa, b, fb, m, fm);
    return detail::adsimp(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

// 32-point Gauss-Legendre on [a,b]
double gauss_legendre_32(const std::function<double(double)>& f, double a, double b);

} // namespace loz
