#include "lozlab/localstruct.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace loz {

namespace {

// first/second order jet in the four variables (a,b,x,y); every arithmetic
// operation propagates the exact chain rule
struct Jet {
    double v = 0;
    std::array<double, 4> g{};
    std::array<std::array<double, 4>, 4> h{};

    Jet() = default;
    Jet(double c) : v(c) {}
    static Jet var(double val, int idx) {
        Jet j(val);
        j.g[idx] = 1;
        return j;
    }
};

Jet operator+(const Jet& a, const Jet& b) {
    Jet r(a.v + b.v);
    for (int i = 0; i < 4; ++i) {
        r.g[i] = a.g[i] + b.g[i];
        for (int j = 0; j < 4; ++j) r.h[i][j] = a.h[i][j] + b.h[i][j];
    }
    return r;
}
Jet operator-(const Jet& a, const Jet& b) {
    Jet r(a.v - b.v);
    for (int i = 0; i < 4; ++i) {
        r.g[i] = a.g[i] - b.g[i];
        for (int j = 0; j < 4; ++j) r.h[i][j] = a.h[i][j] - b.h[i][j];
    }
    return r;
}
Jet operator-(const Jet& a) { return Jet(0.0) - a; }
Jet operator*(const Jet& a, const Jet& b) {
    Jet r(a.v * b.v);
    for (int i = 0; i < 4; ++i) r.g[i] = a.g[i] * b.v + a.v * b.g[i];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            r.h[i][j] = a.h[i][j] * b.v + a.g[i] * b.g[j] + a.g[j] * b.g[i] + a.v * b.h[i][j];
    return r;
}
Jet operator*(double c, const Jet& a) {
    Jet r(c * a.v);
    for (int i = 0; i < 4; ++i) {
        r.g[i] = c * a.g[i];
        for (int j = 0; j < 4; ++j) r.h[i][j] = c * a.h[i][j];
    }
    return r;
}
Jet operator*(const Jet& a, double c) { return c * a; }
Jet operator+(const Jet& a, double c) { return a + Jet(c); }
Jet operator+(double c, const Jet& a) { return a + Jet(c); }
Jet operator-(const Jet& a, double c) { return a - Jet(c); }
Jet operator-(double c, const Jet& a) { return Jet(c) - a; }

// f(g) with scalar derivatives fp, fpp at g.v
Jet compose(const Jet& g, double f, double fp, double fpp) {
    Jet r(f);
    for (int i = 0; i < 4; ++i) r.g[i] = fp * g.g[i];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r.h[i][j] = fp * g.h[i][j] + fpp * g.g[i] * g.g[j];
    return r;
}
Jet inv(const Jet& a) { return compose(a, 1 / a.v, -1 / (a.v * a.v), 2 / (a.v * a.v * a.v)); }
Jet operator/(const Jet& a, const Jet& b) { return a * inv(b); }
Jet sqrt(const Jet& a) {
    double s = std::sqrt(a.v);
    return compose(a, s, 0.5 / s, -0.25 / (s * a.v));
}
// arccot with range (0, pi)
Jet acot(const Jet& a) {
    double d = 1 + a.v * a.v;
    return compose(a, std::atan2(1.0, a.v), -1 / d, 2 * a.v / (d * d));
}

struct SlopeJets {
    Jet z1, z2;
};

SlopeJets slope_jets(const std::array<double, 4>& w) {
    Jet a = Jet::var(w[0], 0), b = Jet::var(w[1], 1);
    Jet x = Jet::var(w[2], 2), y = Jet::var(w[3], 3);
    Jet c = 1.0 - a - b;
    const double s3 = std::sqrt(3.0);
    Jet u1 = 0.5 * y - x, v1 = (-s3 / 2) * y;
    Jet u2 = y - 0.5 * x, v2 = (-s3 / 2) * x;
    SlopeJets out;
    out.z1 = (-1.0 / M_PI) * acot(q_form(b, c, a, u1, v1) / sqrt(e_form(b, c, a, u1, v1)));
    out.z2 = (-1.0 / M_PI) * acot(q_form(c, a, b, u2, v2) / sqrt(e_form(c, a, b, u2, v2)));
    return out;
}

} // namespace

double w_margin(const std::array<double, 4>& w) {
    double a = w[0], b = w[1], c = 1 - a - b;
    double tri = std::min({a, b, 1 - a - b});
    if (tri <= 0) return tri;
    double E = ellipse_E(a, b, c, w[2], w[3]) / (3 * a * b * c);
    return std::min(tri, E);
}

LocalData forward(const std::array<double, 4>& w) {
    if (w_margin(w) <= 0) throw std::runtime_error("forward: w outside W");
    auto sj = slope_jets(w);
    return {sj.z1.v, sj.z2.v, sj.z1.g[2], sj.z1.g[3]};
}

Mat4 jacobian(const std::array<double, 4>& w) {
    if (w_margin(w) <= 0) throw std::runtime_error("jacobian: w outside W");
    auto sj = slope_jets(w);
    Mat4 J;
    for (int c = 0; c < 4; ++c) {
        J[0][c] = sj.z1.g[c];
        J[1][c] = sj.z2.g[c];
        J[2][c] = sj.z1.h[2][c];
        J[3][c] = sj.z1.h[3][c];
    }
    return J;
}

double det_numer_N(const std::array<double, 4>& w) {
    double a = w[0], b = w[1], c = 1 - a - b, x = w[2], y = w[3];
    return (1 - a) * (1 - b) * (1 - c) + 2 * (1 - a * a) * y * y + 2 * (1 - c * c) * x * x -
           4 * (1 - a) * (a + b) * x * y;
}

double det_denom_D(const std::array<double, 4>& w) {
    double a = w[0], b = w[1], x = w[2], y = w[3];
    double f1 = y * y - (a + b) * (a + b) / 4;
    double f2 = x * x - (1 - a) * (1 - a) / 4;
    double f3 = x - (y - (1 - b) / 2);
    double f4 = x - (y + (1 - b) / 2);
    return f1 * f2 * f2 * f3 * f3 * f4 * f4;
}

double det_closed(const std::array<double, 4>& w) {
    double pi4 = M_PI * M_PI * M_PI * M_PI;
    return det_numer_N(w) / (32 * pi4 * det_denom_D(w));
}

namespace {

double residual_inf(const LocalData& z, const std::array<double, 4>& w) {
    LocalData f = forward(w);
    return std::max({std::abs(f.z1 - z.z1), std::abs(f.z2 - z.z2), std::abs(f.z11 - z.z11),
                     std::abs(f.z12 - z.z12)});
}

bool newton(const LocalData& z, std::array<double, 4>& w, double tol, int iters) {
    for (int it = 0; it < iters; ++it) {
        if (w_margin(w) <= 0) return false;
        LocalData f = forward(w);
        Eigen::Vector4d r(f.z1 - z.z1, f.z2 - z.z2, f.z11 - z.z11, f.z12 - z.z12);
        if (r.lpNorm<Eigen::Infinity>() <= tol) return true;
        Mat4 J = jacobian(w);
        Eigen::Matrix4d M;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) M(i, j) = J[i][j];
        Eigen::Vector4d step = M.fullPivLu().solve(-r);
        if (!step.allFinite()) return false;
        double lam = 1.0;
        bool moved = false;
        for (int ls = 0; ls < 40; ++ls) {
            std::array<double, 4> trial = w;
            for (int k = 0; k < 4; ++k) trial[k] += lam * step(k);
            if (w_margin(trial) > 0 && residual_inf(z, trial) < r.lpNorm<Eigen::Infinity>()) {
                w = trial;
                moved = true;
                break;
            }
            lam /= 2;
        }
        if (!moved) return false;
    }
    return w_margin(w) > 0 && residual_inf(z, w) <= tol;
}

} // namespace

std::optional<std::array<double, 4>> inverse(const LocalData& z, const InverseOpts& opts) {
    if (!(z.z1 < 0 && z.z2 < 0 && z.z1 + z.z2 > -1)) return std::nullopt;
    // multi-start grid: (a,b) in an inset of the simplex, (x,y) scaled into
    // each candidate's ellipse bounding box
    for (int ia = 0; ia < opts.grid_ab; ++ia)
        for (int ib = 0; ib < opts.grid_ab; ++ib) {
            double a = 0.1 + 0.8 * ia / (opts.grid_ab - 1.0);
            double b = 0.1 + 0.8 * ib / (opts.grid_ab - 1.0);
            if (a + b >= 0.9) continue;
            double c = 1 - a - b;
            for (int ix = 0; ix < opts.grid_xy; ++ix)
                for (int iy = 0; iy < opts.grid_xy; ++iy) {
                    double fx = -0.75 + 1.5 * ix / (opts.grid_xy - 1.0);
                    double fy = -0.75 + 1.5 * iy / (opts.grid_xy - 1.0);
                    std::array<double, 4> w = {a, b, fx * (b + c) / 2, fy * (a + b) / 2};
                    if (w_margin(w) <= 1e-6) continue;
                    if (newton(z, w, opts.tol, opts.max_newton)) return w;
                }
        }
    if (!opts.allow_flow) return std::nullopt;
    // continuation along z(s) = zbar + s (z - zbar) from the symmetric point
    std::array<double, 4> w = {1.0 / 3, 1.0 / 3, 0, 0};
    LocalData zbar = forward(w);
    double s = 0, step = 0.1;
    while (s < 1 && step > 1e-8) {
        double s2 = std::min(1.0, s + step);
        LocalData target{zbar.z1 + s2 * (z.z1 - zbar.z1), zbar.z2 + s2 * (z.z2 - zbar.z2),
                         zbar.z11 + s2 * (z.z11 - zbar.z11), zbar.z12 + s2 * (z.z12 - zbar.z12)};
        std::array<double, 4> trial = w;
        if (newton(target, trial, opts.tol, 25)) {
            w = trial;
            s = s2;
            step *= 1.5;
        } else {
            step /= 2;
        }
    }
    if (s >= 1 && residual_inf(z, w) <= opts.tol) return w;
    return std::nullopt;
}

double complete_hessian(const LocalData& z) {
    Coeffs a = a_coeffs(z.z1, z.z2);
    return -(a.a11 * z.z11 + 2 * a.a12 * z.z12) / a.a22;
}

Mat2 project_hessian(const std::array<double, 2>& slope, const Mat2& H, const Mat2& Hpsi) {
    Coeffs a = a_coeffs(slope[0], slope[1]);
    auto pair = [&](const Mat2& M) {
        return a.a11 * M[0][0] + a.a12 * (M[0][1] + M[1][0]) + a.a22 * M[1][1];
    };
    double denom = pair(Hpsi);
    if (std::abs(denom) < 1e-14) throw std::runtime_error("project_hessian: <Hpsi,a> vanishes");
    double lam = pair(H) / denom;
    Mat2 R;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) R[i][j] = H[i][j] - lam * Hpsi[i][j];
    return R;
}

} // namespace loz
