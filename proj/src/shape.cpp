#include "lozlab/shape.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>

#include "lozlab/quad.hpp"

namespace loz {

// nodes and weights for n=16 on [0,1], mirrored to 32 points below
namespace {
constexpr double kGLx[16] = {
    0.0483076656877383162348126, 0.1444719615827964934851864, 0.2392873622521370745446032,
    0.3318686022821276497799168, 0.4213512761306353453641194, 0.5068999089322293900237475,
    0.5877157572407623290407455, 0.6630442669302152009751152, 0.7321821187402896803874267,
    0.7944837959679424069630973, 0.8493676137325699701336930, 0.8963211557660521239653072,
    0.9349060759377396891709191, 0.9647622555875064307738119, 0.9856115115452683354001750,
    0.9972638618494815635449811};
constexpr double kGLw[16] = {
    0.0965400885147278005667648, 0.0956387200792748594190820, 0.0938443990808045656391802,
    0.0911738786957638847128686, 0.0876520930044038111427715, 0.0833119242269467552221991,
    0.0781938957870703064717409, 0.0723457941088485062253994, 0.0658222227763618468376501,
    0.0586840934785355471452836, 0.0509980592623761761961632, 0.0428358980222266806568786,
    0.0342738629130214331026877, 0.0253920653092620594557526, 0.0162743947309056706051706,
    0.0070186100094700966004071};
} // namespace

double gauss_legendre_32(const std::function<double(double)>& f, double a, double b) {
    double mid = (a + b) / 2, half = (b - a) / 2, acc = 0;
    for (int k = 0; k < 16; ++k)
        acc += kGLw[k] * (f(mid - half * kGLx[k]) + f(mid + half * kGLx[k]));
    return acc * half;
}

namespace {
// int_0^s log(2 sin t) dt for s in [0, pi]
double log2sin_integral(double s) {
    if (s < 0 || s > M_PI + 1e-12) throw std::runtime_error("lobachevsky: argument out of range");
    s = std::min(s, M_PI);
    if (s > M_PI / 2 + 1e-12) return -log2sin_integral(M_PI - s);
    if (s == 0) return 0;
    // log(2 sin t) = log(2t) + log(sin t / t); the second part is analytic
    auto smooth = [](double t) { return t == 0 ? 0.0 : std::log(std::sin(t) / t); };
    return s * (std::log(2 * s) - 1) + gauss_legendre_32(smooth, 0, s);
}
} // namespace

double lobachevsky(double theta) { return -log2sin_integral(-theta); }

double slope_margin(double s, double t) { return std::min({-s, -t, 1 + s + t}); }

double sigma(double s, double t) {
    return -(lobachevsky(M_PI * s) + lobachevsky(M_PI * t) + lobachevsky(M_PI * (-1 - s - t))) /
           M_PI;
}

std::array<double, 2> sigma_grad(double s, double t) {
    double g3 = std::log(2 * std::sin(M_PI * (1 + s + t)));
    return {g3 - std::log(2 * std::sin(-M_PI * s)), g3 - std::log(2 * std::sin(-M_PI * t))};
}

Coeffs a_coeffs(double s, double t) {
    if (slope_margin(s, t) <= 1e-9) throw std::runtime_error("a_coeffs: slope outside T");
    double c3 = 1.0 / std::tan(M_PI * (1 + s + t));
    return {1.0 / std::tan(-M_PI * s) + c3, c3, 1.0 / std::tan(-M_PI * t) + c3};
}

std::array<double, 3> ellipse_E_all(double a, double b, double c, double x, double y) {
    UV p1 = uv1_from_xy(x, y), p2 = uv2_from_xy(x, y), p3 = uv3_from_xy(x, y);
    return {e_form(b, c, a, p1.u, p1.v), e_form(c, a, b, p2.u, p2.v),
            e_form(a, b, c, p3.u, p3.v)};
}

double ellipse_E(double a, double b, double c, double x, double y) {
    UV p1 = uv1_from_xy(x, y);
    return e_form(b, c, a, p1.u, p1.v);
}

std::array<double, 2> hexagon_slope(double a, double b, double c, double x, double y) {
    UV p1 = uv1_from_xy(x, y), p2 = uv2_from_xy(x, y);
    double e1 = e_form(b, c, a, p1.u, p1.v);
    double e2 = e_form(c, a, b, p2.u, p2.v);
    double scale = 3 * a * b * c;
    if (e1 < -1e-12 * scale || e2 < -1e-12 * scale)
        throw std::runtime_error("hexagon_slope: point outside the arctic ellipse");
    e1 = std::max(e1, 0.0);
    e2 = std::max(e2, 0.0);
    double z1 = -acot_principal(q_form(b, c, a, p1.u, p1.v) / std::sqrt(e1)) / M_PI;
    double z2 = -acot_principal(q_form(c, a, b, p2.u, p2.v) / std::sqrt(e2)) / M_PI;
    return {z1, z2};
}

std::array<double, 2> hexagon_corner(double a, double b, double c, int k) {
    double x = -(b + c) / 2, y = -(a + b) / 2;
    std::array<std::array<double, 2>, 6> delta = {
        {{c, 0}, {b, b}, {0, a}, {-c, 0}, {-b, -b}, {0, -a}}};
    for (int s = 0; s < (k % 6); ++s) {
        x += delta[s][0];
        y += delta[s][1];
    }
    return {x, y};
}

std::array<double, 2> ellipse_contact(double a, double b, double c, int side) {
    // restrict E (first form) to the side line and take the double root
    auto p0 = hexagon_corner(a, b, c, side);
    auto p1 = hexagon_corner(a, b, c, side + 1);
    auto E = [&](double t) {
        return ellipse_E(a, b, c, p0[0] + t * (p1[0] - p0[0]), p0[1] + t * (p1[1] - p0[1]));
    };
    // E restricted to the side is a downward parabola tangent to zero; fit
    // q(t) = e0 + beta t + gamma t^2 through t = 0, 1/2, 1 and take the vertex
    double e0 = E(0), e1 = E(1), em = E(0.5);
    double gamma = 2 * e0 - 4 * em + 2 * e1;
    double beta = -3 * e0 + 4 * em - e1;
    double t = -beta / (2 * gamma);
    return {p0[0] + t * (p1[0] - p0[0]), p0[1] + t * (p1[1] - p0[1])};
}

namespace {
const std::array<Phase, 6> kCornerPhase = {Phase::Frozen0, Phase::FrozenY, Phase::FrozenX,
                                           Phase::Frozen0, Phase::FrozenY, Phase::FrozenX};
std::array<double, 2> phase_grad(Phase p) {
    switch (p) {
        case Phase::Frozen0: return {0, 0};
        case Phase::FrozenX: return {-1, 0};
        case Phase::FrozenY: return {0, -1};
        default: return {0, 0};
    }
}
} // namespace

PhaseInfo classify(double a, double b, double c, double x, double y) {
    double E = ellipse_E(a, b, c, x, y);
    if (E > 0) {
        auto z = hexagon_slope(a, b, c, x, y);
        return {Phase::Liquid, z, -1};
    }
    // frozen: the owning corner is the one reachable without entering the
    // ellipse (components of hexagon \ ellipse each contain one corner)
    int best = -1;
    double bestd = 1e300;
    for (int k = 0; k < 6; ++k) {
        auto q = hexagon_corner(a, b, c, k);
        bool clear = true;
        for (int s = 1; s < 64 && clear; ++s) {
            double t = s / 64.0;
            clear = ellipse_E(a, b, c, x + t * (q[0] - x), y + t * (q[1] - y)) <= 1e-12;
        }
        if (!clear) continue;
        auto [px, py] = embed_xy(x - q[0], y - q[1]);
        double d2 = px * px + py * py;
        if (d2 < bestd) {
            bestd = d2;
            best = k;
        }
    }
    if (best < 0) throw std::runtime_error("classify: frozen point with no visible corner");
    return {kCornerPhase[best], phase_grad(kCornerPhase[best]), best};
}

namespace {
// boundary height at corner k (anchor 0 at V0; drops by b across the first
// b-side, back up across the second)
double corner_value(double b, int k) { return (k == 2 || k == 3 || k == 4) ? -b : 0.0; }
} // namespace

double hexagon_height(double a, double b, double c, double x, double y) {
    double E = ellipse_E(a, b, c, x, y);
    if (E <= 0) {
        PhaseInfo pi = classify(a, b, c, x, y);
        auto q = hexagon_corner(a, b, c, pi.corner);
        return corner_value(b, pi.corner) + pi.grad[0] * (x - q[0]) + pi.grad[1] * (y - q[1]);
    }
    // liquid: straight segment from V0; the pre-entry part lies in the V0
    // component where the shape is identically 0
    auto q0 = hexagon_corner(a, b, c, 0);
    double dx = x - q0[0], dy = y - q0[1];
    auto Eat = [&](double t) { return ellipse_E(a, b, c, q0[0] + t * dx, q0[1] + t * dy); };
    double lo = 0, hi = 1;
    for (int it = 0; it < 80; ++it) {
        double mid = (lo + hi) / 2;
        (Eat(mid) > 0 ? hi : lo) = mid;
    }
    double t0 = hi;
    auto integrand = [&](double t) {
        double px = q0[0] + t * dx, py = q0[1] + t * dy;
        auto z = hexagon_slope(a, b, c, px, py);
        return z[0] * dx + z[1] * dy;
    };
    return adaptive_simpson(integrand, t0, 1.0, 1e-9);
}

// ---- variational solver ----

namespace {
struct FaceOps {
    std::array<int, 3> n;      // node indices
    std::array<double, 3> gs;  // d s / d phi (times 1/L handled below)
    std::array<double, 3> gt;
};
FaceOps face_ops(const Domain& d, int f) {
    const Face& fc = d.faces[f];
    auto cs = fc.corners();
    FaceOps ops;
    for (int k = 0; k < 3; ++k) ops.n[k] = d.index_of(cs[k]);
    if (fc.o == Orient::Up) {
        ops.gs = {-1, 1, 0};
        ops.gt = {0, -1, 1};
    } else {
        ops.gs = {0, -1, 1};
        ops.gt = {-1, 1, 0};
    }
    return ops;
}
} // namespace

std::array<double, 2> MacroShape::slope_face(int f) const {
    auto ops = face_ops(mesh, f);
    double s = 0, t = 0;
    for (int k = 0; k < 3; ++k) {
        s += ops.gs[k] * phi[ops.n[k]];
        t += ops.gt[k] * phi[ops.n[k]];
    }
    return {s * mesh.L, t * mesh.L};
}

double MacroShape::min_margin() const {
    double m = 1e300;
    for (int f = 0; f < (int)mesh.faces.size(); ++f) {
        auto [s, t] = slope_face(f);
        m = std::min(m, slope_margin(s, t));
    }
    return m;
}

double MacroShape::eval(double x, double y) const {
    double xs = x * mesh.L, ys = y * mesh.L;
    const double tol = 1e-9;
    for (int di = 0; di >= -1; --di)
        for (int dj = 0; dj >= -1; --dj) {
            int i = (int)std::floor(xs) + di, j = (int)std::floor(ys) + dj;
            double xi = xs - i, eta = ys - j;
            if (xi < -tol || xi > 1 + tol || eta < -tol || eta > 1 + tol) continue;
            for (Orient o : {Orient::Up, Orient::Down}) {
                if (o == Orient::Up && xi < eta - tol) continue;
                if (o == Orient::Down && eta < xi - tol) continue;
                Face f{i, j, o};
                auto cs = f.corners();
                int n0 = mesh.index_of(cs[0]), n1 = mesh.index_of(cs[1]), n2 = mesh.index_of(cs[2]);
                if (n0 < 0 || n1 < 0 || n2 < 0) continue;
                if (o == Orient::Up)
                    return phi[n0] + (phi[n1] - phi[n0]) * xi + (phi[n2] - phi[n1]) * eta;
                return phi[n0] + (phi[n2] - phi[n1]) * xi + (phi[n1] - phi[n0]) * eta;
            }
        }
    throw std::runtime_error("MacroShape::eval: point outside mesh");
}

namespace {
double face_area(int L) { return std::sqrt(3.0) / 4.0 / (double(L) * L); }

// energy + gradient; returns false when any slope leaves the inset
bool energy_grad(const Domain& d, const std::vector<double>& phi, double inset, double* E,
                 std::vector<double>* grad) {
    if (E) *E = 0;
    if (grad) std::fill(grad->begin(), grad->end(), 0.0);
    double A = face_area(d.L);
    for (int f = 0; f < (int)d.faces.size(); ++f) {
        auto ops = face_ops(d, f);
        double s = 0, t = 0;
        for (int k = 0; k < 3; ++k) {
            s += ops.gs[k] * phi[ops.n[k]];
            t += ops.gt[k] * phi[ops.n[k]];
        }
        s *= d.L;
        t *= d.L;
        if (slope_margin(s, t) < inset) return false;
        if (E) *E += A * sigma(s, t);
        if (grad) {
            auto g = sigma_grad(s, t);
            for (int k = 0; k < 3; ++k)
                (*grad)[ops.n[k]] += A * d.L * (g[0] * ops.gs[k] + g[1] * ops.gt[k]);
        }
    }
    return true;
}
} // namespace

double MacroShape::node_residual(int v) const {
    if (mesh.on_boundary[v]) throw std::runtime_error("node_residual: boundary node");
    double A = face_area(mesh.L);
    double g = 0, lumped = 0;
    for (int f = 0; f < (int)mesh.faces.size(); ++f) {
        auto ops = face_ops(mesh, f);
        int slot = -1;
        for (int k = 0; k < 3; ++k)
            if (ops.n[k] == v) slot = k;
        if (slot < 0) continue;
        auto [s, t] = slope_face(f);
        auto sg = sigma_grad(s, t);
        g += A * mesh.L * (sg[0] * ops.gs[slot] + sg[1] * ops.gt[slot]);
        lumped += A / 3.0;
    }
    return g / lumped;
}

MacroShape variational_solve(const Domain& mesh, const std::function<double(double, double)>& bnd,
                             const SolveOpts& opts) {
    const int n = (int)mesh.verts.size();
    MacroShape sh;
    sh.mesh = mesh;
    sh.phi.resize(n);
    for (int v = 0; v < n; ++v) sh.phi[v] = bnd(mesh.x_of(v), mesh.y_of(v));

    // pull an infeasible initial guess toward a flat feasible plane
    std::vector<double> plane(n);
    double mx = 0, my = 0, mphi = 0;
    for (int v = 0; v < n; ++v) {
        mx += mesh.x_of(v);
        my += mesh.y_of(v);
        mphi += sh.phi[v];
    }
    mx /= n;
    my /= n;
    mphi /= n;
    for (int v = 0; v < n; ++v)
        plane[v] = mphi - (mesh.x_of(v) - mx) / 3.0 - (mesh.y_of(v) - my) / 3.0;
    double lam = 1.0;
    auto blend = [&](double l) {
        std::vector<double> p(n);
        for (int v = 0; v < n; ++v) p[v] = l * sh.phi[v] + (1 - l) * plane[v];
        return p;
    };
    while (lam > 1e-6 && !energy_grad(mesh, blend(lam), opts.inset, nullptr, nullptr)) lam *= 0.7;
    if (lam <= 1e-6) throw std::runtime_error("variational_solve: no feasible initial surface");
    auto start = blend(lam);
    // boundary values stay exact
    for (int v : mesh.boundary_verts) start[v] = sh.phi[v];
    if (!energy_grad(mesh, start, opts.inset, nullptr, nullptr))
        throw std::runtime_error("variational_solve: boundary data incompatible with inset");
    sh.phi = start;

    std::vector<int> free;
    std::vector<int> dof(n, -1);
    for (int v = 0; v < n; ++v)
        if (!mesh.on_boundary[v]) {
            dof[v] = (int)free.size();
            free.push_back(v);
        }
    if (free.empty()) return sh;

    const double A = face_area(mesh.L);
    std::vector<double> grad(n);
    double E;
    for (int iter = 0; iter < opts.max_iter; ++iter) {
        if (!energy_grad(mesh, sh.phi, 0, &E, &grad))
            throw std::runtime_error("variational_solve: iterate left the slope triangle");
        double gmax = 0;
        for (int v : free) gmax = std::max(gmax, std::abs(grad[v]));
        if (gmax < opts.grad_tol) break;

        // assemble Hessian: per face pi * a_ij scaled by area and chain rule
        std::vector<Eigen::Triplet<double>> trip;
        for (int f = 0; f < (int)mesh.faces.size(); ++f) {
            auto ops = face_ops(mesh, f);
            double s = 0, t = 0;
            for (int k = 0; k < 3; ++k) {
                s += ops.gs[k] * sh.phi[ops.n[k]];
                t += ops.gt[k] * sh.phi[ops.n[k]];
            }
            s *= mesh.L;
            t *= mesh.L;
            Coeffs cf = a_coeffs(s, t);
            double w = A * M_PI * mesh.L * mesh.L;
            for (int r = 0; r < 3; ++r) {
                if (dof[ops.n[r]] < 0) continue;
                for (int cidx = 0; cidx < 3; ++cidx) {
                    if (dof[ops.n[cidx]] < 0) continue;
                    double val = w * (cf.a11 * ops.gs[r] * ops.gs[cidx] +
                                      cf.a12 * (ops.gs[r] * ops.gt[cidx] + ops.gt[r] * ops.gs[cidx]) +
                                      cf.a22 * ops.gt[r] * ops.gt[cidx]);
                    trip.emplace_back(dof[ops.n[r]], dof[ops.n[cidx]], val);
                }
            }
        }
        Eigen::SparseMatrix<double> H((int)free.size(), (int)free.size());
        H.setFromTriplets(trip.begin(), trip.end());
        Eigen::VectorXd rhs((int)free.size());
        for (size_t k = 0; k < free.size(); ++k) rhs[(int)k] = -grad[free[k]];
        Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(H);
        if (solver.info() != Eigen::Success)
            throw std::runtime_error("variational_solve: Hessian factorization failed");
        Eigen::VectorXd step = solver.solve(rhs);

        // damped line search staying in the inset
        double lambda = 1.0;
        bool moved = false;
        for (int ls = 0; ls < 60; ++ls) {
            auto trial = sh.phi;
            for (size_t k = 0; k < free.size(); ++k) trial[free[k]] += lambda * step[(int)k];
            double Et;
            if (energy_grad(mesh, trial, opts.inset, &Et, nullptr) && Et <= E + 1e-15) {
                sh.phi = trial;
                moved = true;
                break;
            }
            lambda /= 2;
        }
        if (!moved) break; // stuck: gradient already tiny in practice
    }
    return sh;
}

} // namespace loz
