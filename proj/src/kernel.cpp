#include "lozlab/kernel.hpp"

#include <cmath>
#include <vector>

namespace loz {

namespace {

// (start)(start+1)...(start+len-1)
BigInt poch(long start, long len) {
    BigInt p = 1;
    for (long k = 0; k < len; ++k) p *= BigInt(start + k);
    return p;
}

BigInt factorial(long n) { return poch(1, n); }

} // namespace

EdgeLabel edge_label(const HexDomain& hex, const Edge& e) {
    if (e.dir != 2) throw std::runtime_error("edge_label: not a vertical edge");
    Vert lower = hex.dom.verts[e.v]; // e.v = e.u + (1,1), lower in the drawing
    long p = lower.i - hex.v0.i, q = lower.j - hex.v0.j;
    return {p - (hex.A + hex.B + hex.C), q - (2 * hex.A + hex.B + hex.C)};
}

BigRat exact_edge_prob(int A, int B, int C, EdgeLabel lab) {
    const long X = lab.X, Y = lab.Y, L = A + C;
    const long M = L - X + Y; // Pochhammer span of the W poles
    // M = 0 happens exactly on the extreme diagonal through the V1/V2 side,
    // where the height step is forced and the edge never crosses a lozenge
    if (M < 1) return BigRat(0);

    // The inner W integral is the residue sum over W = -X-m (m = 0..M) plus
    // the W = Z pole. The numerator (Z+X+1)_{M-1} cancels the would-be Z
    // poles at -X-m for 1 <= m <= M-1, and the W = Z term collapses to
    // 1/((Z+X)(Z+L+Y)) exactly; all surviving Z poles are simple (any
    // coincidence comes with a vanishing t_m).
    //
    //   H(Z) = N1(Z) * sum_m t_m / (-X-m-Z)  +  1/((Z+X)(Z+L+Y))
    //   N1(Z) = (Z+X+1)_{M-1} / ((-Z)_A (A+B-Z)_C)
    //   t_m   = (-1)^m F(-X-m) / (m! (M-m)!),  F(W) = (-W)_A (A+B-W)_C

    std::vector<BigRat> t(M + 1);
    std::vector<bool> tzero(M + 1);
    for (long m = 0; m <= M; ++m) {
        BigInt F = poch(X + m, A) * poch(A + B + X + m, C);
        tzero[m] = F.is_zero();
        BigRat val(F, factorial(m) * factorial(M - m));
        t[m] = (m % 2 == 0) ? val : -val;
    }

    // denominator roots of N1
    std::vector<long> roots;
    for (long k = 0; k < A; ++k) roots.push_back(k);
    for (long k = 0; k < C; ++k) roots.push_back(A + B + k);

    const long lo = -X, hi = A + B + C; // integer points inside the Z contour
    BigRat total = 0;

    for (long z0 : roots) {
        if (z0 < lo || z0 > hi) continue;
        // Res N1 = (z0+X+1)_{M-1} / d/dZ[(-Z)_A (A+B-Z)_C](z0); every factor
        // has the form (r - Z), so the derivative is -prod_{r != z0}(r - z0)
        BigInt num = poch(z0 + X + 1, M - 1);
        BigInt den = -1;
        for (long r : roots)
            if (r != z0) den *= BigInt(r - z0);
        BigRat resN1 = BigRat(num) / BigRat(den); // den may be negative
        BigRat inner = 0;
        for (long m = 0; m <= M; ++m) {
            if (tzero[m]) continue;
            long dz = -X - m - z0;
            if (dz == 0) throw std::runtime_error("exact_edge_prob: unexpected pole collision");
            inner += t[m] / BigRat(dz);
        }
        total += resN1 * inner;
    }

    // pole of the m = 0 term at Z = -X (absent when F(-X) = 0, which is
    // exactly the case -X in roots); residue of 1/(-X-Z) is -1
    bool minusX_in_roots = (-X >= 0 && -X < A) || (-X >= A + B && -X < A + B + C);
    if (!tzero[0]) {
        if (minusX_in_roots) throw std::runtime_error("exact_edge_prob: inconsistent pole data");
        BigInt g = poch(X, A) * poch(A + B + X, C); // (-Z)_A (A+B-Z)_C at Z = -X
        total -= t[0] * BigRat(factorial(M - 1)) / BigRat(g);
    }
    // the collapsed W=Z term 1/((Z+X)(Z+L+Y)): -L-Y = -X-M is never enclosed
    total += BigRat(1, M);

    BigRat prob = BigRat(M) * total;
    if (prob < 0 || prob > 1) throw std::runtime_error("exact_edge_prob: result outside [0,1]");
    return prob;
}

BigRat mean_height_gain(const HexDomain& hex, Vert u, Vert v) {
    if (u.i - u.j != v.i - v.j) throw std::runtime_error("mean_height_gain: not on one diagonal");
    if (v.i >= u.i) throw std::runtime_error("mean_height_gain: v must be above u");
    BigRat acc = 0;
    Vert w = u;
    while (!(w == v)) {
        int lower = hex.dom.index_of(w);
        Vert up{w.i - 1, w.j - 1};
        int upper = hex.dom.index_of(up);
        if (lower < 0 || upper < 0) throw std::runtime_error("mean_height_gain: edge outside domain");
        Edge e{upper, lower, 2};
        acc += BigRat(1) - exact_edge_prob(hex.A, hex.B, hex.C, edge_label(hex, e));
        w = up;
    }
    return acc;
}

std::complex<double> s_action(double a, double b, double x, double y, std::complex<double> w) {
    double c = 1 - a;
    auto xlx = [](std::complex<double> z) { return z * std::log(z); };
    return xlx(w + x) - xlx(w + y + 1.0) + std::complex<double>((1 + y - x) * std::log(1 + y - x)) +
           xlx(a - w) + xlx(a + b + c - w) - xlx(-w) - xlx(a + b - w);
}

std::complex<double> s_prime(double a, double b, double x, double y, std::complex<double> w) {
    double c = 1 - a;
    return std::log((w + x) * (-w) * (a + b - w)) -
           std::log((w + y + 1.0) * (a - w) * (a + b + c - w));
}

std::optional<std::complex<double>> critical_point(double a, double b, double x, double y) {
    // (w+x)(-w)(a+b-w) = (w+y+1)(a-w)(a+b+c-w) with c = 1-a: the cubic terms
    // cancel, leaving alpha w^2 + beta w + gamma = 0
    double alpha = x - y;
    double beta = -(a + b) * x - a * (1 + b) + (1 + a + b) * (y + 1);
    double gamma = -a * (1 + b) * (y + 1);
    if (std::abs(alpha) < 1e-14) return std::nullopt; // degenerate: single real root
    double disc = beta * beta - 4 * alpha * gamma;
    if (disc >= 0) return std::nullopt;
    std::complex<double> w(-beta / (2 * alpha), std::sqrt(-disc) / (2 * std::abs(alpha)));
    return w;
}

double pi_infinity(double a, double b, double x, double y) {
    auto wc = critical_point(a, b, x, y);
    if (!wc) throw std::runtime_error("pi_infinity: frozen point");
    return (std::arg(*wc + x) - std::arg(*wc + y + 1.0)) / M_PI;
}

std::pair<double, double> label_coords(int A, int B, int C, EdgeLabel lab) {
    double L = A + C;
    return {lab.X / L, lab.Y / L};
}

std::pair<double, double> kernel_frame_from_unit(int A, int B, int C, double xs, double ys) {
    double L = A + C, T = A + B + C;
    double a = A / L, b = B / L, c = C / L;
    double xc = -a - (b + c) / 2, yc = -1.5 * a - c - b / 2;
    return {xc + xs * T / L, yc + ys * T / L};
}

} // namespace loz
