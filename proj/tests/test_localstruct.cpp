#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "lozlab/localstruct.hpp"

using namespace loz;

static const double kPi = 3.14159265358979323846;

static std::array<double, 4> random_w(std::mt19937& rng, double min_margin) {
    std::uniform_real_distribution<double> uab(0.12, 0.76);
    std::uniform_real_distribution<double> uf(-0.8, 0.8);
    for (;;) {
        double a = uab(rng), b = uab(rng);
        if (a + b > 0.88) continue;
        double c = 1 - a - b;
        double x = uf(rng) * (b + c) / 2, y = uf(rng) * (a + b) / 2;
        std::array<double, 4> w{a, b, x, y};
        if (w_margin(w) >= min_margin) return w;
    }
}

TEST_CASE("forward at the symmetric center") {
    LocalData z = forward({1.0 / 3, 1.0 / 3, 0, 0});
    CHECK(z.z1 == doctest::Approx(-1.0 / 3).epsilon(1e-12));
    CHECK(z.z2 == doctest::Approx(-1.0 / 3).epsilon(1e-12));
    // x <-> y symmetry gives z22 = z11; the elliptic relation then forces
    // z12 = -2 z11
    CHECK(z.z12 == doctest::Approx(-2.0 * z.z11).epsilon(1e-9));
}

TEST_CASE("forward matches the closed-form slope and its finite differences") {
    std::mt19937 rng(41);
    const double h = 1e-5;
    for (int k = 0; k < 40; ++k) {
        auto w = random_w(rng, 0.05);
        double a = w[0], b = w[1], c = 1 - a - b, x = w[2], y = w[3];
        LocalData z = forward(w);
        auto g = hexagon_slope(a, b, c, x, y);
        CHECK(z.z1 == doctest::Approx(g[0]).epsilon(1e-11));
        CHECK(z.z2 == doctest::Approx(g[1]).epsilon(1e-11));
        double z11 = (hexagon_slope(a, b, c, x + h, y)[0] - hexagon_slope(a, b, c, x - h, y)[0]) /
                     (2 * h);
        double z12 = (hexagon_slope(a, b, c, x, y + h)[0] - hexagon_slope(a, b, c, x, y - h)[0]) /
                     (2 * h);
        CHECK(z.z11 == doctest::Approx(z11).epsilon(1e-5));
        CHECK(z.z12 == doctest::Approx(z12).epsilon(1e-5));
    }
}

TEST_CASE("jacobian matches finite differences of forward") {
    std::mt19937 rng(43);
    const double h = 1e-6;
    for (int k = 0; k < 25; ++k) {
        auto w = random_w(rng, 0.05);
        Mat4 J = jacobian(w);
        for (int col = 0; col < 4; ++col) {
            auto wp = w, wm = w;
            wp[col] += h;
            wm[col] -= h;
            LocalData zp = forward(wp), zm = forward(wm);
            double fd[4] = {(zp.z1 - zm.z1) / (2 * h), (zp.z2 - zm.z2) / (2 * h),
                            (zp.z11 - zm.z11) / (2 * h), (zp.z12 - zm.z12) / (2 * h)};
            for (int row = 0; row < 4; ++row) {
                double scale = std::max(1.0, std::abs(fd[row]));
                CHECK(std::abs(J[row][col] - fd[row]) / scale < 2e-4);
            }
        }
    }
}

TEST_CASE("closed-form determinant: pinned value, sign, agreement with the jacobian") {
    std::array<double, 4> w0{1.0 / 3, 1.0 / 3, 0, 0};
    double want = -(8.0 / 27) / (32 * std::pow(kPi, 4) * (1.0 / 59049));
    CHECK(det_closed(w0) == doctest::Approx(want).epsilon(1e-12));
    CHECK(det_closed(w0) == doctest::Approx(-5.612867).epsilon(1e-5));
    std::mt19937 rng(47);
    for (int k = 0; k < 60; ++k) {
        auto w = random_w(rng, 0.03);
        Mat4 J = jacobian(w);
        // 4x4 determinant by cofactor expansion
        auto det3 = [](double m[3][3]) {
            return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                   m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                   m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        };
        double det = 0;
        for (int c0 = 0; c0 < 4; ++c0) {
            double m[3][3];
            for (int r = 1; r < 4; ++r)
                for (int c = 0, cc = 0; c < 4; ++c)
                    if (c != c0) m[r - 1][cc++] = J[r][c];
            det += (c0 % 2 ? -1 : 1) * J[0][c0] * det3(m);
        }
        double cf = det_closed(w);
        CHECK(cf < 0);
        CHECK(det == doctest::Approx(cf).epsilon(1e-8));
        CHECK(det_numer_N(w) > 0);
        CHECK(det_denom_D(w) < 0);
    }
}

TEST_CASE("inverse recovers w from forward data") {
    std::mt19937 rng(53);
    for (int k = 0; k < 20; ++k) {
        auto w = random_w(rng, 0.05);
        auto got = inverse(forward(w));
        REQUIRE(got.has_value());
        for (int i = 0; i < 4; ++i) CHECK((*got)[i] == doctest::Approx(w[i]).epsilon(1e-7));
    }
}

TEST_CASE("inverse survives perturbed data") {
    std::mt19937 rng(59);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int k = 0; k < 10; ++k) {
        auto w = random_w(rng, 0.08);
        LocalData z = forward(w);
        z.z1 += 1e-5 * u(rng);
        z.z2 += 1e-5 * u(rng);
        z.z11 += 1e-4 * u(rng);
        z.z12 += 1e-4 * u(rng);
        auto got = inverse(z);
        REQUIRE(got.has_value());
        LocalData back = forward(*got);
        CHECK(std::abs(back.z1 - z.z1) < 1e-9);
        CHECK(std::abs(back.z11 - z.z11) < 1e-7);
    }
}

TEST_CASE("complete_hessian closes the elliptic relation") {
    std::mt19937 rng(61);
    const double h = 1e-5;
    for (int k = 0; k < 20; ++k) {
        auto w = random_w(rng, 0.05);
        LocalData z = forward(w);
        double z22 = complete_hessian(z);
        Coeffs a = a_coeffs(z.z1, z.z2);
        CHECK(std::abs(a.a11 * z.z11 + 2 * a.a12 * z.z12 + a.a22 * z22) < 1e-9);
        // z22 really is the y-derivative of z2
        double fd = (hexagon_slope(w[0], w[1], 1 - w[0] - w[1], w[2], w[3] + h)[1] -
                     hexagon_slope(w[0], w[1], 1 - w[0] - w[1], w[2], w[3] - h)[1]) /
                    (2 * h);
        CHECK(z22 == doctest::Approx(fd).epsilon(1e-4));
    }
}

TEST_CASE("project_hessian pairs to zero against the coefficient form") {
    std::array<double, 2> slope{-0.3, -0.45};
    Coeffs a = a_coeffs(slope[0], slope[1]);
    Mat2 H{{{0.7, -0.2}, {-0.2, 1.1}}};
    Mat2 Hpsi{{{0.3, 0.1}, {0.1, 0.5}}};
    Mat2 P = project_hessian(slope, H, Hpsi);
    double pair = a.a11 * P[0][0] + a.a12 * (P[0][1] + P[1][0]) + a.a22 * P[1][1];
    CHECK(std::abs(pair) < 1e-12);
}
