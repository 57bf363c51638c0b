#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lozlab/lattice.hpp"

using namespace loz;

TEST_CASE("unit hexagon domain") {
    HexDomain h = hexagon_domain(1, 1, 1);
    CHECK(h.dom.verts.size() == 7);
    CHECK(h.dom.faces.size() == 6);
    CHECK(h.dom.edges.size() == 12);
    CHECK(h.dom.interior_verts.size() == 1);
    int center = h.dom.interior_verts[0];
    // the interior vertex has all six neighbors
    for (int k = 0; k < 6; ++k) CHECK(h.dom.nbr[center][k] >= 0);
    CHECK(h.boundary.size() == 6);
}

TEST_CASE("hexagon vertex count matches closed form") {
    // lattice points of the A,B,C hexagon: interior AB+BC+CA - A-B-C + 1,
    // boundary 2(A+B+C)
    for (auto [A, B, C] : {std::array<int, 3>{2, 2, 2}, {3, 1, 2}, {1, 4, 2}}) {
        HexDomain h = hexagon_domain(A, B, C);
        size_t interior = A * B + B * C + C * A - A - B - C + 1;
        CHECK(h.dom.boundary_verts.size() == size_t(2 * (A + B + C)));
        CHECK(h.dom.interior_verts.size() == interior);
        CHECK(h.boundary.size() == h.dom.boundary_verts.size());
    }
}

TEST_CASE("extremal heights of the unit hexagon differ only at the center") {
    HexDomain h = hexagon_domain(1, 1, 1);
    auto [lo, hi] = extremal_heights(h.dom, h.boundary);
    int diff = 0;
    for (size_t v = 0; v < lo.size(); ++v) {
        CHECK(lo[v] <= hi[v]);
        if (lo[v] != hi[v]) {
            ++diff;
            CHECK(hi[v] - lo[v] == 1);
        }
    }
    CHECK(diff == 1);
}

TEST_CASE("extremal heights rejects infeasible boundary data") {
    HexDomain h = hexagon_domain(2, 2, 2);
    BoundaryHeight bad = h.boundary;
    bad.begin()->second += 5;
    CHECK_THROWS(extremal_heights(h.dom, bad));
}

TEST_CASE("pointwise min/max of extensions are valid height functions") {
    HexDomain h = hexagon_domain(2, 3, 2);
    auto [lo, hi] = extremal_heights(h.dom, h.boundary);
    for (const auto& e : h.dom.edges) {
        for (const Heights* hh : {&lo, &hi}) {
            int d = (*hh)[e.v] - (*hh)[e.u];
            CHECK(d >= -1);
            CHECK(d <= 0);
        }
    }
}

TEST_CASE("octant sampler discretizes the hexagon exactly") {
    // a=b=c=1/3 at L=6 is the combinatorial hexagon A=B=C=2
    HexDomain h = hexagon_domain(2, 2, 2);
    Domain d = discretize_domain(hexagon_region(1.0 / 3, 1.0 / 3, 1.0 / 3), 6);
    // hexagon_domain already centers the lattice for even sides
    CHECK(d.faces.size() == h.dom.faces.size());
    for (size_t k = 0; k < d.faces.size(); ++k) CHECK(d.faces[k] == h.dom.faces[k]);
    auto phi = [](double x, double y) { return octant_height(1.0 / 3, 1.0 / 3, 1.0 / 3, x, y); };
    BoundaryHeight b = sample_boundary(d, phi);
    CHECK(b.size() == h.boundary.size());
    // anchor offset between the two conventions is a constant
    int off = b.begin()->second - h.boundary.at(b.begin()->first);
    for (auto [v, hv] : b) CHECK(hv - h.boundary.at(v) == off);
}

TEST_CASE("octant sampler matches the boundary walk for odd sides too") {
    for (auto [A, B, C] : {std::array<int, 3>{3, 3, 3}, {2, 3, 4}}) {
        HexDomain h = hexagon_domain(A, B, C);
        double T = A + B + C;
        auto phi = [&](double x, double y) { return octant_height(A / T, B / T, C / T, x, y); };
        // evaluate the continuum sampler at the hexagon's own vertices
        for (auto [v, hv] : h.boundary) {
            double val = T * phi(h.x_of(v), h.y_of(v));
            CHECK(std::abs(val - hv) < 1e-9);
        }
    }
}

TEST_CASE("plane coordinate transforms invert") {
    for (double x : {-0.3, 0.1, 0.7})
        for (double y : {-0.5, 0.0, 0.4}) {
            auto [x1, y1] = xy_from_uv1(uv1_from_xy(x, y));
            auto [x2, y2] = xy_from_uv2(uv2_from_xy(x, y));
            auto [x3, y3] = xy_from_uv3(uv3_from_xy(x, y));
            for (double v : {x1 - x, y1 - y, x2 - x, y2 - y, x3 - x, y3 - y})
                CHECK(std::abs(v) < 1e-12);
        }
}

TEST_CASE("embedding geometry: unit steps, vertical diagonal") {
    auto [ex, ey] = embed_xy(1, 0);
    CHECK(std::abs(std::hypot(ex, ey) - 1) < 1e-12);
    auto [dx, dy] = embed_xy(-1, -1); // up step
    CHECK(std::abs(dx) < 1e-12);
    CHECK(dy == doctest::Approx(1.0));
}

TEST_CASE("domain JSON round trip") {
    HexDomain h = hexagon_domain(2, 1, 3);
    std::string text = domain_to_json(h.dom, h.boundary);
    auto [d2, b2] = domain_from_json(text);
    CHECK(d2.faces == h.dom.faces);
    CHECK(d2.L == h.dom.L);
    CHECK(b2 == h.boundary);
    CHECK(domain_to_json(d2, b2) == text);
}

TEST_CASE("disk discretization is simply connected and nonempty") {
    Domain d = discretize_domain(disk_region(0, 0, 0.2), 32);
    CHECK(d.faces.size() > 50);
    CHECK((long)d.verts.size() - (long)d.edges.size() + (long)d.faces.size() == 1);
}

TEST_CASE("sample_boundary rejects an invalid sampler") {
    Domain d = discretize_domain(disk_region(0, 0, 0.2), 16);
    CHECK_THROWS(sample_boundary(d, [](double x, double) { return 5.0 * x; }));
}
