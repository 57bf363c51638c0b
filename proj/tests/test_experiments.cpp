#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "lozlab/experiments.hpp"

using namespace loz;

TEST_CASE("boundary_guard formula") {
    CHECK(boundary_guard(10000, 1.0, 0.5) == doctest::Approx(0.02));
    CHECK(boundary_guard(4, 0.05, 0.5) == doctest::Approx(0.025)); // capped
}

TEST_CASE("fit_exponent recovers an exact power law") {
    std::vector<double> L{8, 16, 24, 32}, med;
    for (double l : L) med.push_back(3.7 * std::pow(l, 2.13));
    CHECK(fit_exponent(L, med) == doctest::Approx(2.13).epsilon(1e-12));
}

TEST_CASE("scenarios build with nonempty masks and consistent targets") {
    for (const char* name : {"hexagon-in-ellipse", "affine-flat", "perturbed-affine"}) {
        Scenario sc = make_scenario(name, 16, 0.2);
        CHECK(sc.dom.faces.size() > 30);
        CHECK(sc.guard > 0);
        size_t n = 0;
        for (auto m : sc.mask) n += m;
        CHECK(n > 0);
        // boundary data is the floor-sample of the target profile
        for (auto [v, hv] : sc.boundary) {
            CHECK(hv <= sc.dom.L * sc.phi[v] + 1e-6);
            CHECK(hv > sc.dom.L * sc.phi[v] - 1 - 1e-6);
        }
        // boundary pins admit an extension
        auto [lo, hi] = extremal_heights(sc.dom, sc.boundary);
        for (size_t v = 0; v < lo.size(); ++v) CHECK(lo[v] <= hi[v]);
    }
    CHECK_THROWS(scenario_hexagon_in_ellipse(16, 0.4)); // disk pokes out of the ellipse
}

TEST_CASE("trajectory csv has a json header and the requested rows") {
    Scenario sc = make_scenario("affine-flat", 8, 0.25);
    auto [lo, hi] = extremal_heights(sc.dom, sc.boundary);
    Chain c = make_chain(sc.dom, sc.boundary, hi, 4);
    std::string csv = trajectory_csv(c, sc, 5.0, 10, "{\"run\":1}");
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line.substr(0, 2) == "# ");
    CHECK(line.find("\"run\":1") != std::string::npos);
    std::getline(in, line);
    CHECK(line == "t,sup_distance,flips_applied,flips_censored");
    int rows = 0;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 11); // n_rows intervals, checkpoints include t = 0
}

TEST_CASE("equilibrium validation on the unit hexagon, quick run") {
    EquilibriumResult r = run_equilibrium_validation(1, 4000, 3.0, 12345);
    CHECK(r.n_states == 2);
    CHECK(r.n_samples == 4000);
    CHECK(r.max_state_z < 4.5);
    CHECK(r.max_edge_z < 4.5);
    CHECK(r.order_violations == 0);
}

TEST_CASE("mixing scaling smoke run on two small sizes") {
    MixingResult r = run_mixing_scaling("hexagon-in-ellipse", {8, 12}, 0.28, 0.1, 2, 50);
    CHECK(r.sizes == std::vector<int>{8, 12});
    for (int m : r.horizon_misses) CHECK(m == 0);
    for (const auto& hs : r.hit_times)
        for (double t : hs) CHECK(t > 0);
}

TEST_CASE("trapping demo fractions are in [0,1] and reported per stage") {
    auto rows = run_trapping_demo(8, 0.25, 0.7, 2, 2, 0.5, 7);
    CHECK(rows.size() == 6); // n_stages * (n_sub + 1) checkpoints
    CHECK(rows.front().t == 0);
    for (const auto& r : rows) {
        CHECK(r.frac_below >= 0);
        CHECK(r.frac_below <= 1);
    }
    CHECK(rows.back().t == doctest::Approx(2.5));
}
