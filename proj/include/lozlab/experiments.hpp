#pragma once
#include "lozlab/glauber.hpp"
#include "lozlab/kernel.hpp"
#include "lozlab/shape.hpp"

#include <string>

namespace loz {

// A scenario is a discretized domain with boundary data, the continuum
// target profile at each vertex (same anchor as the boundary data), and the
// measured-vertex mask.
struct Scenario {
    Domain dom;
    BoundaryHeight boundary;
    std::vector<double> phi;    // target heights at vertices, continuum units
    std::vector<uint8_t> mask;  // vertices measured by hitting/dist metrics
    double guard = 0;           // realized boundary guard
    std::string name;
};

// disk of the given radius inside the arctic ellipse of the unit hexagon
// a=b=c=1/3, boundary and target from the closed-form limit shape
Scenario scenario_hexagon_in_ellipse(int L, double radius, double guard_cap_frac = 0.5);
// disk with affine profile of slope (s,t)
Scenario scenario_affine_flat(int L, double radius, double s, double t,
                              double guard_cap_frac = 0.5);
// affine plus a smooth bump, still a valid surface
Scenario scenario_perturbed_affine(int L, double radius, double s, double t, double amp,
                                   double guard_cap_frac = 0.5);

Scenario make_scenario(const std::string& name, int L, double radius);

// boundary guard: 2/sqrt(L), capped at guard_cap_frac * inradius
// so the measured set stays nonempty at desk scale
double boundary_guard(int L, double inradius, double guard_cap_frac);

struct MixingResult {
    std::vector<int> sizes;
    std::vector<std::vector<double>> hit_times; // per size, per seed; horizon misses absent
    std::vector<int> horizon_misses;
    double exponent = 0; // least-squares slope of log median vs log L
};
MixingResult run_mixing_scaling(const std::string& scenario, const std::vector<int>& sizes,
                                double radius, double eps, int seeds, double horizon_factor = 50);

struct EquilibriumResult {
    int A;
    long n_states;
    long n_samples;
    double max_state_z;  // worst |count - n/k| in multinomial sigmas
    double max_edge_z;   // worst edge-crossing frequency deviation in sigmas
    uint64_t coupling_events;
    uint64_t order_violations;
};
EquilibriumResult run_equilibrium_validation(int A, long n_samples, double spacing, uint64_t seed);

// Trapping schedule demo: staged barriers gamma_{i,j} = G - (i+2) eps + phi
// + eps (1 - j/n_sub) psi, runs the chain from the maximal state and records
// the fraction of masked vertices below the barrier at each checkpoint.
struct TrappingRow {
    int stage, sub;
    double t;
    double frac_below;
};
std::vector<TrappingRow> run_trapping_demo(int L, double radius, double xi, int n_stages,
                                           int n_sub, double dt_sub, uint64_t seed);

// CSV helpers: every file starts with a single '#'-prefixed JSON header line
std::string trajectory_csv(Chain& chain, const Scenario& sc, double t_end, int n_rows,
                           const std::string& config_json);

double fit_exponent(const std::vector<double>& Ls, const std::vector<double>& med);

} // namespace loz
