#include "lozlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "lozlab/tiling.hpp"

namespace loz {

double boundary_guard(int L, double inradius, double guard_cap_frac) {
    return std::min(2.0 / std::sqrt((double)L), guard_cap_frac * inradius);
}

namespace {

Scenario scenario_from_phi(const std::string& name, int L, double radius,
                           const std::function<double(double, double)>& phi,
                           double guard_cap_frac) {
    Scenario sc;
    sc.name = name;
    sc.dom = discretize_domain(disk_region(0, 0, radius), L);
    sc.boundary = sample_boundary(sc.dom, phi);
    sc.phi.resize(sc.dom.verts.size());
    for (size_t v = 0; v < sc.dom.verts.size(); ++v)
        sc.phi[v] = phi(sc.dom.x_of((int)v), sc.dom.y_of((int)v));
    sc.guard = boundary_guard(L, radius, guard_cap_frac);
    sc.mask = interior_mask(sc.dom, sc.guard);
    bool any = false;
    for (uint8_t m : sc.mask) any = any || m;
    if (!any) throw std::runtime_error("scenario: empty measured set");
    return sc;
}

} // namespace

Scenario scenario_hexagon_in_ellipse(int L, double radius, double guard_cap_frac) {
    const double third = 1.0 / 3;
    // inscribed circle of the regular unit hexagon has radius sqrt(3)/6
    if (radius >= std::sqrt(3.0) / 6 - 1e-9)
        throw std::runtime_error("scenario: disk not inside the arctic ellipse");
    auto phi = [=](double x, double y) { return hexagon_height(third, third, third, x, y); };
    return scenario_from_phi("hexagon-in-ellipse", L, radius, phi, guard_cap_frac);
}

Scenario scenario_affine_flat(int L, double radius, double s, double t, double guard_cap_frac) {
    if (slope_margin(s, t) <= 0) throw std::runtime_error("scenario: slope outside T");
    auto phi = [=](double x, double y) { return s * x + t * y; };
    return scenario_from_phi("affine-flat", L, radius, phi, guard_cap_frac);
}

Scenario scenario_perturbed_affine(int L, double radius, double s, double t, double amp,
                                   double guard_cap_frac) {
    if (slope_margin(s, t) <= 4 * M_PI * std::abs(amp))
        throw std::runtime_error("scenario: perturbation too large for the slope margin");
    auto phi = [=](double x, double y) {
        return s * x + t * y + amp * std::sin(2 * M_PI * x) * std::sin(2 * M_PI * y);
    };
    return scenario_from_phi("perturbed-affine", L, radius, phi, guard_cap_frac);
}

Scenario make_scenario(const std::string& name, int L, double radius) {
    if (name == "hexagon-in-ellipse") return scenario_hexagon_in_ellipse(L, radius);
    if (name == "affine-flat") return scenario_affine_flat(L, radius, -1.0 / 3, -1.0 / 3);
    if (name == "perturbed-affine")
        return scenario_perturbed_affine(L, radius, -1.0 / 3, -1.0 / 3, 0.01);
    throw std::runtime_error("unknown scenario: " + name);
}

double fit_exponent(const std::vector<double>& Ls, const std::vector<double>& med) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = (int)Ls.size();
    for (int k = 0; k < n; ++k) {
        double lx = std::log(Ls[k]), ly = std::log(med[k]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

MixingResult run_mixing_scaling(const std::string& scenario, const std::vector<int>& sizes,
                                double radius, double eps, int seeds, double horizon_factor) {
    MixingResult res;
    res.sizes = sizes;
    std::vector<double> med, Ls;
    for (int L : sizes) {
        Scenario sc = make_scenario(scenario, L, radius);
        // non-extremal check: the target shape must have interior slopes
        // (extremal boundary data would freeze the dynamics)
        auto [lo, hi] = extremal_heights(sc.dom, sc.boundary);
        if (lo == hi) throw std::runtime_error("mixing: extremal (frozen) boundary data");
        double horizon = horizon_factor * double(L) * L;
        // start from the extremal state farther from the target, so the
        // measurement has room even when the target hugs one envelope
        Chain probe_lo = make_chain(sc.dom, sc.boundary, lo, 0);
        Chain probe_hi = make_chain(sc.dom, sc.boundary, hi, 0);
        const Heights& init = sup_distance(probe_lo, sc.phi, sc.mask) >
                                      sup_distance(probe_hi, sc.phi, sc.mask)
                                  ? lo
                                  : hi;
        std::vector<double> hits;
        int misses = 0;
        for (int s = 0; s < seeds; ++s) {
            Chain c = make_chain(sc.dom, sc.boundary, init, 1000 * L + s);
            auto t = hitting_time_to_shape(c, sc.phi, sc.mask, eps, horizon);
            if (t)
                hits.push_back(*t);
            else
                ++misses;
        }
        res.hit_times.push_back(hits);
        res.horizon_misses.push_back(misses);
        if (!hits.empty()) {
            std::sort(hits.begin(), hits.end());
            med.push_back(std::max(hits[hits.size() / 2], 1e-9));
            Ls.push_back(L);
        }
    }
    if (Ls.size() >= 2) res.exponent = fit_exponent(Ls, med);
    return res;
}

EquilibriumResult run_equilibrium_validation(int A, long n_samples, double spacing,
                                             uint64_t seed) {
    HexDomain hex = hexagon_domain(A, A, A);
    auto tilings = enumerate_tilings(hex.dom, hex.boundary);
    const long k = (long)tilings.size();
    std::map<Heights, int> index;
    for (long i = 0; i < k; ++i) index[tilings[i]] = (int)i;

    std::vector<Edge> vedges;
    for (const auto& e : hex.dom.edges)
        if (e.dir == 2) vedges.push_back(e);
    std::vector<BigRat> pexact;
    for (const auto& e : vedges) pexact.push_back(exact_edge_prob(A, A, A, edge_label(hex, e)));

    Chain c = make_chain(hex.dom, hex.boundary, tilings[0], seed);
    double burn = 50.0 * spacing;
    step_to(c, burn);
    std::vector<long> counts(k, 0);
    std::vector<long> ecount(vedges.size(), 0);
    double t = burn;
    for (long s = 0; s < n_samples; ++s) {
        t += spacing;
        step_to(c, t);
        auto it = index.find(c.h);
        if (it == index.end()) throw std::runtime_error("equilibrium: state not in enumeration");
        ++counts[it->second];
        for (size_t e = 0; e < vedges.size(); ++e)
            if (crosses_horizontal(hex.dom, c.h, vedges[e])) ++ecount[e];
    }

    EquilibriumResult r;
    r.A = A;
    r.n_states = k;
    r.n_samples = n_samples;
    double p = 1.0 / k, sig = std::sqrt(n_samples * p * (1 - p));
    r.max_state_z = 0;
    for (long i = 0; i < k; ++i)
        r.max_state_z = std::max(r.max_state_z, std::abs(counts[i] - n_samples * p) / sig);
    r.max_edge_z = 0;
    for (size_t e = 0; e < vedges.size(); ++e) {
        double pe = pexact[e].convert_to<double>();
        double se = std::sqrt(std::max(n_samples * pe * (1 - pe), 1e-12));
        r.max_edge_z = std::max(r.max_edge_z, std::abs(ecount[e] - n_samples * pe) / se);
    }

    // order preservation of the grand coupling over 1e5 events
    auto [lo, hi] = extremal_heights(hex.dom, hex.boundary);
    Coupling cp = make_coupling(hex.dom, hex.boundary, {lo, hi}, seed + 1);
    while (cp.events < 100000) coupling_step_to(cp, cp.t + 10.0);
    r.coupling_events = cp.events;
    r.order_violations = cp.order_violations;
    return r;
}

std::vector<TrappingRow> run_trapping_demo(int L, double radius, double xi, int n_stages,
                                           int n_sub, double dt_sub, uint64_t seed) {
    Scenario sc = scenario_hexagon_in_ellipse(L, radius);
    const double eps = 1.0 / std::log((double)L);
    // psi = psi0 - e^{x/xi} - e^{y/xi} with inf over the domain equal to 2
    double expmax = 0;
    for (size_t v = 0; v < sc.dom.verts.size(); ++v)
        expmax = std::max(expmax,
                          std::exp(sc.dom.x_of((int)v) / xi) + std::exp(sc.dom.y_of((int)v) / xi));
    double psi0 = 2 + expmax;
    std::vector<double> psi(sc.dom.verts.size());
    for (size_t v = 0; v < sc.dom.verts.size(); ++v)
        psi[v] = psi0 - std::exp(sc.dom.x_of((int)v) / xi) - std::exp(sc.dom.y_of((int)v) / xi);

    auto [lo, hi] = extremal_heights(sc.dom, sc.boundary);
    Chain c = make_chain(sc.dom, sc.boundary, hi, seed);
    double G = -1e300;
    for (size_t v = 0; v < hi.size(); ++v)
        G = std::max(G, double(hi[v]) / L - sc.phi[v]);
    G += 2 * eps; // start with every vertex strictly below the first barrier

    std::vector<TrappingRow> rows;
    double t = 0;
    for (int i = 0; i < n_stages; ++i)
        for (int j = 0; j <= n_sub; ++j) {
            if (!(i == 0 && j == 0)) {
                t += dt_sub;
                step_to(c, t);
            }
            long below = 0, tot = 0;
            for (size_t v = 0; v < c.h.size(); ++v) {
                if (!sc.mask[v]) continue;
                ++tot;
                double gamma =
                    G - (i + 2) * eps + sc.phi[v] + eps * (1.0 - double(j) / n_sub) * psi[v];
                if (double(c.h[v]) / L <= gamma) ++below;
            }
            rows.push_back({i, j, t, double(below) / std::max(tot, 1L)});
        }
    return rows;
}

std::string trajectory_csv(Chain& chain, const Scenario& sc, double t_end, int n_rows,
                           const std::string& config_json) {
    std::ostringstream out;
    out << "# " << config_json << "\n";
    out << "t,sup_distance,flips_applied,flips_censored\n";
    for (int r = 0; r <= n_rows; ++r) {
        double t = t_end * r / n_rows;
        step_to(chain, t);
        out << t << "," << sup_distance(chain, sc.phi, sc.mask) << "," << chain.flips << ","
            << chain.censored << "\n";
    }
    return out.str();
}

} // namespace loz
