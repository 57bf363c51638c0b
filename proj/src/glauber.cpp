#include "lozlab/glauber.hpp"

#include <algorithm>
#include <cmath>

namespace loz {

namespace {

std::vector<int> updatable_sites(const Domain& d, const BoundaryHeight& b) {
    std::vector<int> sites;
    for (int v = 0; v < (int)d.verts.size(); ++v) {
        if (b.count(v)) continue;
        bool full = true;
        for (int k = 0; k < 6; ++k) full = full && d.nbr[v][k] >= 0;
        if (full) sites.push_back(v);
    }
    if (sites.empty()) throw std::runtime_error("glauber: no updatable vertex");
    return sites;
}

} // namespace

Chain make_chain(const Domain& d, const BoundaryHeight& b, Heights init, uint64_t seed) {
    if (!validate_heights(d, init)) throw std::runtime_error("glauber: invalid initial heights");
    for (auto [v, h] : b)
        if (init[v] != h) throw std::runtime_error("glauber: initial heights disagree with boundary");
    Chain c;
    c.dom = &d;
    c.h = std::move(init);
    c.rng.seed = seed;
    c.sites = updatable_sites(d, b);
    return c;
}

void step_to(Chain& c, double t_end, const Censor* censor) {
    const double rate = 2.0 * c.sites.size();
    while (true) {
        double t_next = c.t_event + c.rng.exponential(0) / rate;
        if (t_next > t_end) {
            c.t = t_end;
            return; // counter not advanced; the same event fires on the next call
        }
        c.t = c.t_event = t_next;
        int v = c.sites[c.rng.pick(1, c.sites.size())];
        int delta = c.rng.uniform(2) < 0.5 ? 1 : -1;
        c.rng.advance();
        ++c.proposals;
        if (flippable(*c.dom, c.h, v, delta)) {
            int nh = c.h[v] + delta;
            bool blocked = censor && ((censor->floor_h && nh < (*censor->floor_h)[v]) ||
                                      (censor->ceil_h && nh > (*censor->ceil_h)[v]));
            if (blocked) {
                ++c.censored;
            } else {
                apply_flip(c.h, v, delta);
                ++c.flips;
            }
        }
    }
}

Coupling make_coupling(const Domain& d, const BoundaryHeight& b, std::vector<Heights> members,
                       uint64_t seed) {
    if (members.empty()) throw std::runtime_error("coupling: no members");
    for (const auto& m : members) {
        if (!validate_heights(d, m)) throw std::runtime_error("coupling: invalid member heights");
        for (auto [v, h] : b)
            if (m[v] != h) throw std::runtime_error("coupling: member disagrees with boundary");
    }
    Coupling c;
    c.dom = &d;
    c.members = std::move(members);
    c.rng.seed = seed;
    c.sites = updatable_sites(d, b);
    return c;
}

void coupling_step_to(Coupling& c, double t_end) {
    const double rate = 2.0 * c.sites.size();
    const size_t n = c.members.size();
    while (true) {
        double t_next = c.t_event + c.rng.exponential(0) / rate;
        if (t_next > t_end) {
            c.t = t_end;
            return;
        }
        c.t = c.t_event = t_next;
        int v = c.sites[c.rng.pick(1, c.sites.size())];
        int delta = c.rng.uniform(2) < 0.5 ? 1 : -1;
        c.rng.advance();
        ++c.events;
        for (auto& m : c.members)
            if (flippable(*c.dom, m, v, delta)) apply_flip(m, v, delta);
        if (c.check_order)
            for (size_t k = 0; k + 1 < n; ++k)
                for (size_t idx = 0; idx < c.members[k].size(); ++idx)
                    if (c.members[k][idx] > c.members[k + 1][idx]) ++c.order_violations;
    }
}

std::optional<double> coalescence_time(const Domain& d, const BoundaryHeight& b, uint64_t seed,
                                       double horizon) {
    auto [lo, hi] = extremal_heights(d, b);
    Coupling c = make_coupling(d, b, {lo, hi}, seed);
    c.check_order = false;
    const double chunk = 1.0;
    auto together = [&] {
        return c.members[0] == c.members[1];
    };
    while (c.t < horizon) {
        if (together()) return c.t;
        // step one event at a time near the end; chunked stepping is fine
        // because we only need the first time the two agree, and agreement is
        // absorbing under the grand coupling
        coupling_step_to(c, std::min(horizon, c.t + chunk));
        if (c.t >= horizon) break;
    }
    return together() ? std::optional<double>(c.t) : std::nullopt;
}

double sup_distance(const Chain& c, const std::vector<double>& phi, const std::vector<uint8_t>& mask) {
    double worst = 0;
    for (size_t v = 0; v < c.h.size(); ++v)
        if (mask[v]) worst = std::max(worst, std::abs(double(c.h[v]) / c.dom->L - phi[v]));
    return worst;
}

std::optional<double> hitting_time_to_shape(Chain& c, const std::vector<double>& phi,
                                            const std::vector<uint8_t>& mask, double eps,
                                            double horizon) {
    const double rate = 2.0 * c.sites.size();
    // count of masked vertices currently out of range, updated per flip
    auto bad = [&](int v) {
        return mask[v] && std::abs(double(c.h[v]) / c.dom->L - phi[v]) > eps;
    };
    long nbad = 0;
    for (size_t v = 0; v < c.h.size(); ++v)
        if (bad((int)v)) ++nbad;
    if (nbad == 0) return c.t;
    while (true) {
        double t_next = c.t_event + c.rng.exponential(0) / rate;
        if (t_next > horizon) {
            c.t = horizon;
            return std::nullopt;
        }
        c.t = c.t_event = t_next;
        int v = c.sites[c.rng.pick(1, c.sites.size())];
        int delta = c.rng.uniform(2) < 0.5 ? 1 : -1;
        c.rng.advance();
        ++c.proposals;
        if (flippable(*c.dom, c.h, v, delta)) {
            bool was = bad(v);
            apply_flip(c.h, v, delta);
            ++c.flips;
            bool is = bad(v);
            nbad += (is ? 1 : 0) - (was ? 1 : 0);
            if (nbad == 0) return c.t;
        }
    }
}

std::vector<uint8_t> interior_mask(const Domain& d, double guard) {
    std::vector<std::pair<double, double>> bpts;
    for (int v : d.boundary_verts) bpts.push_back(embed_xy(d.x_of(v), d.y_of(v)));
    std::vector<uint8_t> mask(d.verts.size(), 0);
    for (size_t v = 0; v < d.verts.size(); ++v) {
        if (d.on_boundary[v]) continue;
        auto [px, py] = embed_xy(d.x_of((int)v), d.y_of((int)v));
        double dist2 = 1e300;
        for (auto [bx, by] : bpts)
            dist2 = std::min(dist2, (px - bx) * (px - bx) + (py - by) * (py - by));
        if (dist2 >= guard * guard) mask[v] = 1;
    }
    return mask;
}

} // namespace loz
