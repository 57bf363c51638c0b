#pragma once
#include "lozlab/rng.hpp"
#include "lozlab/tiling.hpp"

#include <optional>

namespace loz {

// Continuous-time single-site dynamics. Every updatable vertex carries two
// independent rate-1 clocks (one per direction); globally this is one
// exponential race at rate 2*N with a uniformly chosen (vertex, direction)
// pair. Draws are keyed by (seed, event index), and the event counter only
// advances when an event fires at or before the requested horizon, so
// trajectories do not depend on how the time axis is chunked into calls.

struct Censor {
    const Heights* floor_h = nullptr; // discard flips going below
    const Heights* ceil_h = nullptr;  // discard flips going above
};

struct Chain {
    const Domain* dom = nullptr;
    Heights h;
    double t = 0;        // current time
    double t_event = 0;  // time of the last fired event
    CounterRng rng;
    std::vector<int> sites; // updatable vertices (all six neighbors present, not pinned)
    uint64_t flips = 0;     // applied
    uint64_t censored = 0;  // valid but discarded by the censor
    uint64_t proposals = 0; // total fired events
};

Chain make_chain(const Domain& d, const BoundaryHeight& b, Heights init, uint64_t seed);

// run until time t_end (exclusive of any event beyond it)
void step_to(Chain& c, double t_end, const Censor* censor = nullptr);

// Grand coupling: all members share the event stream. The shared proposal
// preserves pointwise order between members; with check_order set the
// ordering of consecutive members is asserted after every event.
struct Coupling {
    const Domain* dom = nullptr;
    std::vector<Heights> members; // expected sorted: members[k] <= members[k+1] pointwise
    double t = 0, t_event = 0;
    CounterRng rng;
    std::vector<int> sites;
    uint64_t events = 0;
    uint64_t order_violations = 0;
    bool check_order = true;
};

Coupling make_coupling(const Domain& d, const BoundaryHeight& b, std::vector<Heights> members,
                       uint64_t seed);
void coupling_step_to(Coupling& c, double t_end);

// Time until the extremal pair of b coalesces; nullopt when the horizon is
// hit first.
std::optional<double> coalescence_time(const Domain& d, const BoundaryHeight& b, uint64_t seed,
                                       double horizon);

// sup of |h/L - phi| over the vertices selected by mask
double sup_distance(const Chain& c, const std::vector<double>& phi, const std::vector<uint8_t>& mask);

// First time sup_distance <= eps over the masked vertices; nullopt when the
// horizon is hit first. phi is the target height profile at the chain's
// vertices (same anchor as the boundary data, continuum units).
std::optional<double> hitting_time_to_shape(Chain& c, const std::vector<double>& phi,
                                            const std::vector<uint8_t>& mask, double eps,
                                            double horizon);

// mask of vertices at drawing-plane distance >= guard from the domain boundary
std::vector<uint8_t> interior_mask(const Domain& d, double guard);

} // namespace loz
