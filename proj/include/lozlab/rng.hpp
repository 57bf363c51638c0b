#pragma once
#include <cstdint>
#include <cmath>

namespace loz {

// Counter-based RNG: the k-th draw of stream (seed) is a pure function of
// (seed, k, lane). Replaying an event log never perturbs later randomness.
struct CounterRng {
    uint64_t seed = 0;
    uint64_t counter = 0;

    static uint64_t mix(uint64_t a, uint64_t b, uint64_t c) {
        uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1) + 0x632be59bd9b4e019ULL * (c + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in (0,1), lane selects independent draws within one event
    double uniform(uint64_t lane) const {
        uint64_t u = mix(seed, counter, lane);
        return ((u >> 11) + 0.5) * (1.0 / 9007199254740992.0);
    }
    double exponential(uint64_t lane) const { return -std::log(uniform(lane)); }
    uint64_t pick(uint64_t lane, uint64_t n) const { return mix(seed, counter, lane) % n; }

    void advance() { ++counter; }
};

} // namespace loz
