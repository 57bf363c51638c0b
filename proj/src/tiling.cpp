#include "lozlab/tiling.hpp"

#include <json.hpp>

namespace loz {

bool validate_heights(const Domain& d, const Heights& h) {
    if (h.size() != d.verts.size()) return false;
    for (const auto& e : d.edges) {
        int dlt = h[e.v] - h[e.u];
        if (dlt < -1 || dlt > 0) return false;
    }
    return true;
}

bool crosses_horizontal(const Domain& d, const Heights& h, const Edge& e) {
    if (e.dir != 2) throw std::runtime_error("crosses_horizontal: not a vertical edge");
    (void)d;
    return h[e.u] == h[e.v];
}

bool flippable(const Domain& d, const Heights& h, int v, int delta) {
    if (delta != 1 && delta != -1) throw std::runtime_error("flip: delta must be +-1");
    const auto& nb = d.nbr[v];
    for (int k = 0; k < 6; ++k)
        if (nb[k] < 0) return false;
    if (delta == 1) {
        for (int k = 0; k < 3; ++k)
            if (h[nb[k]] != h[v]) return false; // successors
        for (int k = 3; k < 6; ++k)
            if (h[nb[k]] != h[v] + 1) return false; // predecessors
    } else {
        for (int k = 0; k < 3; ++k)
            if (h[nb[k]] != h[v] - 1) return false;
        for (int k = 3; k < 6; ++k)
            if (h[nb[k]] != h[v]) return false;
    }
    return true;
}

void apply_flip(Heights& h, int v, int delta) { h[v] += delta; }

namespace {

// tighten lo/hi to the fixed point; false when some interval empties
bool tighten(const Domain& d, std::vector<int>& lo, std::vector<int>& hi) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& e : d.edges) {
            if (hi[e.u] < hi[e.v]) { hi[e.v] = hi[e.u]; changed = true; }
            if (hi[e.v] + 1 < hi[e.u]) { hi[e.u] = hi[e.v] + 1; changed = true; }
            if (lo[e.u] - 1 > lo[e.v]) { lo[e.v] = lo[e.u] - 1; changed = true; }
            if (lo[e.v] > lo[e.u]) { lo[e.u] = lo[e.v]; changed = true; }
        }
    }
    for (size_t k = 0; k < lo.size(); ++k)
        if (lo[k] > hi[k]) return false;
    return true;
}

void enumerate_rec(const Domain& d, std::vector<int> lo, std::vector<int> hi,
                   std::vector<Heights>& out, size_t cap) {
    int pick = -1;
    for (size_t k = 0; k < lo.size(); ++k)
        if (lo[k] != hi[k]) { pick = (int)k; break; }
    if (pick < 0) {
        if (out.size() >= cap) throw std::runtime_error("enumerate_tilings: cap exceeded");
        out.emplace_back(lo.begin(), lo.end());
        return;
    }
    for (int val = lo[pick]; val <= hi[pick]; ++val) {
        auto lo2 = lo;
        auto hi2 = hi;
        lo2[pick] = hi2[pick] = val;
        if (tighten(d, lo2, hi2)) enumerate_rec(d, std::move(lo2), std::move(hi2), out, cap);
    }
}

} // namespace

std::vector<Heights> enumerate_tilings(const Domain& d, const BoundaryHeight& b, size_t cap) {
    auto [lo, hi] = extremal_heights(d, b);
    std::vector<Heights> out;
    enumerate_rec(d, std::vector<int>(lo.begin(), lo.end()),
                  std::vector<int>(hi.begin(), hi.end()), out, cap);
    return out;
}

std::string tiling_to_json(const Domain& d, const BoundaryHeight& b, const Heights& h) {
    if (!validate_heights(d, h)) throw std::runtime_error("tiling_to_json: invalid heights");
    nlohmann::json j = nlohmann::json::parse(domain_to_json(d, b));
    auto& jh = j["heights"] = nlohmann::json::array();
    for (size_t k = 0; k < h.size(); ++k) jh.push_back({d.verts[k].i, d.verts[k].j, h[k]});
    return j.dump(2);
}

std::tuple<Domain, BoundaryHeight, Heights> tiling_from_json(const std::string& text) {
    auto [d, b] = domain_from_json(text);
    nlohmann::json j = nlohmann::json::parse(text);
    Heights h(d.verts.size(), 0);
    std::vector<char> seen(d.verts.size(), 0);
    for (const auto& je : j.at("heights")) {
        int idx = d.index_of(Vert{je.at(0), je.at(1)});
        if (idx < 0) throw std::runtime_error("tiling json: vertex not in domain");
        h[idx] = je.at(2);
        seen[idx] = 1;
    }
    for (char s : seen)
        if (!s) throw std::runtime_error("tiling json: missing vertex height");
    for (auto [v, hv] : b)
        if (h[v] != hv) throw std::runtime_error("tiling json: heights disagree with boundary");
    if (!validate_heights(d, h)) throw std::runtime_error("tiling json: invalid height function");
    return {std::move(d), std::move(b), std::move(h)};
}

} // namespace loz
