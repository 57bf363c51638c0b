#include "lozlab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>

#include <json.hpp>

namespace loz {

namespace {

struct UEdge {
    Vert a, b; // a < b
    int dir;
    friend bool operator<(const UEdge& x, const UEdge& y) {
        if (!(x.a == y.a)) return x.a < y.a;
        return x.b < y.b;
    }
};

UEdge uedge(Vert u, int dir) {
    Vert v{u.i + kNbrOffset[dir][0], u.j + kNbrOffset[dir][1]};
    if (v < u) std::swap(u, v);
    return UEdge{u, v, dir};
}

// the three edges of a face as (origin vertex, direction)
std::array<std::pair<Vert, int>, 3> face_edges(const Face& f) {
    if (f.o == Orient::Up)
        return {std::make_pair(Vert{f.i, f.j}, 0), {Vert{f.i + 1, f.j}, 1}, {Vert{f.i, f.j}, 2}};
    return {std::make_pair(Vert{f.i, f.j + 1}, 0), {Vert{f.i, f.j}, 1}, {Vert{f.i, f.j}, 2}};
}

} // namespace

Domain build_domain(int L, std::vector<Face> faces) {
    if (faces.empty()) throw std::runtime_error("domain: no faces");
    std::sort(faces.begin(), faces.end());
    faces.erase(std::unique(faces.begin(), faces.end()), faces.end());

    Domain d;
    d.L = L;
    d.faces = std::move(faces);

    // face edge multiplicities
    std::map<UEdge, int> emult;
    for (const auto& f : d.faces)
        for (auto [u, dir] : face_edges(f)) emult[uedge(u, dir)]++;

    std::set<Vert> vset;
    for (const auto& f : d.faces)
        for (auto v : f.corners()) vset.insert(v);
    d.verts.assign(vset.begin(), vset.end());
    for (int k = 0; k < (int)d.verts.size(); ++k) d.vindex[d.verts[k]] = k;

    // neighbors restricted to face edges (heights only interact along them)
    d.nbr.assign(d.verts.size(), {-1, -1, -1, -1, -1, -1});
    for (const auto& [e, m] : emult) {
        int ia = d.vindex.at(e.a), ib = d.vindex.at(e.b);
        d.nbr[ia][e.dir] = ib;     // e.a + dir = e.b by construction
        d.nbr[ib][e.dir + 3] = ia;
        d.edges.push_back(Edge{ia, ib, e.dir});
    }

    d.on_boundary.assign(d.verts.size(), 0);
    for (const auto& [e, m] : emult) {
        if (m == 1) {
            d.on_boundary[d.vindex.at(e.a)] = 1;
            d.on_boundary[d.vindex.at(e.b)] = 1;
        } else if (m != 2) {
            throw std::runtime_error("domain: edge shared by >2 faces");
        }
    }
    for (int k = 0; k < (int)d.verts.size(); ++k)
        (d.on_boundary[k] ? d.boundary_verts : d.interior_verts).push_back(k);

    // connectivity of the face adjacency graph
    std::map<Face, int> findex;
    for (int k = 0; k < (int)d.faces.size(); ++k) findex[d.faces[k]] = k;
    std::map<UEdge, std::vector<int>> by_edge;
    for (int k = 0; k < (int)d.faces.size(); ++k)
        for (auto [u, dir] : face_edges(d.faces[k])) by_edge[uedge(u, dir)].push_back(k);
    std::vector<char> seen(d.faces.size(), 0);
    std::queue<int> bfs;
    bfs.push(0);
    seen[0] = 1;
    size_t reached = 1;
    while (!bfs.empty()) {
        int f = bfs.front();
        bfs.pop();
        for (auto [u, dir] : face_edges(d.faces[f]))
            for (int g : by_edge[uedge(u, dir)])
                if (!seen[g]) {
                    seen[g] = 1;
                    ++reached;
                    bfs.push(g);
                }
    }
    if (reached != d.faces.size()) throw std::runtime_error("domain: faces not connected");

    long V = (long)d.verts.size(), E = (long)d.edges.size(), F = (long)d.faces.size();
    if (V - E + F != 1) throw std::runtime_error("domain: not simply connected (V-E+F != 1)");
    return d;
}

std::pair<Heights, Heights> extremal_heights(const Domain& d, const BoundaryHeight& b) {
    if (b.empty()) throw std::runtime_error("extremal_heights: no pinned values");
    const int n = (int)d.verts.size();
    const long INF = 1L << 40;
    std::vector<long> up(n, INF), lo(n, -INF);
    for (auto [v, h] : b) {
        up[v] = h;
        lo[v] = h;
    }
    // constraints per directed edge u -> v = u + e: h(v) <= h(u), h(u) <= h(v) + 1
    bool changed = true;
    int rounds = 0;
    while (changed) {
        if (++rounds > n + 2) throw std::runtime_error("extremal_heights: relaxation did not settle");
        changed = false;
        for (const auto& e : d.edges) {
            if (up[e.u] < up[e.v]) { up[e.v] = up[e.u]; changed = true; }
            if (up[e.v] + 1 < up[e.u]) { up[e.u] = up[e.v] + 1; changed = true; }
            if (lo[e.u] - 1 > lo[e.v]) { lo[e.v] = lo[e.u] - 1; changed = true; }
            if (lo[e.v] > lo[e.u]) { lo[e.u] = lo[e.v]; changed = true; }
        }
    }
    for (int k = 0; k < n; ++k)
        if (up[k] >= INF || lo[k] <= -INF)
            throw std::runtime_error("extremal_heights: vertex unreachable from pinned set");
    for (auto [v, h] : b)
        if (up[v] != h || lo[v] != h)
            throw std::runtime_error("extremal_heights: pinned values inconsistent");
    auto check = [&](const std::vector<long>& h) {
        for (const auto& e : d.edges) {
            long dlt = h[e.v] - h[e.u];
            if (dlt < -1 || dlt > 0) throw std::runtime_error("extremal_heights: infeasible boundary data");
        }
    };
    check(up);
    check(lo);
    for (int k = 0; k < n; ++k)
        if (lo[k] > up[k]) throw std::runtime_error("extremal_heights: empty height interval");
    Heights hmin(lo.begin(), lo.end()), hmax(up.begin(), up.end());
    return {hmin, hmax};
}

Region disk_region(double cx, double cy, double r) {
    Region reg;
    reg.inside = [=](double x, double y) {
        // Euclidean metric of the drawing plane, not the oblique frame
        auto [px, py] = embed_xy(x - cx, y - cy);
        return px * px + py * py <= r * r + 1e-12;
    };
    // oblique bbox: |x|,|y| <= 2r around center is generous enough
    reg.xmin = cx - 2 * r; reg.xmax = cx + 2 * r;
    reg.ymin = cy - 2 * r; reg.ymax = cy + 2 * r;
    return reg;
}

Region hexagon_region(double a, double b, double c) {
    Region reg;
    double hx = (b + c) / 2, hy = (a + b) / 2, hd = (a + c) / 2;
    reg.inside = [=](double x, double y) {
        double t = 1e-12;
        return x >= -hx - t && x <= hx + t && y >= -hy - t && y <= hy + t &&
               x - y >= -hd - t && x - y <= hd + t;
    };
    reg.xmin = -hx; reg.xmax = hx; reg.ymin = -hy; reg.ymax = hy;
    return reg;
}

Domain discretize_domain(const Region& r, int L) {
    std::vector<Face> faces;
    int i0 = (int)std::floor(r.xmin * L) - 2, i1 = (int)std::ceil(r.xmax * L) + 2;
    int j0 = (int)std::floor(r.ymin * L) - 2, j1 = (int)std::ceil(r.ymax * L) + 2;
    auto in = [&](Vert v) { return r.inside(double(v.i) / L, double(v.j) / L); };
    for (int i = i0; i <= i1; ++i)
        for (int j = j0; j <= j1; ++j)
            for (Orient o : {Orient::Up, Orient::Down}) {
                Face f{i, j, o};
                auto cs = f.corners();
                if (in(cs[0]) && in(cs[1]) && in(cs[2])) faces.push_back(f);
            }
    return build_domain(L, std::move(faces));
}

BoundaryHeight sample_boundary(const Domain& d, const std::function<double(double, double)>& phi) {
    BoundaryHeight b;
    for (int v : d.boundary_verts)
        b[v] = (int)std::floor(d.L * phi(d.x_of(v), d.y_of(v)) + 1e-9);
    extremal_heights(d, b); // throws when the sampler is not a valid surface
    return b;
}

HexDomain hexagon_domain(int A, int B, int C) {
    if (A <= 0 || B <= 0 || C <= 0) throw std::runtime_error("hexagon: sides must be positive");
    HexDomain h;
    h.A = A; h.B = B; h.C = C;
    h.v0 = Vert{-(B + C) / 2, -(A + B) / 2}; // integer division; center-ish placement
    h.cx = h.v0.i + (B + C) / 2.0;
    h.cy = h.v0.j + (A + B) / 2.0;

    // corners of the walk c,b,a,c,b,a
    h.corner[0] = h.v0;
    h.corner[1] = Vert{h.v0.i + C, h.v0.j};
    h.corner[2] = Vert{h.v0.i + C + B, h.v0.j + B};
    h.corner[3] = Vert{h.v0.i + C + B, h.v0.j + B + A};
    h.corner[4] = Vert{h.v0.i + B, h.v0.j + B + A};
    h.corner[5] = Vert{h.v0.i, h.v0.j + A};

    std::vector<Face> faces;
    // hexagon as a continuum region at mesh L = A+B+C, shifted to v0 frame
    int L = A + B + C;
    Region reg = hexagon_region(double(A) / L, double(B) / L, double(C) / L);
    for (int i = -1; i <= B + C + 1; ++i)
        for (int j = -1; j <= A + B + 1; ++j)
            for (Orient o : {Orient::Up, Orient::Down}) {
                Face f{h.v0.i + i, h.v0.j + j, o};
                auto cs = f.corners();
                bool ok = true;
                for (auto v : cs)
                    ok = ok && reg.inside((v.i - h.cx) / double(L), (v.j - h.cy) / double(L));
                if (ok) faces.push_back(f);
            }
    h.dom = build_domain(L, std::move(faces));

    // boundary walk heights
    auto step = [&](Vert v, int dir) { return Vert{v.i + kNbrOffset[dir][0], v.j + kNbrOffset[dir][1]}; };
    Vert v = h.v0;
    int height = 0;
    auto pin = [&](Vert w, int hh) {
        int idx = h.dom.index_of(w);
        if (idx < 0) throw std::runtime_error("hexagon: boundary walk left the domain");
        h.boundary[idx] = hh;
    };
    pin(v, height);
    struct Leg { int dir, len, dh; };
    std::array<Leg, 6> walk = {{{0, C, 0}, {2, B, -1}, {1, A, 0}, {3, C, 0}, {5, B, 1}, {4, A, 0}}};
    for (auto leg : walk)
        for (int s = 0; s < leg.len; ++s) {
            v = step(v, leg.dir);
            height += leg.dh;
            pin(v, height);
        }
    if (!(v == h.v0) || height != 0) throw std::runtime_error("hexagon: walk did not close");
    // sanity: pinned exactly the topological boundary
    if ((int)h.boundary.size() != (int)h.dom.boundary_verts.size())
        throw std::runtime_error("hexagon: boundary mismatch");
    extremal_heights(h.dom, h.boundary);
    return h;
}

double octant_height(double a, double b, double c, double x, double y) {
    double x0 = (b - c) / 2, y0 = (b - a) / 2;
    return std::max({0.0, -(x - x0), -(y - y0)}) - b;
}

UV uv1_from_xy(double x, double y) { return {-x + y / 2, -std::sqrt(3.0) / 2 * y}; }
UV uv2_from_xy(double x, double y) { return {y - x / 2, -std::sqrt(3.0) / 2 * x}; }
UV uv3_from_xy(double x, double y) { return {(x + y) / 2, std::sqrt(3.0) / 2 * (y - x)}; }

std::pair<double, double> xy_from_uv1(UV p) {
    double y = -2 * p.v / std::sqrt(3.0);
    return {-p.u + y / 2, y};
}
std::pair<double, double> xy_from_uv2(UV p) {
    double x = -2 * p.v / std::sqrt(3.0);
    return {x, p.u + x / 2};
}
std::pair<double, double> xy_from_uv3(UV p) {
    double diff = 2 * p.v / std::sqrt(3.0); // y - x
    return {p.u - diff / 2, p.u + diff / 2};
}

std::pair<double, double> embed_xy(double x, double y) {
    double s = std::sqrt(3.0) / 2;
    return {-s * x + s * y, -0.5 * x - 0.5 * y};
}

std::string domain_to_json(const Domain& d, const BoundaryHeight& b) {
    nlohmann::json j;
    j["L"] = d.L;
    auto& jf = j["faces"] = nlohmann::json::array();
    for (const auto& f : d.faces)
        jf.push_back({f.i, f.j, f.o == Orient::Up ? "up" : "down"});
    auto& jb = j["boundary"] = nlohmann::json::array();
    for (auto [v, h] : b) jb.push_back({d.verts[v].i, d.verts[v].j, h});
    return j.dump(2);
}

std::pair<Domain, BoundaryHeight> domain_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    std::vector<Face> faces;
    for (const auto& jf : j.at("faces")) {
        std::string o = jf.at(2);
        if (o != "up" && o != "down") throw std::runtime_error("domain json: bad orientation");
        faces.push_back(Face{jf.at(0), jf.at(1), o == "up" ? Orient::Up : Orient::Down});
    }
    Domain d = build_domain(j.at("L"), std::move(faces));
    BoundaryHeight b;
    for (const auto& jb : j.at("boundary")) {
        int idx = d.index_of(Vert{jb.at(0), jb.at(1)});
        if (idx < 0) throw std::runtime_error("domain json: boundary vertex not in domain");
        b[idx] = jb.at(2);
    }
    return {std::move(d), std::move(b)};
}

} // namespace loz
