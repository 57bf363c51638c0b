#pragma once
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace loz {

// Vertex (i,j) of the triangular lattice sits at (i/L, j/L) in the oblique
// (x,y) frame of the 111 plane. The three lattice directions are
//   +x = (1,0), +y = (0,1), +d = (1,1),
// where +d points vertically DOWN in the drawing plane ("up" is -d).
// Along each of +x,+y,+d a height function changes by -1 or 0 (integer units,
// i.e. multiples of 1/L after rescaling); the change is -1 exactly when the
// step crosses the interior edge of a lozenge.
struct Vert {
    int i = 0, j = 0;
    friend bool operator<(Vert a, Vert b) { return a.i != b.i ? a.i < b.i : a.j < b.j; }
    friend bool operator==(Vert a, Vert b) { return a.i == b.i && a.j == b.j; }
};

enum class Orient : uint8_t { Up, Down };

// Face (i,j,Up)   = triangle {(i,j),(i+1,j),(i+1,j+1)}
// Face (i,j,Down) = triangle {(i,j),(i,j+1),(i+1,j+1)}
struct Face {
    int i = 0, j = 0;
    Orient o = Orient::Up;
    friend bool operator<(const Face& a, const Face& b) {
        if (a.i != b.i) return a.i < b.i;
        if (a.j != b.j) return a.j < b.j;
        return a.o < b.o;
    }
    friend bool operator==(const Face& a, const Face& b) {
        return a.i == b.i && a.j == b.j && a.o == b.o;
    }
    std::array<Vert, 3> corners() const {
        if (o == Orient::Up) return {Vert{i, j}, Vert{i + 1, j}, Vert{i + 1, j + 1}};
        return {Vert{i, j}, Vert{i, j + 1}, Vert{i + 1, j + 1}};
    }
};

// Neighbor slots, fixed order: 0:+x 1:+y 2:+d 3:-x 4:-y 5:-d.
// Slots 0..2 are the "successors" (height drops by 0 or 1 going there),
// slots 3..5 the "predecessors".
inline constexpr std::array<std::array<int, 2>, 6> kNbrOffset = {
    {{1, 0}, {0, 1}, {1, 1}, {-1, 0}, {0, -1}, {-1, -1}}};

// Directed lattice edge u -> u + e_dir, dir in {0,1,2}. dir 2 is the
// "vertical" edge of the drawing (shared edge of a horizontal lozenge when
// the height does not change across it).
struct Edge {
    int u = -1, v = -1; // vertex indices, v = u + e_dir
    int dir = 0;
};

struct Domain {
    int L = 1;
    std::vector<Face> faces;                  // sorted, unique
    std::vector<Vert> verts;                  // sorted
    std::map<Vert, int> vindex;
    std::vector<std::array<int, 6>> nbr;      // -1 where absent
    std::vector<Edge> edges;                  // unique face edges
    std::vector<uint8_t> on_boundary;         // vertex lies on an edge of face-multiplicity 1
    std::vector<int> boundary_verts;          // indices, sorted
    std::vector<int> interior_verts;          // indices, sorted

    int index_of(Vert v) const {
        auto it = vindex.find(v);
        return it == vindex.end() ? -1 : it->second;
    }
    double x_of(int idx) const { return double(verts[idx].i) / L; }
    double y_of(int idx) const { return double(verts[idx].j) / L; }
};

// Throws std::runtime_error if the face set is empty, not edge-connected or
// not simply connected (Euler characteristic V - E + F != 1).
Domain build_domain(int L, std::vector<Face> faces);

// Pinned heights, vertex index -> integer height (units of 1/L).
using BoundaryHeight = std::map<int, int>;
using Heights = std::vector<int>;

// Minimal and maximal height extensions of the pinned values. Throws
// std::runtime_error when no monotone extension exists.
std::pair<Heights, Heights> extremal_heights(const Domain& d, const BoundaryHeight& b);

// ---- continuum regions & discretization ----

struct Region {
    std::function<bool(double, double)> inside; // closed region test
    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
};
Region disk_region(double cx, double cy, double r);
// hexagon with side lengths a (parallel to y), b (vertical sides), c
// (parallel to x), centered at the origin; a+b+c arbitrary
Region hexagon_region(double a, double b, double c);

// Faces whose three corners lie in the region. Throws if empty or if the
// kept face set fails the simple-connectivity check.
Domain discretize_domain(const Region& r, int L);

// Boundary heights h(v) = floor(L * phi(x_v, y_v)) on the domain boundary.
// Throws if phi violates the monotone-surface gradient bounds (detected via
// extremal_heights infeasibility).
BoundaryHeight sample_boundary(const Domain& d, const std::function<double(double, double)>& phi);

// ---- hexagon H_ABC ----

// Corner walk starts at the a/c corner V0 and runs c-side(+x), b-side(+d),
// a-side(+y), c-side(-x), b-side(-d), a-side(-y). Boundary heights: 0 on the
// sides adjacent to V0, dropping by 1 per step on the first b-side, constant
// -B opposite, rising back on the second b-side. Anchor h(V0) = 0.
struct HexDomain {
    Domain dom;
    BoundaryHeight boundary;
    int A, B, C;
    Vert v0;              // lattice coords of corner V0
    double cx, cy;        // lattice coords of the hexagon center (may be half-integral)
    std::array<Vert, 6> corner; // V0..V5

    // continuum coords of a vertex, center at origin, units a+b+c scaled by L
    double x_of(int idx) const { return (dom.verts[idx].i - cx) / dom.L; }
    double y_of(int idx) const { return (dom.verts[idx].j - cy) / dom.L; }
};
// Domain mesh is L = A+B+C, so side lengths are a=A/L etc. with a+b+c = 1.
HexDomain hexagon_domain(int A, int B, int C);

// Continuum octant boundary height over the hexagon with a+b+c=1, center at
// the origin, anchored to 0 at corner V0: max(0, -(x-x0), -(y-y0)) - b with
// (x0,y0) = ((b-c)/2, (b-a)/2).
double octant_height(double a, double b, double c, double x, double y);

// ---- plane coordinate frames ----
// Rotated orthogonal-ish frames used by the hexagon closed forms.
struct UV {
    double u, v;
};
UV uv1_from_xy(double x, double y);   // u = -x + y/2,  v = -sqrt(3)/2 y
UV uv2_from_xy(double x, double y);   // u = y - x/2,   v = -sqrt(3)/2 x
UV uv3_from_xy(double x, double y);   // u = (x+y)/2,   v = sqrt(3)/2 (y-x)
std::pair<double, double> xy_from_uv1(UV p);
std::pair<double, double> xy_from_uv2(UV p);
std::pair<double, double> xy_from_uv3(UV p);

// Orthonormal drawing coordinates of an (x,y) point (for rendering).
std::pair<double, double> embed_xy(double x, double y);

// ---- JSON serialization ----
std::string domain_to_json(const Domain& d, const BoundaryHeight& b);
std::pair<Domain, BoundaryHeight> domain_from_json(const std::string& text);

} // namespace loz
