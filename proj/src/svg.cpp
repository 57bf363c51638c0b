#include "lozlab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace loz {

namespace {

struct Px {
    double x, y;
};

std::string color_of(int dir) {
    switch (dir) {
        case 0: return "#d95f52"; // crossing along +x: faces of the first axis plane
        case 1: return "#5a87c5"; // along +y
        default: return "#e8c86a"; // vertical edge: horizontal lozenges
    }
}

} // namespace

std::string render_tiling_svg(const Domain& d, const Heights& h) {
    if (!validate_heights(d, h)) throw std::runtime_error("render: invalid heights");
    const double scale = 36.0 * 1; // px per lattice step once multiplied by L
    double minx = 1e300, miny = 1e300, maxx = -1e300, maxy = -1e300;
    auto px = [&](Vert v) {
        auto [ex, ey] = embed_xy(double(v.i), double(v.j));
        return Px{ex * scale, ey * scale};
    };
    for (auto v : d.verts) {
        Px p = px(v);
        minx = std::min(minx, p.x);
        maxx = std::max(maxx, p.x);
        miny = std::min(miny, p.y);
        maxy = std::max(maxy, p.y);
    }
    std::ostringstream out;
    out << "<svg xmlns='http://www.w3.org/2000/svg' viewBox='" << minx - 8 << " " << miny - 8
        << " " << (maxx - minx + 16) << " " << (maxy - miny + 16) << "'>\n";

    // interior edge of the lozenge containing a face: exactly one of the
    // three face edges carries the "crossing" height pattern
    auto interior_dir = [&](const Face& f) {
        auto cs = f.corners();
        int i0 = d.index_of(cs[0]), i1 = d.index_of(cs[1]), i2 = d.index_of(cs[2]);
        int hits = 0, dir = -1;
        if (f.o == Orient::Up) {
            if (h[i1] == h[i0] - 1) { dir = 0; ++hits; } // x edge cs0-cs1
            if (h[i2] == h[i1] - 1) { dir = 1; ++hits; } // y edge cs1-cs2
            if (h[i2] == h[i0]) { dir = 2; ++hits; }     // diagonal cs0-cs2
        } else {
            if (h[i1] == h[i0] - 1) { dir = 1; ++hits; } // y edge cs0-cs1
            if (h[i2] == h[i1] - 1) { dir = 0; ++hits; } // x edge cs1-cs2
            if (h[i2] == h[i0]) { dir = 2; ++hits; }     // diagonal cs0-cs2
        }
        if (hits != 1) throw std::runtime_error("render: face without unique lozenge edge");
        return dir;
    };

    // draw each lozenge once, keyed by its Up face (every lozenge contains
    // exactly one Up and one Down triangle)
    for (const auto& f : d.faces) {
        if (f.o != Orient::Up) continue;
        int dir = interior_dir(f);
        // partner Down face across the interior edge; quad alternates
        // shared corner, far corner, shared corner, far corner
        Face g{};
        Vert q0{}, q1{}, q2{}, q3{};
        if (dir == 0) { // shared x edge (i,j)-(i+1,j)
            g = Face{f.i, f.j - 1, Orient::Down};
            q0 = {f.i, f.j}; q1 = {f.i + 1, f.j + 1}; q2 = {f.i + 1, f.j}; q3 = {f.i, f.j - 1};
        } else if (dir == 1) { // shared y edge (i+1,j)-(i+1,j+1)
            g = Face{f.i + 1, f.j, Orient::Down};
            q0 = {f.i + 1, f.j}; q1 = {f.i, f.j}; q2 = {f.i + 1, f.j + 1}; q3 = {f.i + 2, f.j + 1};
        } else { // shared diagonal (i,j)-(i+1,j+1)
            g = Face{f.i, f.j, Orient::Down};
            q0 = {f.i, f.j}; q1 = {f.i + 1, f.j}; q2 = {f.i + 1, f.j + 1}; q3 = {f.i, f.j + 1};
        }
        if (!std::binary_search(d.faces.begin(), d.faces.end(), g))
            throw std::runtime_error("render: lozenge partner face missing");
        Px a = px(q0), b = px(q1), c = px(q2), e = px(q3);
        out << "<polygon points='" << a.x << "," << a.y << " " << b.x << "," << b.y << " " << c.x
            << "," << c.y << " " << e.x << "," << e.y
            << "' fill='" << color_of(dir) << "' stroke='#333' stroke-width='0.8'/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string render_hexagon_shape_svg(double a, double b, double c, int samples) {
    std::ostringstream out;
    const double S = 420;
    out << "<svg xmlns='http://www.w3.org/2000/svg' viewBox='" << -S * 0.7 << " " << -S * 0.7
        << " " << S * 1.4 << " " << S * 1.4 << "'>\n";
    auto to_px = [&](double x, double y) {
        auto [ex, ey] = embed_xy(x, y);
        return Px{ex * S, ey * S};
    };
    // height range for the color map
    double hmin = -b, hmax = 0;
    Region hexr = hexagon_region(a, b, c);
    double step = 1.1 / samples;
    for (int i = 0; i < samples; ++i)
        for (int j = 0; j < samples; ++j) {
            double x = -0.55 + (i + 0.5) * step, y = -0.55 + (j + 0.5) * step;
            if (!hexr.inside(x, y)) continue;
            double v = (hexagon_height(a, b, c, x, y) - hmin) / (hmax - hmin);
            int g = (int)std::round(255 * std::clamp(v, 0.0, 1.0));
            Px p0 = to_px(x - step / 2, y - step / 2), p1 = to_px(x + step / 2, y - step / 2);
            Px p2 = to_px(x + step / 2, y + step / 2), p3 = to_px(x - step / 2, y + step / 2);
            out << "<polygon points='" << p0.x << "," << p0.y << " " << p1.x << "," << p1.y << " "
                << p2.x << "," << p2.y << " " << p3.x << "," << p3.y << "' fill='rgb(" << g << ","
                << g << "," << 255 - g / 2 << ")'/>\n";
        }
    // hexagon outline
    out << "<polygon points='";
    for (int k = 0; k < 6; ++k) {
        auto q = hexagon_corner(a, b, c, k);
        Px p = to_px(q[0], q[1]);
        out << p.x << "," << p.y << (k < 5 ? " " : "");
    }
    out << "' fill='none' stroke='#000' stroke-width='2'/>\n";
    // arctic ellipse as a polyline: radial roots of E = 0 from the center
    out << "<polyline points='";
    for (int k = 0; k <= 256; ++k) {
        double th = 2 * M_PI * k / 256;
        // direction in drawing coordinates mapped back to the oblique frame
        double dx = std::cos(th), dy = std::sin(th);
        double s3 = std::sqrt(3.0);
        // invert embed: ex = s3/2(y-x), ey = -(x+y)/2
        double xo = -dy - dx / s3, yo = -dy + dx / s3;
        double lo = 0, hi = 1.5;
        for (int it = 0; it < 60; ++it) {
            double mid = (lo + hi) / 2;
            (ellipse_E(a, b, c, mid * xo, mid * yo) > 0 ? lo : hi) = mid;
        }
        Px p = to_px(lo * xo, lo * yo);
        out << p.x << "," << p.y << (k < 256 ? " " : "");
    }
    out << "' fill='none' stroke='#fff' stroke-width='1.5'/>\n";
    out << "</svg>\n";
    return out.str();
}

} // namespace loz
