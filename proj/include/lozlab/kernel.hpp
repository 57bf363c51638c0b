#pragma once
#include "lozlab/lattice.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <optional>

namespace loz {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Exact one-edge statistics for the uniform hexagon. Internally the hexagon
// A,B,C is rescaled by L = A+C (so a + c = 1); a vertical edge is labeled by
// the integer coordinates (X,Y) of its midpoint after translating the origin
// to the hexagon frame. For an edge with lower endpoint at (p,q) in corner-V0
// coordinates: X = p - (A+B+C), Y = q - (2A+B+C).

struct EdgeLabel {
    long X, Y;
};

// label of a vertical domain edge (dir == 2; the lower endpoint is e.v)
EdgeLabel edge_label(const HexDomain& hex, const Edge& e);

// probability that the upward step across the labeled edge keeps the height
// (i.e. the edge is the interior edge of a horizontal lozenge), as an exact
// rational; evaluated as a finite residue sum of the double contour integral
BigRat exact_edge_prob(int A, int B, int C, EdgeLabel lab);

// sum of (1 - pi(edge)) over the chain of vertical edges from u up to v
// (both on the same diagonal, v above u): the mean height gain in integer
// units; divide by the caller's mesh to get continuum heights
BigRat mean_height_gain(const HexDomain& hex, Vert u, Vert v);

// ---- asymptotics (kernel-frame normalization: a = A/L, b = B/L, c = 1-a) ----

std::complex<double> s_action(double a, double b, double x, double y, std::complex<double> w);
std::complex<double> s_prime(double a, double b, double x, double y, std::complex<double> w);

// root of the quadratic critical point equation with positive imaginary
// part; nullopt when both roots are real (frozen point)
std::optional<std::complex<double>> critical_point(double a, double b, double x, double y);

// limiting edge probability (1/pi)(Arg(w_c+x) - Arg(w_c+y+1)); requires a
// liquid point
double pi_infinity(double a, double b, double x, double y);

// kernel-frame continuum coordinates of the labeled edge midpoint
std::pair<double, double> label_coords(int A, int B, int C, EdgeLabel lab);

// kernel-frame coordinates of a point given in the unit-hexagon frame
// (center origin, a+b+c = 1); drops the half-step lattice offset
std::pair<double, double> kernel_frame_from_unit(int A, int B, int C, double xs, double ys);

} // namespace loz
