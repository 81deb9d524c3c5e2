#pragma once

#include "hypwidth/common.hpp"

namespace hypwidth::hyptrig {

// Boundary lengths of a hyperbolic pair of pants. All strictly positive and finite.
struct CuffLengths {
    double l1 = 0, l2 = 0, l3 = 0;

    CuffLengths() = default;
    CuffLengths(double a, double b, double c) : l1(a), l2(b), l3(c) { validate(); }
    void validate() const;
};

// acosh with a roundoff guard: arguments in [1 - 1e-12, 1) are clamped to 1,
// anything farther below 1 is a caller bug and throws.
double acosh_clamped(double x);

// Length of the figure-eight geodesic winding once around cuffs 1 and 2 of the
// pants with the given boundary lengths; cuff 3 is the one the curve separates
// from (the formula is symmetric in l1 <-> l2 only).
//   2*acosh( cosh(l3/2) + 2*cosh(l1/2)*cosh(l2/2) )
// Always strictly greater than 2*acosh(3).
double figure_eight_length(const CuffLengths& c);

// Minimum of figure_eight_length over the three choices of distinguished cuff.
double figure_eight_length_min(const CuffLengths& c);

// Sharp lower bound for the first width of a surface with curvature bounded
// above by k_inf < 0:  2*(-k_inf)^(-1/2)*acosh(3).
double width_lower_bound(double k_inf);

// Half-width of the embedded collar around a simple closed geodesic of length l:
// asinh(1/sinh(l/2)). Strictly decreasing in l.
double collar_halfwidth(double l);

// Cuff length below which the collar argument certifies systoles:
// the unique solution of 2*collar_halfwidth(a) = a, equal to 2*asinh(1).
double collar_certificate_threshold();

// Length of the separating geodesic of the Bolza octagon built from four
// side-to-side perpendicular arcs, via the trirectangle with acute angle pi/8:
// 8*acosh(1 + sqrt(2)/2).
double trirectangle_opposite_side();

// Upper bound for the shortest interior closed geodesic of a one-holed torus
// with geodesic boundary of length l_boundary: 2*acosh(cosh(l_boundary/6) + 1/2).
double parlier_interior_bound(double l_boundary);

// Systole of the Bolza surface, 2*acosh(1+sqrt(2)).
double bolza_systole();

// 2*acosh(3), the asymptotic width of the small-systole family.
double two_acosh_three();

}  // namespace hypwidth::hyptrig
