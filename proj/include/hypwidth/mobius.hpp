#pragma once

#include <array>
#include <complex>

#include "hypwidth/common.hpp"

namespace hypwidth {

using cplx = std::complex<double>;

// Orientation-preserving isometry of the hyperbolic plane as a real 2x2 matrix
// of determinant 1, modulo sign. Acts on the upper half-plane by Mobius
// transformation; the action on the Poincare disk is the Cayley conjugate.
struct MobiusIsometry {
    double a = 1, b = 0, c = 0, d = 1;

    MobiusIsometry() = default;
    MobiusIsometry(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_) {}

    static MobiusIsometry identity() { return {}; }
    // Translation by s along the imaginary axis (i -> i*e^s).
    static MobiusIsometry axis_translation(double s);
    // Rotation by angle theta about i.
    static MobiusIsometry rotation_about_i(double theta);

    MobiusIsometry operator*(const MobiusIsometry& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    MobiusIsometry inverse() const { return {d, -b, -c, a}; }

    double det() const { return a * d - b * c; }
    double trace() const { return a + d; }
    bool is_hyperbolic(double tol = 1e-9) const { return std::abs(trace()) > 2.0 + tol; }
    // 2*acosh(|tr|/2) for hyperbolic elements; 0 otherwise.
    double translation_length() const;

    // Rescale so det == 1 exactly (fights drift in long products).
    MobiusIsometry normalized() const;
    // Flip sign so the lexicographically first entry of largest |.| is positive.
    MobiusIsometry sign_canonical() const;

    cplx apply_uhp(cplx z) const;
    cplx apply_disk(cplx w) const;

    // SU(1,1) coefficients of the disk action w -> (alpha*w + beta)/(conj(beta)*w + conj(alpha)).
    void disk_coefficients(cplx& alpha, cplx& beta) const;

    // Hyperbolic distance from the disk origin to its image.
    double origin_displacement() const;

    // Frobenius distance to +/-other (whichever sign is closer).
    double dist_proj(const MobiusIsometry& o) const;

    // Fixed points on the boundary of the upper half-plane for a hyperbolic
    // element: (attracting, repelling). Infinity is encoded as (inf, 0) slope
    // form via the `at_infinity` flags.
    struct FixedPoints {
        double attracting = 0, repelling = 0;
        bool attracting_at_inf = false, repelling_at_inf = false;
    };
    FixedPoints fixed_points() const;

    // N with N*this*N^{-1} = axis_translation(translation_length()) exactly
    // (attracting fixed point to infinity). Requires hyperbolic.
    MobiusIsometry axis_normalizer() const;

    // Distance from the disk origin to the axis of a hyperbolic element,
    // via cosh(d(0, M0)/2) = cosh(l/2)*cosh(dist(0, axis)).
    double axis_distance_from_origin() const;
};

// Anti-holomorphic reflection across the geodesic F*(imaginary axis), where F
// is the frame positioning the line. Products of two reflections are Mobius.
struct GeodesicReflection {
    // Real matrix R with action z -> Mobius(R, conj(z)) on the upper half-plane.
    double a = -1, b = 0, c = 0, d = 1;

    static GeodesicReflection across_frame(const MobiusIsometry& frame);
    cplx apply_uhp(cplx z) const;
};

// Product of two reflections (an honest isometry).
MobiusIsometry compose(const GeodesicReflection& r1, const GeodesicReflection& r2);

// --- point-model helpers -------------------------------------------------

cplx uhp_to_disk(cplx z);
cplx disk_to_uhp(cplx w);

double dist_uhp(cplx z1, cplx z2);
double dist_disk(cplx w1, cplx w2);

// Point at parameter t along the geodesic from u to v (t in R; t=1 gives v).
cplx geodesic_point_disk(cplx u, cplx v, double t);
inline cplx midpoint_disk(cplx u, cplx v) { return geodesic_point_disk(u, v, 0.5); }

// Signed angle at u from direction (u->v) to direction (u->w), in (-pi, pi].
double angle_at_disk(cplx u, cplx v, cplx w);

}  // namespace hypwidth
