#include "hypwidth/mobius.hpp"

#include <algorithm>
#include <cmath>

namespace hypwidth {

MobiusIsometry MobiusIsometry::axis_translation(double s) {
    const double e = std::exp(s / 2);
    return {e, 0, 0, 1.0 / e};
}

MobiusIsometry MobiusIsometry::rotation_about_i(double theta) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    return {c, s, -s, c};
}

double MobiusIsometry::translation_length() const {
    const double t = std::abs(trace()) / (2.0 * std::sqrt(det()));
    if (t <= 1.0) return 0.0;
    return 2.0 * std::acosh(t);
}

MobiusIsometry MobiusIsometry::normalized() const {
    const double dt = det();
    if (dt <= 0) throw DomainError("isometry matrix has non-positive determinant");
    const double s = 1.0 / std::sqrt(dt);
    return {a * s, b * s, c * s, d * s};
}

MobiusIsometry MobiusIsometry::sign_canonical() const {
    const std::array<double, 4> e{a, b, c, d};
    std::size_t k = 0;
    for (std::size_t i = 1; i < 4; ++i)
        if (std::abs(e[i]) > std::abs(e[k])) k = i;
    if (e[k] < 0) return {-a, -b, -c, -d};
    return *this;
}

cplx MobiusIsometry::apply_uhp(cplx z) const { return (a * z + b) / (c * z + d); }

void MobiusIsometry::disk_coefficients(cplx& alpha, cplx& beta) const {
    alpha = cplx((a + d) / 2, (b - c) / 2);
    beta = cplx((a - d) / 2, -(b + c) / 2);
}

cplx MobiusIsometry::apply_disk(cplx w) const {
    cplx al, be;
    disk_coefficients(al, be);
    return (al * w + be) / (std::conj(be) * w + std::conj(al));
}

double MobiusIsometry::origin_displacement() const {
    const double s = (a + d) * (a + d) + (b - c) * (b - c);
    const double ch = std::max(1.0, s / 2.0 - 1.0);
    return std::acosh(ch);
}

double MobiusIsometry::dist_proj(const MobiusIsometry& o) const {
    auto frob = [](double x0, double x1, double x2, double x3) {
        return std::sqrt(x0 * x0 + x1 * x1 + x2 * x2 + x3 * x3);
    };
    const double dp = frob(a - o.a, b - o.b, c - o.c, d - o.d);
    const double dm = frob(a + o.a, b + o.b, c + o.c, d + o.d);
    return std::min(dp, dm);
}

MobiusIsometry::FixedPoints MobiusIsometry::fixed_points() const {
    if (!is_hyperbolic(0.0)) throw DomainError("fixed_points: element is not hyperbolic");
    FixedPoints fp;
    const double tr = trace();
    const double disc = std::sqrt(tr * tr - 4.0 * det());
    if (std::abs(c) < 1e-14 * (std::abs(a) + std::abs(d))) {
        // One fixed point at infinity; the other solves (a-d)z + b = 0.
        const bool inf_attracting = std::abs(a) > std::abs(d);
        const double finite = (std::abs(a - d) > 0) ? -b / (a - d) : 0.0;
        if (inf_attracting) {
            fp.attracting_at_inf = true;
            fp.repelling = finite;
        } else {
            fp.repelling_at_inf = true;
            fp.attracting = finite;
        }
        return fp;
    }
    // Roots of c z^2 + (d-a) z - b, via the cancellation-free formula.
    const double B = d - a, C = -b;
    const double s = (B >= 0) ? 1.0 : -1.0;
    const double qq = -(B + s * disc) / 2;
    const double z1 = qq / c;
    const double z2 = (std::abs(qq) > 0) ? C / qq : (-B - qq) / c;
    // Attracting fixed point has multiplier |c z + d| > 1.
    if (std::abs(c * z1 + d) > std::abs(c * z2 + d)) {
        fp.attracting = z1;
        fp.repelling = z2;
    } else {
        fp.attracting = z2;
        fp.repelling = z1;
    }
    return fp;
}

MobiusIsometry MobiusIsometry::axis_normalizer() const {
    const FixedPoints fp = fixed_points();
    MobiusIsometry V;  // columns: attracting eigenvector, repelling eigenvector
    if (fp.attracting_at_inf) {
        V = {1, fp.repelling, 0, 1};
    } else if (fp.repelling_at_inf) {
        V = {fp.attracting, 1, 1, 0};
    } else {
        V = {fp.attracting, fp.repelling, 1, 1};
    }
    // Balance the eigenvector columns (diagonal right-scaling commutes with the
    // conjugated translation, so this only improves conditioning).
    {
        const double n1 = std::hypot(V.a, V.c), n2 = std::hypot(V.b, V.d);
        V = {V.a / n1, V.b / n2, V.c / n1, V.d / n2};
    }
    if (V.det() < 0) V = {V.a, -V.b, V.c, -V.d};
    MobiusIsometry N = V.normalized().inverse();
    // Sign of the conjugated trace does not matter; direction does. Verify the
    // attracting point went to infinity (upper-left multiplier dominates).
    const MobiusIsometry conj = N * (*this) * N.inverse();
    if (std::abs(conj.a) < std::abs(conj.d)) {
        // Swap 0 <-> infinity.
        N = MobiusIsometry{0, 1, -1, 0} * N;
    }
    return N.normalized();
}

double MobiusIsometry::axis_distance_from_origin() const {
    const double l = translation_length();
    if (l <= 0) return 0.0;
    const double ratio = std::cosh(origin_displacement() / 2) / std::cosh(l / 2);
    return std::acosh(std::max(1.0, ratio));
}

GeodesicReflection GeodesicReflection::across_frame(const MobiusIsometry& f) {
    // f * diag(-1, 1) * f^{-1}, acting on conj(z).
    const MobiusIsometry m = f * MobiusIsometry{-1, 0, 0, 1} * f.inverse();
    GeodesicReflection r;
    r.a = m.a;
    r.b = m.b;
    r.c = m.c;
    r.d = m.d;
    return r;
}

cplx GeodesicReflection::apply_uhp(cplx z) const {
    const cplx zc = std::conj(z);
    return (a * zc + b) / (c * zc + d);
}

MobiusIsometry compose(const GeodesicReflection& r1, const GeodesicReflection& r2) {
    // (M1 o conj) o (M2 o conj) = M1 * M2 as matrices (entries are real).
    MobiusIsometry m{r1.a * r2.a + r1.b * r2.c, r1.a * r2.b + r1.b * r2.d,
                     r1.c * r2.a + r1.d * r2.c, r1.c * r2.b + r1.d * r2.d};
    return m.normalized();
}

cplx uhp_to_disk(cplx z) { return (z - cplx(0, 1)) / (z + cplx(0, 1)); }

cplx disk_to_uhp(cplx w) { return cplx(0, 1) * (cplx(1, 0) + w) / (cplx(1, 0) - w); }

double dist_uhp(cplx z1, cplx z2) {
    const double n = std::norm(z1 - z2);
    return std::acosh(1.0 + n / (2.0 * z1.imag() * z2.imag()));
}

double dist_disk(cplx w1, cplx w2) {
    const double n = std::norm(w1 - w2);
    const double den = (1.0 - std::norm(w1)) * (1.0 - std::norm(w2));
    return std::acosh(1.0 + 2.0 * n / den);
}

cplx geodesic_point_disk(cplx u, cplx v, double t) {
    // Translate u to the origin, walk the straight ray, translate back.
    const cplx w = (v - u) / (cplx(1, 0) - std::conj(u) * v);
    const double r = std::abs(w);
    if (r < 1e-300) return u;
    const double dist = 2.0 * std::atanh(std::min(r, 1.0 - 1e-16));
    const double rt = std::tanh(t * dist / 2.0);
    const cplx p = rt * (w / r);
    return (p + u) / (cplx(1, 0) + std::conj(u) * p);
}

double angle_at_disk(cplx u, cplx v, cplx w) {
    const cplx dv = (v - u) / (cplx(1, 0) - std::conj(u) * v);
    const cplx dw = (w - u) / (cplx(1, 0) - std::conj(u) * w);
    double ang = std::arg(dw) - std::arg(dv);
    while (ang <= -M_PI) ang += 2 * M_PI;
    while (ang > M_PI) ang -= 2 * M_PI;
    return ang;
}

}  // namespace hypwidth
