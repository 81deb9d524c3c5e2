#include "hypwidth/hyptrig.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace hypwidth::hyptrig {

namespace {
void require_positive(double v, const char* name) {
    if (!std::isfinite(v) || v <= 0.0) {
        throw DomainError(std::string(name) + " must be positive and finite, got " +
                          std::to_string(v));
    }
}
}  // namespace

void CuffLengths::validate() const {
    require_positive(l1, "cuff length l1");
    require_positive(l2, "cuff length l2");
    require_positive(l3, "cuff length l3");
}

double acosh_clamped(double x) {
    if (x >= 1.0) return std::acosh(x);
    if (x > 1.0 - 1e-12) return 0.0;
    throw DomainError("acosh argument " + std::to_string(x) + " below 1 beyond roundoff");
}

double figure_eight_length(const CuffLengths& c) {
    c.validate();
    const double arg = std::cosh(c.l3 / 2) + 2.0 * std::cosh(c.l1 / 2) * std::cosh(c.l2 / 2);
    return 2.0 * acosh_clamped(arg);
}

double figure_eight_length_min(const CuffLengths& c) {
    c.validate();
    const double a = figure_eight_length(c);
    const double b = figure_eight_length({c.l1, c.l3, c.l2});
    const double d = figure_eight_length({c.l2, c.l3, c.l1});
    return std::min(a, std::min(b, d));
}

double width_lower_bound(double k_inf) {
    if (!(k_inf < 0.0) || !std::isfinite(k_inf)) {
        throw DomainError("curvature bound must be negative, got " + std::to_string(k_inf));
    }
    return 2.0 / std::sqrt(-k_inf) * std::acosh(3.0);
}

double collar_halfwidth(double l) {
    require_positive(l, "geodesic length");
    return std::asinh(1.0 / std::sinh(l / 2));
}

double collar_certificate_threshold() { return 2.0 * std::asinh(1.0); }

double trirectangle_opposite_side() {
    return 8.0 * std::acosh(1.0 + std::sqrt(2.0) / 2.0);
}

double parlier_interior_bound(double l_boundary) {
    require_positive(l_boundary, "boundary length");
    return 2.0 * acosh_clamped(std::cosh(l_boundary / 6) + 0.5);
}

double bolza_systole() { return 2.0 * std::acosh(1.0 + std::sqrt(2.0)); }

double two_acosh_three() { return 2.0 * std::acosh(3.0); }

}  // namespace hypwidth::hyptrig
