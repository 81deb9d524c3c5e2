#pragma once

#include <string>
#include <vector>

#include "hypwidth/fuchsian.hpp"
#include "hypwidth/hyptrig.hpp"

namespace hypwidth::widths {

// First min-max width of a surface: an exact value or a certified bracket,
// with the realizing decomposition into a figure eight and simple geodesics.
struct WidthResult {
    double lo = 0, hi = 0;
    bool exact = false;

    struct Component {
        std::string role;  // "figure-eight" or "simple"
        double length = 0;
    };
    std::vector<Component> decomposition;
    std::vector<std::string> certificate;

    double value() const;  // throws unless exact
    void validate(int genus) const;
};

// Certificate that every cuff of the all-cuffs-equal pants families is a
// systole: the collar inequality plus an exhaustive pants-spectrum check.
// Genus-independent (non-crossing geodesics live inside a single pants).
struct FamilySystoleCertificate {
    bool certified = false;
    double cuff_length = 0;
    double doubled_collar = 0;
    double shortest_pants_geodesic = 0;
    double horizon = 0;
    std::string note;
};
FamilySystoleCertificate certify_equal_cuff_family(double a);

// omega_1(S_{m,a}) = figure-eight length of the (a,a,a) pants.
WidthResult width_S_ma(double a, int genus);

// omega_1(S_L) = figure-eight length + L (one extra simple geodesic).
WidthResult width_S_L(double L);

// Closed-form cap for the Bolza width from the four-arc separating curve:
// 2*acosh(cosh(L_gamma/2) + 2*cosh^2(sys/2)).
double bolza_hi_bound();

// Bolza width bracket; collapses to an exact value when the enumeration
// certifies the minimal separating simple length and the minimal separating
// figure eight.
WidthResult width_bolza();

bool decomposition_count_check(const WidthResult& result, int genus);

}  // namespace hypwidth::widths
