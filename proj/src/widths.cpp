#include "hypwidth/widths.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "hypwidth/pants.hpp"

namespace hypwidth::widths {

using hyptrig::CuffLengths;

double WidthResult::value() const {
    if (!exact) throw CertificateError("width result is a bracket, not an exact value");
    return hi;
}

void WidthResult::validate(int genus) const {
    if (!(lo <= hi + 1e-12)) throw StructureError("width bracket has lo > hi");
    int n_fig8 = 0, n_simple = 0;
    double sum = 0;
    for (const auto& c : decomposition) {
        if (c.role == "figure-eight") ++n_fig8;
        else if (c.role == "simple") ++n_simple;
        else throw StructureError("unknown decomposition role " + c.role);
        sum += c.length;
    }
    if (n_fig8 != 1) throw StructureError("decomposition must contain exactly one figure eight");
    if (n_simple > 3 * genus - 3)
        throw StructureError("decomposition has more simple components than 3g-3");
    if (exact && std::abs(sum - hi) > 1e-9 * (1 + hi))
        throw StructureError("decomposition sum does not match the exact value");
    if (!(hi > hyptrig::width_lower_bound(-1.0)))
        throw StructureError("width at or below the curvature lower bound");
}

FamilySystoleCertificate certify_equal_cuff_family(double a) {
    FamilySystoleCertificate cert;
    cert.cuff_length = a;
    cert.doubled_collar = 2 * hyptrig::collar_halfwidth(a);
    if (!(cert.doubled_collar > a)) {
        std::ostringstream os;
        os << "collar inequality failed: 2*collar_halfwidth(" << a << ") = "
           << cert.doubled_collar << " <= " << a << " (threshold 2*asinh(1) = "
           << hyptrig::collar_certificate_threshold() << ")";
        cert.note = os.str();
        return cert;
    }
    const PantsGeometry pg(CuffLengths{a, a, a});
    const std::vector<MobiusIsometry> gens{pg.cuff_holonomy(0), pg.cuff_holonomy(1)};
    const fuchsian::ClassList cl = fuchsian::enumerate_geodesics(
        gens, fuchsian::HomologyTester(2, {}), pg.core_radius(), a + 0.01, 256);
    cert.horizon = cl.horizon;
    cert.shortest_pants_geodesic = std::numeric_limits<double>::infinity();
    for (const auto& c : cl.classes)
        cert.shortest_pants_geodesic = std::min(cert.shortest_pants_geodesic, c.length);
    if (cert.shortest_pants_geodesic < a - 1e-9) {
        cert.note = "a closed geodesic shorter than the cuffs exists inside the pants";
        return cert;
    }
    if (cl.horizon < a - 1e-12) {
        cert.note = "pants spectrum enumeration horizon below the cuff length";
        return cert;
    }
    cert.certified = true;
    cert.note = "collar inequality holds and the pants spectrum has nothing below the cuffs";
    return cert;
}

namespace {

std::string format_certificate(const FamilySystoleCertificate& c) {
    std::ostringstream os;
    os << "systole certificate: cuff " << c.cuff_length << ", doubled collar "
       << c.doubled_collar << ", shortest pants geodesic " << c.shortest_pants_geodesic
       << ", horizon " << c.horizon << " (" << c.note << ")";
    return os.str();
}

}  // namespace

WidthResult width_S_ma(double a, int genus) {
    if (genus < 2) throw DomainError("genus must be at least 2");
    const FamilySystoleCertificate cert = certify_equal_cuff_family(a);
    if (!cert.certified) {
        throw CertificateError("hypothesis not certified for S_{m,a}: " + cert.note);
    }
    WidthResult r;
    const double v = hyptrig::figure_eight_length(CuffLengths{a, a, a});
    r.lo = r.hi = v;
    r.exact = true;
    r.decomposition.push_back({"figure-eight", v});
    r.certificate.push_back(format_certificate(cert));
    r.certificate.push_back("value = figure_eight_length((a,a,a)), genus-independent");
    r.validate(genus);
    return r;
}

WidthResult width_S_L(double L) {
    const FamilySystoleCertificate cert = certify_equal_cuff_family(L);
    if (!cert.certified) {
        throw CertificateError("hypothesis not certified for S_L: " + cert.note);
    }
    WidthResult r;
    const double f8 = hyptrig::figure_eight_length(CuffLengths{L, L, L});
    r.lo = r.hi = f8 + L;
    r.exact = true;
    r.decomposition.push_back({"figure-eight", f8});
    r.decomposition.push_back({"simple", L});
    r.certificate.push_back(format_certificate(cert));
    r.certificate.push_back("value = figure_eight_length((L,L,L)) + L");
    r.validate(2);
    return r;
}

double bolza_hi_bound() {
    const double sys = hyptrig::bolza_systole();
    const double lg = hyptrig::trirectangle_opposite_side();
    const double ch = std::cosh(sys / 2);
    return 2 * hyptrig::acosh_clamped(std::cosh(lg / 2) + 2 * ch * ch);
}

WidthResult width_bolza() {
    const double sys = hyptrig::bolza_systole();
    const double cap = bolza_hi_bound();
    const double l_beta = hyptrig::figure_eight_length(CuffLengths{sys, sys, sys});

    const fuchsian::SurfaceModel model =
        fuchsian::SurfaceModel::build(fuchsian::SurfaceSpec::bolza());
    WidthResult r;

    // Minimal separating simple closed geodesic (the four-arc curve caps it).
    const double lg = hyptrig::trirectangle_opposite_side();
    const fuchsian::SeparatingSearch sep =
        fuchsian::minimal_separating_simple(model, lg + 0.1, 48);
    if (!sep.found) {
        r.lo = hyptrig::width_lower_bound(-1.0) + 1e-12;
        r.hi = cap;
        r.exact = false;
        r.decomposition.push_back({"figure-eight", cap});
        r.certificate.push_back("uncertified minimal separating length; closed-form cap only");
        return r;
    }
    const double l_alpha = sep.length;
    const double ch = std::cosh(sys / 2);
    const double hi = 2 * hyptrig::acosh_clamped(std::cosh(l_alpha / 2) + 2 * ch * ch);
    if (hi > cap + 1e-9)
        throw StructureError("Bolza upper bound exceeded the four-arc closed-form cap");
    if (!(sys + l_beta > hi))
        throw StructureError("collection-empty exclusion sys + L_beta > hi failed");

    std::ostringstream note;
    note << "minimal separating simple length " << l_alpha << " (word " << sep.word
         << (sep.simple_certified ? ", certified" : ", uncertified") << ")";
    r.certificate.push_back(note.str());
    r.certificate.push_back("exclusion: sys + L_beta = " + std::to_string(sys + l_beta) +
                            " > hi, so no extra simple components");

    // Exact collapse: the minimal separating class with exactly one
    // self-crossing must sit at the pants figure-eight length.
    bool exact = false;
    if (sep.simple_certified) {
        fuchsian::GroupBall ball;
        const fuchsian::ClassList cl =
            fuchsian::enumerate_geodesics(model.generators(), model.homology(),
                                          model.dirichlet_radius(), hi + 0.05, 48,
                                          8'000'000, &ball);
        if (cl.horizon >= hi + 0.04) {
            double min_sep_fig8 = std::numeric_limits<double>::infinity();
            bool all_certified = true;
            for (const auto& c : cl.classes) {
                if (!c.separating) continue;
                bool cert = false;
                const int x = fuchsian::count_self_crossings(c, ball, model.dirichlet_radius(),
                                                             &cert);
                all_certified &= cert;
                if (x == 1) {
                    min_sep_fig8 = std::min(min_sep_fig8, c.length);
                    break;  // classes are sorted by length
                }
            }
            if (all_certified && std::abs(min_sep_fig8 - hi) < 1e-9 * (1 + hi)) {
                exact = true;
                r.certificate.push_back(
                    "minimal separating figure-eight class matches the pants value; "
                    "enumeration complete below " +
                    std::to_string(cl.horizon));
            }
        }
    }

    r.hi = hi;
    r.lo = exact ? hi : hyptrig::width_lower_bound(-1.0) + 1e-12;
    r.exact = exact;
    r.decomposition.push_back({"figure-eight", hi});
    r.validate(2);
    return r;
}

bool decomposition_count_check(const WidthResult& result, int genus) {
    int n_simple = 0;
    for (const auto& c : result.decomposition)
        if (c.role == "simple") ++n_simple;
    return n_simple <= 3 * genus - 3;
}

}  // namespace hypwidth::widths
