#include "hypwidth/pants.hpp"

#include <cmath>

namespace hypwidth {

namespace {

double seam_from_cuffs(double lk, double li, double lj) {
    // Right-angled hexagon relation: the seam between half-cuffs i and j.
    const double num = std::cosh(lk / 2) + std::cosh(li / 2) * std::cosh(lj / 2);
    return std::acosh(num / (std::sinh(li / 2) * std::sinh(lj / 2)));
}

// Isometry taking the upper half-plane point z to i.
MobiusIsometry recentering(cplx z) {
    const double y = z.imag();
    const MobiusIsometry shift{1, -z.real(), 0, 1};
    return MobiusIsometry::axis_translation(-std::log(y)) * shift;
}

}  // namespace

PantsGeometry::PantsGeometry(const hyptrig::CuffLengths& cuffs) : cuffs_(cuffs) {
    cuffs_.validate();
    const std::array<double, 3> l{cuffs.l1, cuffs.l2, cuffs.l3};
    for (int k = 0; k < 3; ++k) {
        const int i = (k + 1) % 3, j = (k + 2) % 3;
        seam_[k] = seam_from_cuffs(l[k], l[i], l[j]);
        if (!std::isfinite(seam_[k])) throw DomainError("degenerate cuff lengths");
    }
    // Sides: half-cuff 1, seam 3, half-cuff 2, seam 1, half-cuff 3, seam 2.
    side_len_ = {l[0] / 2, seam_[2], l[1] / 2, seam_[0], l[2] / 2, seam_[1]};

    // Turtle walk, counterclockwise, left turns of pi/2.
    MobiusIsometry f = MobiusIsometry::identity();
    for (int s = 0; s < 6; ++s) {
        side_frame_[s] = f;
        vert_uhp_[s] = f.apply_uhp(cplx(0, 1));
        f = f * MobiusIsometry::axis_translation(side_len_[s]) *
            MobiusIsometry::rotation_about_i(M_PI / 2);
        f = f.normalized();
    }
    closure_residual_ = f.dist_proj(MobiusIsometry::identity());

    // Recentre on the vertex barycentre (crude but adequate).
    cplx mean{0, 0};
    for (const auto& v : vert_uhp_) mean += uhp_to_disk(v);
    mean /= 6.0;
    const MobiusIsometry re = recentering(disk_to_uhp(mean));
    for (int s = 0; s < 6; ++s) {
        side_frame_[s] = (re * side_frame_[s]).normalized();
        vert_uhp_[s] = re.apply_uhp(vert_uhp_[s]);
    }

    seam_frame_ = {side_frame_[3], side_frame_[5], side_frame_[1]};
    for (int k = 0; k < 3; ++k) refl_[k] = GeodesicReflection::across_frame(seam_frame_[k]);
    W_[0] = compose(refl_[1], refl_[2]);
    W_[1] = compose(refl_[2], refl_[0]);
    W_[2] = compose(refl_[0], refl_[1]);
    for (int k = 0; k < 3; ++k) {
        if (std::abs(W_[k].translation_length() - l[k]) > 1e-9 * (1 + l[k])) {
            throw StructureError("pants construction failed the cuff length check");
        }
        // Anchor the normalizer's sliding freedom at the hexagon vertex where
        // seam and cuff meet, so that twist 0 is the seam-aligned gluing.
        MobiusIsometry N = W_[k].axis_normalizer();
        const cplx foot = N.apply_uhp(vert_uhp_[static_cast<std::size_t>(2 * k)]);
        if (std::abs(foot.real()) > 1e-6 * foot.imag())
            throw StructureError("cuff-side hexagon vertex is not on the normalized axis");
        N_[k] = (MobiusIsometry::axis_translation(-std::log(foot.imag())) * N).normalized();
    }

    core_radius_ = 0;
    const cplx o{0, 1};
    for (const auto& v : vert_uhp_) core_radius_ = std::max(core_radius_, dist_uhp(o, v));
    for (const auto& v : mirror_vertices_uhp())
        core_radius_ = std::max(core_radius_, dist_uhp(o, v));
}

double PantsGeometry::cuff_length(int slot) const {
    const std::array<double, 3> l{cuffs_.l1, cuffs_.l2, cuffs_.l3};
    return l.at(static_cast<std::size_t>(slot));
}

std::array<cplx, 6> PantsGeometry::hexagon_vertices_disk() const {
    std::array<cplx, 6> out;
    for (int s = 0; s < 6; ++s) out[s] = uhp_to_disk(vert_uhp_[s]);
    return out;
}

std::array<cplx, 6> PantsGeometry::mirror_vertices_uhp() const {
    std::array<cplx, 6> out;
    for (int s = 0; s < 6; ++s) out[s] = refl_[0].apply_uhp(vert_uhp_[s]);
    return out;
}

}  // namespace hypwidth
