#pragma once

#include <array>

#include "hypwidth/hyptrig.hpp"
#include "hypwidth/mobius.hpp"

namespace hypwidth {

// A hyperbolic pair of pants with geodesic boundary, realized concretely:
// two mirror right-angled hexagons glued along their three seam sides.
//
// Hexagon side order (cyclically): half-cuff 1, seam 3, half-cuff 2, seam 1,
// half-cuff 3, seam 2 — seam k runs between the half-cuffs of the two cuffs
// other than k. The pants group is generated by products of reflections in
// the seam lines: W1 = S2*S3, W2 = S3*S1, W3 = S1*S2, with W1*W2*W3 = I and
// translation_length(Wk) = lk.
class PantsGeometry {
  public:
    explicit PantsGeometry(const hyptrig::CuffLengths& cuffs);

    const hyptrig::CuffLengths& cuffs() const { return cuffs_; }
    double cuff_length(int slot) const;

    // Seam length opposite cuff k (0-based).
    double seam_length(int k) const { return seam_[k]; }

    // Hexagon data, in the recentred chart (hexagon roughly around i / disk 0).
    const std::array<double, 6>& hexagon_side_lengths() const { return side_len_; }
    const std::array<cplx, 6>& hexagon_vertices_uhp() const { return vert_uhp_; }
    std::array<cplx, 6> hexagon_vertices_disk() const;
    // Mirror copy across seam 1's line (the other half of the pants).
    std::array<cplx, 6> mirror_vertices_uhp() const;

    // Frame whose forward geodesic carries seam k's line.
    const MobiusIsometry& seam_frame(int k) const { return seam_frame_[k]; }
    const GeodesicReflection& seam_reflection(int k) const { return refl_[k]; }

    // Cuff holonomies W1, W2, W3 (product = identity).
    const MobiusIsometry& cuff_holonomy(int slot) const { return W_[slot]; }

    // Frame positioning cuff `slot`'s axis (forward geodesic = the cuff line).
    // N = axis_normalizer(W_slot), so N*W*N^{-1} = axis_translation(l).
    const MobiusIsometry& slot_normalizer(int slot) const { return N_[slot]; }

    // Free homotopy class of the figure eight winding once around cuffs 1 and 2.
    MobiusIsometry figure_eight_class() const { return W_[0] * W_[1].inverse(); }

    // Closure residual of the hexagon turtle walk (distance of the 6-side
    // product from +-identity); also the independent check of the seam-length
    // cosh relation.
    double closure_residual() const { return closure_residual_; }

    // Max distance from the chart origin to the 12 vertices of the doubled
    // hexagon: every point of the convex core lies within this radius.
    double core_radius() const { return core_radius_; }

  private:
    hyptrig::CuffLengths cuffs_;
    std::array<double, 3> seam_{};
    std::array<double, 6> side_len_{};
    std::array<cplx, 6> vert_uhp_{};
    std::array<MobiusIsometry, 6> side_frame_{};
    std::array<MobiusIsometry, 3> seam_frame_{};
    std::array<GeodesicReflection, 3> refl_{};
    std::array<MobiusIsometry, 3> W_{};
    std::array<MobiusIsometry, 3> N_{};
    double closure_residual_ = 0;
    double core_radius_ = 0;
};

}  // namespace hypwidth
