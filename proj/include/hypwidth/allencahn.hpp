#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>
#include <functional>
#include <vector>

#include "hypwidth/mesh.hpp"

namespace hypwidth::allencahn {

using SpMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;

// Double-well potential with wells at -1 and +1.
struct DoubleWell {
    std::function<double(double)> w, dw, ddw;
    static DoubleWell quartic();  // (1-u^2)^2 / 4
    // Checks the defining properties on a sampled grid: W >= 0, even,
    // t W'(t) < 0 on 0 < |t| < 1, W''(+-1) > 0.
    void validate() const;
};

// 1D connecting orbit H'' = W'(H), H(0)=0, H(+-inf)=+-1, via the conserved
// first integral H' = sqrt(2 W(H)); h0 is its total energy.
struct HeteroclinicProfile {
    std::vector<double> t, h;
    double h0 = 0;
    double residual = 0;  // max FD defect of H'' = W'(H) on the interior grid
    double value(double s) const;  // linear interpolation, clamped to +-1
};
HeteroclinicProfile heteroclinic(const DoubleWell& well, double t_max = 15.0, int n = 6001);

struct PhaseField {
    Vec u;
    double epsilon = 0.1;
};

// P1 finite-element operators of the hyperbolic mesh: cotangent stiffness and
// lumped mass from the hyperbolic edge lengths (cone-metric approximation).
class FemOperators {
  public:
    explicit FemOperators(const mesh::TriangulatedSurface& m);
    const SpMat& stiffness() const { return K_; }
    const Vec& lumped_mass() const { return mass_; }
    double total_area() const { return area_; }
    int size() const { return static_cast<int>(mass_.size()); }

  private:
    SpMat K_;
    Vec mass_;
    double area_ = 0;
};

double energy(const PhaseField& u, const FemOperators& ops, const DoubleWell& well);
Vec energy_gradient(const PhaseField& u, const FemOperators& ops, const DoubleWell& well);
// Mass-weighted norm of the PDE residual eps^2*Lap(u) - W'(u).
double residual_norm(const PhaseField& u, const FemOperators& ops, const DoubleWell& well);

// Newton solve of the critical-point equation from u0; respects |u| < 1.
// `trust` caps each step's mass-norm (keeps the iteration in the local basin
// when polishing saddle points); 0 means uncapped.
PhaseField solve_critical(PhaseField u0, const FemOperators& ops, const DoubleWell& well,
                          double tol, int max_iter = 80, double trust = 0.0);

struct MountainPassResult {
    PhaseField pass_point;
    double pass_energy = 0;
    int pass_index = 0;
    int outer_iterations = 0;
    std::vector<double> max_history;  // max energy over the path per outer iteration
    std::vector<double> path_energies;
    double final_residual = 0;
};

// Discrete mountain pass between the constants -1 and +1: linear homotopy plus
// a small seeded perturbation, descent sweeps with arclength reparametrization,
// dyadic refinement near the max, Newton polish of the pass point.
MountainPassResult mountain_pass(const FemOperators& ops, const DoubleWell& well, double epsilon,
                                 int path_resolution, std::uint64_t seed, double tol = 1e-9,
                                 int max_outer = 2500, bool verbose = false);

// h0^{-1} * E_eps(u): the interface length estimate.
double interface_mass(const PhaseField& u, const FemOperators& ops, const DoubleWell& well,
                      double h0);

// Zero level set as closed polylines chained across mesh triangles.
struct LevelCurve {
    std::vector<int> triangles;   // segment k lives in triangles[k]
    std::vector<cplx> points;     // crossing point k in triangles[k]'s chart ...
    std::vector<cplx> points_b;   // ... and segment end in the same chart
    double length = 0;
};
std::vector<LevelCurve> zero_level_set(const PhaseField& u, const mesh::TriangulatedSurface& m);

// Interface topology at the finite-epsilon resolution scale. A level curve is
// a developed interface when the field swings past +-0.6 on both sides within
// a few interface widths; grazing level curves (tail artifacts) are counted
// separately. Developed curves approaching within the contact radius
// max(2.5 h, 1.3 eps) are merged and each contact cluster counts as one
// self-crossing.
struct InterfaceTopology {
    int components = 0;
    int crossings = 0;
    int grazing = 0;
    double developed_length = 0;
};
InterfaceTopology classify_interface(const std::vector<LevelCurve>& curves,
                                     const mesh::TriangulatedSurface& m,
                                     const PhaseField& u,
                                     const fuchsian::SurfaceModel& model);

// One-sided-symmetric Hausdorff distance between the level set and a reference
// polyline given in the chart of pants `pants` (sweepout coordinates).
double hausdorff_to_reference(const std::vector<LevelCurve>& curves,
                              const mesh::TriangulatedSurface& m,
                              const fuchsian::SurfaceModel& model, int pants,
                              const std::vector<cplx>& reference);

}  // namespace hypwidth::allencahn
