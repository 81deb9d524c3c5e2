#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hypwidth/allencahn.hpp"

namespace hypwidth::stability {

// Lower spectrum of a second-variation operator with index/nullity counts.
struct SpectrumReport {
    std::vector<double> smallest_eigenvalues;  // ascending
    int index = 0;    // eigenvalues below -zero_band
    int nullity = 0;  // eigenvalues within the band
    double zero_band = 0;
    std::string provenance;
};

// Jacobi operator -phi'' - K(theta) phi on a closed geodesic of length L with
// periodic boundary conditions; second-order finite differences with a
// refinement convergence check.
SpectrumReport geodesic_index(double length, const std::function<double(double)>& curvature,
                              int n_eigs = 8, int grid = 512);

// Assembled second-variation form of the phase-transition energy at u.
struct SecondVariationForm {
    allencahn::SpMat form;            // eps*K + (1/eps) M W''(u)
    Eigen::VectorXd mass;             // lumped mass (the metric)
    bool critical_warning = false;    // set when u was not critical at tolerance
    double apply(const Eigen::VectorXd& v, const Eigen::VectorXd& w) const {
        return v.dot(form * w);
    }
};
SecondVariationForm ac_second_variation(const allencahn::PhaseField& u,
                                        const allencahn::FemOperators& ops,
                                        const allencahn::DoubleWell& well,
                                        double crit_tol = 1e-6);

// Smallest eigenvalues of the generalized problem (eps*K + (1/eps) M W''(u)) v
// = lambda M v via shift-invert Lanczos with full reorthogonalization.
SpectrumReport ac_index(const allencahn::PhaseField& u, const allencahn::FemOperators& ops,
                        const allencahn::DoubleWell& well, int n_eigs,
                        double mesh_h = 0.05);

// Finite-epsilon check of the index inequalities between a geodesic interface
// and the phase-field critical point: geodesic index <= AC index and
// geodesic index + nullity >= AC index + nullity.
struct IndexConsistency {
    bool hypothesis_met = false;  // the interface must be a simple closed geodesic
    bool consistent = false;
    std::string note;
};
IndexConsistency index_consistency_check(const SpectrumReport& geodesic,
                                         const SpectrumReport& ac, bool interface_is_simple);

}  // namespace hypwidth::stability
