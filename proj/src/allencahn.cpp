#include "hypwidth/allencahn.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <cstdio>

#include "hypwidth/pants.hpp"

namespace hypwidth::allencahn {

DoubleWell DoubleWell::quartic() {
    DoubleWell w;
    w.w = [](double u) {
        const double q = 1 - u * u;
        return q * q / 4;
    };
    w.dw = [](double u) { return u * u * u - u; };
    w.ddw = [](double u) { return 3 * u * u - 1; };
    return w;
}

void DoubleWell::validate() const {
    if (!(ddw(1.0) > 0) || !(ddw(-1.0) > 0))
        throw DomainError("double well must have positive curvature at the wells");
    for (int k = -400; k <= 400; ++k) {
        const double t = k / 100.0;
        if (w(t) < -1e-14) throw DomainError("double well must be nonnegative");
        if (std::abs(w(t) - w(-t)) > 1e-12 * (1 + w(t)))
            throw DomainError("double well must be even");
        if (std::abs(t) > 1e-9 && std::abs(t) < 1 - 1e-9 && !(t * dw(t) < 0))
            throw DomainError("double well must satisfy t W'(t) < 0 on 0 < |t| < 1");
    }
}

double HeteroclinicProfile::value(double s) const {
    if (s <= t.front()) return -1.0;
    if (s >= t.back()) return 1.0;
    const auto it = std::upper_bound(t.begin(), t.end(), s);
    const std::size_t k = static_cast<std::size_t>(it - t.begin());
    const double w = (s - t[k - 1]) / (t[k] - t[k - 1]);
    return h[k - 1] * (1 - w) + h[k] * w;
}

HeteroclinicProfile heteroclinic(const DoubleWell& well, double t_max, int n) {
    well.validate();
    if (n < 3 || n % 2 == 0) throw DomainError("heteroclinic grid must be odd-sized");
    HeteroclinicProfile p;
    const int half = n / 2;
    const double dt = t_max / half;
    std::vector<double> hpos(static_cast<std::size_t>(half) + 1);
    hpos[0] = 0.0;
    // H' = sqrt(2 W(H)), integrated by RK4; exact on the heteroclinic orbit.
    auto f = [&](double h) { return std::sqrt(std::max(0.0, 2 * well.w(std::min(h, 1.0)))); };
    for (int k = 0; k < half; ++k) {
        const double h = hpos[static_cast<std::size_t>(k)];
        const double k1 = f(h);
        const double k2 = f(h + dt / 2 * k1);
        const double k3 = f(h + dt / 2 * k2);
        const double k4 = f(h + dt * k3);
        hpos[static_cast<std::size_t>(k + 1)] =
            std::min(1.0, h + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4));
    }
    p.t.resize(static_cast<std::size_t>(n));
    p.h.resize(static_cast<std::size_t>(n));
    for (int k = -half; k <= half; ++k) {
        p.t[static_cast<std::size_t>(k + half)] = k * dt;
        const double v = hpos[static_cast<std::size_t>(std::abs(k))];
        p.h[static_cast<std::size_t>(k + half)] = k >= 0 ? v : -v;
    }
    // h0 = int (1/2 H'^2 + W(H)) = int 2 W(H), Simpson + exponential tail.
    double h0 = 0;
    auto g = [&](std::size_t k) { return 2 * well.w(p.h[k]); };
    for (std::size_t k = 0; k + 2 < p.t.size(); k += 2)
        h0 += dt / 3 * (g(k) + 4 * g(k + 1) + g(k + 2));
    const double mu = std::sqrt(well.ddw(1.0));
    const double delta = 1.0 - hpos[static_cast<std::size_t>(half)];
    h0 += mu * delta * delta;  // both tails: 2 * (mu delta^2 / 2)
    p.h0 = h0;
    // Residual of H'' = W'(H) by central differences.
    double res = 0;
    for (std::size_t k = 1; k + 1 < p.t.size(); ++k) {
        const double hpp = (p.h[k - 1] - 2 * p.h[k] + p.h[k + 1]) / (dt * dt);
        res = std::max(res, std::abs(hpp - well.dw(p.h[k])));
    }
    p.residual = res;
    if (!(res < 5e-3)) {
        std::ostringstream os;
        os << "heteroclinic residual " << res << " too large (grid too coarse?)";
        throw ConvergenceError(os.str());
    }
    return p;
}

namespace {

double heron(double a, double b, double c) {
    const double s = (a + b + c) / 2;
    return std::sqrt(std::max(0.0, s * (s - a) * (s - b) * (s - c)));
}

}  // namespace

FemOperators::FemOperators(const mesh::TriangulatedSurface& m) {
    const int n = m.num_vertices();
    mass_ = Vec::Zero(n);
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(m.num_triangles()) * 9);
    for (int t = 0; t < m.num_triangles(); ++t) {
        const auto& tri = m.triangles[static_cast<std::size_t>(t)];
        const auto& e = m.edge_lengths[static_cast<std::size_t>(t)];
        const double A = heron(e[0], e[1], e[2]);
        area_ += A;
        for (int k = 0; k < 3; ++k) {
            const double a = e[static_cast<std::size_t>(k)];
            const double b = e[static_cast<std::size_t>((k + 1) % 3)];
            const double c = e[static_cast<std::size_t>((k + 2) % 3)];
            const double cot = (b * b + c * c - a * a) / (4 * A);
            const int i = tri[static_cast<std::size_t>((k + 1) % 3)];
            const int j = tri[static_cast<std::size_t>((k + 2) % 3)];
            trip.emplace_back(i, j, -cot / 2);
            trip.emplace_back(j, i, -cot / 2);
            trip.emplace_back(i, i, cot / 2);
            trip.emplace_back(j, j, cot / 2);
            mass_(tri[static_cast<std::size_t>(k)]) += A / 3;
        }
    }
    K_.resize(n, n);
    K_.setFromTriplets(trip.begin(), trip.end());
    K_.makeCompressed();
}

double energy(const PhaseField& u, const FemOperators& ops, const DoubleWell& well) {
    if (!(u.epsilon > 0)) throw DomainError("epsilon must be positive");
    const double grad = 0.5 * u.epsilon * u.u.dot(ops.stiffness() * u.u);
    double pot = 0;
    for (int i = 0; i < ops.size(); ++i) pot += ops.lumped_mass()(i) * well.w(u.u(i));
    return grad + pot / u.epsilon;
}

Vec energy_gradient(const PhaseField& u, const FemOperators& ops, const DoubleWell& well) {
    Vec g = u.epsilon * (ops.stiffness() * u.u);
    for (int i = 0; i < ops.size(); ++i)
        g(i) += ops.lumped_mass()(i) * well.dw(u.u(i)) / u.epsilon;
    return g;
}

double residual_norm(const PhaseField& u, const FemOperators& ops, const DoubleWell& well) {
    const Vec g = energy_gradient(u, ops, well);
    double s = 0;
    for (int i = 0; i < ops.size(); ++i) {
        const double f = u.epsilon * g(i) / ops.lumped_mass()(i);
        s += ops.lumped_mass()(i) * f * f;
    }
    return std::sqrt(s);
}

namespace {

SpMat hessian(const PhaseField& u, const FemOperators& ops, const DoubleWell& well) {
    SpMat J = u.epsilon * ops.stiffness();
    SpMat D(ops.size(), ops.size());
    std::vector<Eigen::Triplet<double>> trip;
    for (int i = 0; i < ops.size(); ++i)
        trip.emplace_back(i, i, ops.lumped_mass()(i) * well.ddw(u.u(i)) / u.epsilon);
    D.setFromTriplets(trip.begin(), trip.end());
    return J + D;
}

}  // namespace

PhaseField solve_critical(PhaseField u, const FemOperators& ops, const DoubleWell& well,
                          double tol, int max_iter, double trust) {
    double res = residual_norm(u, ops, well);
    int weak_steps = 0;
    for (int it = 0; it < max_iter && res > tol; ++it) {
        const SpMat J = hessian(u, ops, well);
        const Vec g = energy_gradient(u, ops, well);
        Eigen::SimplicialLDLT<SpMat> ldlt(J);
        Vec step;
        if (ldlt.info() == Eigen::Success) {
            step = ldlt.solve(-g);
        } else {
            Eigen::SparseLU<SpMat> lu(J);
            if (lu.info() != Eigen::Success)
                throw ConvergenceError("Newton linearization is singular; residual " +
                                       std::to_string(res));
            step = lu.solve(-g);
        }
        if (trust > 0) {
            const double sn = std::sqrt(step.dot(ops.lumped_mass().cwiseProduct(step)));
            if (sn > trust) step *= trust / sn;
        }
        double alpha = 1.0;
        PhaseField trial = u;
        double best_r = std::numeric_limits<double>::infinity();
        Vec best_u = u.u;
        for (int back = 0; back < 16; ++back) {
            trial.u = u.u + alpha * step;
            const double r = residual_norm(trial, ops, well);
            if (r < best_r) {
                best_r = r;
                best_u = trial.u;
            }
            if (r < res * (1 - 0.25 * alpha) || r < tol) break;
            alpha /= 2;
        }
        if (best_r >= res * (1 - 1e-4)) ++weak_steps;
        if (best_r < res) {
            u.u = best_u;
            res = best_r;
        } else if (weak_steps > 6) {
            break;
        }
        if (weak_steps > 30) break;
    }
    if (res > tol)
        throw ConvergenceError("critical point solve stalled at residual " + std::to_string(res));
    if (u.u.cwiseAbs().maxCoeff() > 1 + 1e-9)
        throw ConvergenceError("critical point violates |u| <= 1");
    return u;
}

MountainPassResult mountain_pass(const FemOperators& ops, const DoubleWell& well, double epsilon,
                                 int path_resolution, std::uint64_t seed, double tol,
                                 int max_outer, bool verbose) {
    if (path_resolution < 5) throw DomainError("path resolution too small");
    const int n = ops.size();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    // Linear homotopy plus a small seeded perturbation: spatially constant
    // fields are a gradient-invariant subspace, so symmetry must be broken.
    std::vector<Vec> path;
    for (int k = 0; k < path_resolution; ++k) {
        const double s = static_cast<double>(k) / (path_resolution - 1);
        Vec u = Vec::Constant(n, 2 * s - 1);
        if (k > 0 && k + 1 < path_resolution) {
            for (int i = 0; i < n; ++i) u(i) += 0.01 * 4 * s * (1 - s) * gauss(rng);
        }
        path.push_back(u);
    }

    const double area = ops.total_area();
    auto dist_m = [&](const Vec& a, const Vec& b) {
        const Vec d = a - b;
        return std::sqrt(d.dot(ops.lumped_mass().cwiseProduct(d)));
    };

    // Interface-width continuation: start from a smoothed landscape and carry
    // the path down an epsilon schedule to the target value.
    std::vector<double> schedule{epsilon};
    for (double e = epsilon; e < std::min(2.5 * epsilon, 0.42) - 1e-12;) {
        e = std::min(e / 0.7, std::min(2.5 * epsilon, 0.42));
        schedule.push_back(e);
    }
    std::reverse(schedule.begin(), schedule.end());

    MountainPassResult out;
    for (std::size_t stage = 0; stage < schedule.size(); ++stage) {
        const double eps = schedule[stage];
        const bool final_stage = (stage + 1 == schedule.size());
        auto e_of = [&](const Vec& u) { return energy({u, eps}, ops, well); };

        const double dt = 0.25 * eps;
        SpMat Aimp = eps * dt * ops.stiffness();
        for (int i = 0; i < n; ++i) Aimp.coeffRef(i, i) += ops.lumped_mass()(i);
        Aimp.makeCompressed();
        Eigen::SimplicialLDLT<SpMat> imp(Aimp);
        if (imp.info() != Eigen::Success)
            throw ConvergenceError("descent factorization failed");
        auto descend = [&](Vec& u) {
            Vec rhs = ops.lumped_mass().cwiseProduct(u);
            for (int i = 0; i < n; ++i)
                rhs(i) -= dt / eps * ops.lumped_mass()(i) * well.dw(u(i));
            u = imp.solve(rhs);
        };

        int plateau = 0;
        int polish_attempts = 0;
        int next_polish_outer = 0;
        bool refined = false;
        double best_max = std::numeric_limits<double>::infinity();
        double best_res = std::numeric_limits<double>::infinity();
        for (int outer = 0; outer < max_outer; ++outer) {
            for (std::size_t k = 1; k + 1 < path.size(); ++k) {
                descend(path[k]);
                descend(path[k]);
            }
            // Arclength reparametrization in the mass metric.
            std::vector<double> cum(path.size(), 0.0);
            for (std::size_t k = 1; k < path.size(); ++k)
                cum[k] = cum[k - 1] + std::max(1e-14, dist_m(path[k], path[k - 1]));
            std::vector<Vec> newpath;
            newpath.push_back(path.front());
            const double total = cum.back();
            for (std::size_t k = 1; k + 1 < path.size(); ++k) {
                const double target = total * static_cast<double>(k) / (path.size() - 1);
                std::size_t j = 1;
                while (j < path.size() - 1 && cum[j] < target) ++j;
                const double w = (target - cum[j - 1]) / (cum[j] - cum[j - 1]);
                newpath.push_back(path[j - 1] * (1 - w) + path[j] * w);
            }
            newpath.push_back(path.back());
            path = std::move(newpath);
            for (std::size_t k = 1; k + 1 < path.size(); ++k) descend(path[k]);

            double emax = -1e300;
            std::size_t kmax = 0;
            for (std::size_t k = 0; k < path.size(); ++k) {
                const double e = e_of(path[k]);
                if (e > emax) {
                    emax = e;
                    kmax = k;
                }
            }
            if (final_stage) {
                out.max_history.push_back(emax);
                out.outer_iterations += 1;
            }
            if (kmax == 0 || kmax + 1 == path.size())
                throw ConvergenceError("trivial pass: the path maximum sits at an endpoint");
            if (emax > area / eps * 10)
                throw ConvergenceError("mountain pass energies diverged");
            const double snapshot_res = residual_norm({path[kmax], eps}, ops, well);
            if (verbose && outer % 20 == 0) {
                std::fprintf(stderr,
                             "[mp] stage %zu eps %.3f outer %d emax %.6f kmax %zu path %zu "
                             "plateau %d res %.2e\n",
                             stage, eps, outer, emax, kmax, path.size(), plateau, snapshot_res);
            }
            const bool flat = emax >= best_max - 1e-6 * (1 + std::abs(emax)) &&
                              snapshot_res >= 0.98 * best_res;
            best_max = std::min(best_max, emax);
            best_res = std::min(best_res, snapshot_res);
            plateau = flat ? plateau + 1 : 0;

            if (!final_stage && plateau >= 8) break;  // hand the path to the next stage

            if (final_stage && plateau >= 12 && !refined &&
                static_cast<int>(path.size()) < 2 * path_resolution) {
                std::vector<Vec> ref;
                for (std::size_t k = 0; k < path.size(); ++k) {
                    ref.push_back(path[k]);
                    if (k + 1 < path.size() && (k + 2 >= kmax && k <= kmax + 1)) {
                        Vec mid = 0.5 * (path[k] + path[k + 1]);
                        descend(mid);
                        ref.push_back(mid);
                    }
                }
                path = std::move(ref);
                refined = true;
                plateau = 0;
                continue;
            }
            if (final_stage && plateau >= 20 && outer >= next_polish_outer) {
                std::vector<Vec> starts;
                double trust = 0.0;
                // Climbing-image settle: implicit-Euler descent with the
                // gradient component along the unstable direction reversed;
                // the unstable direction starts as the path tangent and is
                // refreshed by shifted inverse iteration on the Hessian.
                if (kmax > 0 && kmax + 1 < path.size()) {
                    const Vec& a = path[kmax - 1];
                    const Vec& b = path[kmax + 1];
                    Vec v = b - a;
                    auto m_norm = [&](const Vec& x) {
                        return std::sqrt(x.dot(ops.lumped_mass().cwiseProduct(x)));
                    };
                    const double dn = m_norm(v);
                    v /= std::max(dn, 1e-14);
                    trust = std::max(0.25 * dn, 1e-3);
                    Vec u = path[kmax];
                    double wmax = 0;
                    for (int i = 0; i < n; ++i) wmax = std::max(wmax, std::abs(well.ddw(u(i))));
                    const double sigma = -(wmax / eps) - 1.0;
                    for (int it = 0; it < 1200; ++it) {
                        const Vec g = energy_gradient({u, eps}, ops, well);
                        const double gv = g.dot(v);
                        Vec rhs = ops.lumped_mass().cwiseProduct(u) +
                                  (2.0 * dt * gv) * ops.lumped_mass().cwiseProduct(v);
                        for (int i = 0; i < n; ++i)
                            rhs(i) -= dt / eps * ops.lumped_mass()(i) * well.dw(u(i));
                        u = imp.solve(rhs);
                        if (it % 100 == 99) {
                            if (residual_norm({u, eps}, ops, well) < 5e-4) break;
                            // Refresh the unstable direction.
                            SpMat A = hessian({u, eps}, ops, well);
                            for (int i = 0; i < n; ++i)
                                A.coeffRef(i, i) -= sigma * ops.lumped_mass()(i);
                            Eigen::SimplicialLDLT<SpMat> inv(A);
                            if (inv.info() == Eigen::Success) {
                                for (int pw = 0; pw < 3; ++pw) {
                                    v = inv.solve(ops.lumped_mass().cwiseProduct(v));
                                    v /= m_norm(v);
                                }
                            }
                        }
                    }
                    starts.push_back(u);
                }
                starts.push_back(path[kmax]);
                if (kmax > 0) starts.push_back(path[kmax - 1]);
                if (kmax + 1 < path.size()) starts.push_back(path[kmax + 1]);
                std::string last_err = "none";
                for (const Vec& s0 : starts) {
                    try {
                        if (verbose)
                            std::fprintf(stderr, "[mp] polish start E %.6f res %.2e\n",
                                         e_of(s0), residual_norm({s0, eps}, ops, well));
                        PhaseField crit = solve_critical({s0, eps}, ops, well, tol, 120, trust);
                        const double ec = energy(crit, ops, well);
                        if (verbose)
                            std::fprintf(stderr, "[mp] polish landed E %.6f (emax %.6f)\n", ec,
                                         emax);
                        // The discrete path max undershoots the saddle by the
                        // snapshot sampling gap; allow that much headroom.
                        if (ec > emax * 1.08 + 1e-6)
                            throw ConvergenceError("polish landed at energy " +
                                                   std::to_string(ec) +
                                                   ", far above the path maximum " +
                                                   std::to_string(emax));
                        if (ec < 0.9 * emax)
                            throw ConvergenceError("polish slid below the pass level, energy " +
                                                   std::to_string(ec));
                        out.pass_point = crit;
                        out.pass_energy = ec;
                        out.pass_index = static_cast<int>(kmax);
                        out.final_residual = residual_norm(crit, ops, well);
                        for (const auto& u : path) out.path_energies.push_back(e_of(u));
                        return out;
                    } catch (const ConvergenceError& e) {
                        last_err = e.what();
                    }
                }
                if (++polish_attempts >= 4) {
                    throw ConvergenceError(
                        "mountain pass string converged (max " + std::to_string(emax) +
                        ") but the Newton polish failed: " + last_err);
                }
                next_polish_outer = outer + 100;
            }
        }
        if (!final_stage) continue;
        throw ConvergenceError("mountain pass did not converge within the outer iteration budget");
    }
    throw ConvergenceError("mountain pass schedule exhausted");
}

double interface_mass(const PhaseField& u, const FemOperators& ops, const DoubleWell& well,
                      double h0) {
    return energy(u, ops, well) / h0;
}

std::vector<LevelCurve> zero_level_set(const PhaseField& u, const mesh::TriangulatedSurface& m) {
    const auto sign = [&](int v) { return u.u(v) >= 0.0; };
    struct Seg {
        std::array<std::pair<int, int>, 2> edges;  // canonical vertex pairs
        std::array<cplx, 2> pts;                   // in the triangle's chart
        int tri;
    };
    std::vector<Seg> segs;
    std::map<std::pair<int, int>, std::vector<int>> edge_to_seg;
    for (int t = 0; t < m.num_triangles(); ++t) {
        const auto& tri = m.triangles[static_cast<std::size_t>(t)];
        int cross_n = 0;
        std::array<std::pair<int, int>, 2> ce{};
        std::array<cplx, 2> cp{};
        for (int k = 0; k < 3; ++k) {
            const int a = tri[static_cast<std::size_t>(k)], b = tri[static_cast<std::size_t>((k + 1) % 3)];
            if (sign(a) == sign(b)) continue;
            if (cross_n >= 2) {
                cross_n = 3;
                break;
            }
            const double ua = u.u(a), ub = u.u(b);
            const double tau = ua / (ua - ub);
            const cplx pa = m.corners[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)];
            const cplx pb = m.corners[static_cast<std::size_t>(t)][static_cast<std::size_t>((k + 1) % 3)];
            ce[static_cast<std::size_t>(cross_n)] = std::minmax(a, b);
            cp[static_cast<std::size_t>(cross_n)] = geodesic_point_disk(pa, pb, tau);
            ++cross_n;
        }
        if (cross_n == 0) continue;
        if (cross_n != 2) throw StructureError("degenerate zero level set in a triangle");
        Seg s{ce, cp, t};
        const int id = static_cast<int>(segs.size());
        segs.push_back(s);
        edge_to_seg[ce[0]].push_back(id);
        edge_to_seg[ce[1]].push_back(id);
    }
    std::vector<char> used(segs.size(), 0);
    std::vector<LevelCurve> out;
    for (std::size_t s0 = 0; s0 < segs.size(); ++s0) {
        if (used[s0]) continue;
        LevelCurve lc;
        std::size_t cur = s0;
        std::pair<int, int> enter = segs[s0].edges[0];
        while (!used[cur]) {
            used[cur] = 1;
            const Seg& sg = segs[cur];
            const bool enter_first = (sg.edges[0] == enter);
            const auto exit_edge = enter_first ? sg.edges[1] : sg.edges[0];
            const cplx pa = enter_first ? sg.pts[0] : sg.pts[1];
            const cplx pb = enter_first ? sg.pts[1] : sg.pts[0];
            lc.triangles.push_back(sg.tri);
            lc.points.push_back(pa);
            lc.points_b.push_back(pb);
            lc.length += dist_disk(pa, pb);
            // Next segment across the exit edge.
            const auto& cands = edge_to_seg[exit_edge];
            int next = -1;
            for (int c : cands)
                if (static_cast<std::size_t>(c) != cur) next = c;
            if (next < 0) break;  // open chain should not happen on a closed mesh
            cur = static_cast<std::size_t>(next);
            enter = exit_edge;
        }
        out.push_back(std::move(lc));
    }
    return out;
}

InterfaceTopology classify_interface(const std::vector<LevelCurve>& curves,
                                     const mesh::TriangulatedSurface& m,
                                     const PhaseField& u,
                                     const fuchsian::SurfaceModel& model) {
    InterfaceTopology topo;
    if (curves.empty()) return topo;
    const double h = m.max_edge();
    const double r_contact = std::max(2.5 * h, 1.3 * u.epsilon);
    const int depth = std::max(3, static_cast<int>(std::ceil(4 * u.epsilon / h)));

    // Vertex adjacency for the side-amplitude probes.
    std::vector<std::vector<int>> nbr(static_cast<std::size_t>(m.num_vertices()));
    for (const auto& tri : m.triangles) {
        for (int e = 0; e < 3; ++e) {
            nbr[static_cast<std::size_t>(tri[static_cast<std::size_t>(e)])].push_back(
                tri[static_cast<std::size_t>((e + 1) % 3)]);
            nbr[static_cast<std::size_t>(tri[static_cast<std::size_t>((e + 1) % 3)])].push_back(
                tri[static_cast<std::size_t>(e)]);
        }
    }
    auto side_amplitude = [&](const LevelCurve& lc, bool positive) {
        std::vector<int> frontier;
        std::map<int, char> seen;
        for (int t : lc.triangles) {
            for (int e = 0; e < 3; ++e) {
                const int v = m.triangles[static_cast<std::size_t>(t)][static_cast<std::size_t>(e)];
                if ((u.u(v) >= 0) == positive && !seen.count(v)) {
                    seen[v] = 1;
                    frontier.push_back(v);
                }
            }
        }
        double amp = 0;
        for (int d = 0; d < depth && !frontier.empty(); ++d) {
            std::vector<int> next;
            for (int v : frontier) {
                amp = std::max(amp, std::abs(u.u(v)));
                for (int w : nbr[static_cast<std::size_t>(v)]) {
                    if ((u.u(w) >= 0) == positive && !seen.count(w)) {
                        seen[w] = 1;
                        next.push_back(w);
                    }
                }
            }
            frontier = std::move(next);
        }
        return amp;
    };

    std::vector<int> developed;
    for (int c = 0; c < static_cast<int>(curves.size()); ++c) {
        const auto& lc = curves[static_cast<std::size_t>(c)];
        if (side_amplitude(lc, true) >= 0.6 && side_amplitude(lc, false) >= 0.6) {
            developed.push_back(c);
            topo.developed_length += lc.length;
        } else {
            ++topo.grazing;
        }
    }
    if (developed.empty()) return topo;

    // Points in per-pants frames (mirror charts reflected back).
    struct Pt {
        int curve, pants, param;
        cplx pos;
    };
    std::vector<Pt> pts;
    for (int ci = 0; ci < static_cast<int>(developed.size()); ++ci) {
        const auto& lc = curves[static_cast<std::size_t>(developed[static_cast<std::size_t>(ci)])];
        for (int k = 0; k < static_cast<int>(lc.points.size()); ++k) {
            const int chart =
                m.triangle_chart[static_cast<std::size_t>(lc.triangles[static_cast<std::size_t>(k)])];
            const int p = chart / 2;
            cplx z = lc.points[static_cast<std::size_t>(k)];
            if (chart % 2 == 1) {
                const PantsGeometry& geo = model.pants(p);
                z = uhp_to_disk(geo.seam_reflection(0).apply_uhp(disk_to_uhp(std::conj(z))));
            }
            pts.push_back({ci, p, k, z});
        }
    }
    // Contact pairs: different curves, or the same curve at parameter distance
    // beyond a short window.
    std::vector<std::pair<int, int>> contacts;
    for (std::size_t a = 0; a < pts.size(); ++a) {
        for (std::size_t b = a + 1; b < pts.size(); ++b) {
            if (pts[a].pants != pts[b].pants) continue;
            if (pts[a].curve == pts[b].curve) {
                const int len = static_cast<int>(
                    curves[static_cast<std::size_t>(
                               developed[static_cast<std::size_t>(pts[a].curve)])]
                        .points.size());
                const int d = std::abs(pts[a].param - pts[b].param);
                if (std::min(d, len - d) <= 2 * static_cast<int>(std::ceil(r_contact / h)))
                    continue;
            }
            if (dist_disk(pts[a].pos, pts[b].pos) < r_contact)
                contacts.push_back({static_cast<int>(a), static_cast<int>(b)});
        }
    }
    // Cluster contact points metrically; merge curves across clusters.
    std::vector<int> involved;
    for (const auto& [a, b] : contacts) {
        involved.push_back(a);
        involved.push_back(b);
    }
    std::sort(involved.begin(), involved.end());
    involved.erase(std::unique(involved.begin(), involved.end()), involved.end());
    std::map<int, int> slot;
    for (int i = 0; i < static_cast<int>(involved.size()); ++i)
        slot[involved[static_cast<std::size_t>(i)]] = i;
    std::vector<int> puf(involved.size());
    std::iota(puf.begin(), puf.end(), 0);
    std::function<int(int)> pfind = [&](int x) {
        while (puf[static_cast<std::size_t>(x)] != x) {
            puf[static_cast<std::size_t>(x)] =
                puf[static_cast<std::size_t>(puf[static_cast<std::size_t>(x)])];
            x = puf[static_cast<std::size_t>(x)];
        }
        return x;
    };
    for (std::size_t a = 0; a < involved.size(); ++a) {
        for (std::size_t b = a + 1; b < involved.size(); ++b) {
            const Pt& pa = pts[static_cast<std::size_t>(involved[a])];
            const Pt& pb = pts[static_cast<std::size_t>(involved[b])];
            if (pa.pants == pb.pants && dist_disk(pa.pos, pb.pos) < 2 * r_contact) {
                const int ra = pfind(static_cast<int>(a)), rb = pfind(static_cast<int>(b));
                if (ra != rb) puf[static_cast<std::size_t>(std::max(ra, rb))] = std::min(ra, rb);
            }
        }
    }
    std::map<int, std::vector<int>> cluster_curves;
    for (std::size_t a = 0; a < involved.size(); ++a) {
        cluster_curves[pfind(static_cast<int>(a))].push_back(
            pts[static_cast<std::size_t>(involved[a])].curve);
    }
    topo.crossings = static_cast<int>(cluster_curves.size());
    std::vector<int> cuf(developed.size());
    std::iota(cuf.begin(), cuf.end(), 0);
    std::function<int(int)> cfind = [&](int x) {
        while (cuf[static_cast<std::size_t>(x)] != x) {
            cuf[static_cast<std::size_t>(x)] =
                cuf[static_cast<std::size_t>(cuf[static_cast<std::size_t>(x)])];
            x = cuf[static_cast<std::size_t>(x)];
        }
        return x;
    };
    for (auto& [cl, cs] : cluster_curves) {
        for (std::size_t a = 1; a < cs.size(); ++a) {
            const int ra = cfind(cs[0]), rb = cfind(cs[static_cast<std::size_t>(a)]);
            if (ra != rb) cuf[static_cast<std::size_t>(std::max(ra, rb))] = std::min(ra, rb);
        }
    }
    std::map<int, int> comp;
    for (int c = 0; c < static_cast<int>(developed.size()); ++c) comp[cfind(c)] = 1;
    topo.components = static_cast<int>(comp.size());
    return topo;
}

double hausdorff_to_reference(const std::vector<LevelCurve>& curves,
                              const mesh::TriangulatedSurface& m,
                              const fuchsian::SurfaceModel& model, int pants,
                              const std::vector<cplx>& reference) {
    // Map level points into the pants chart.
    const PantsGeometry& geo = model.pants(pants);
    auto to_pants = [&](int tri, cplx z) {
        const int chart = m.triangle_chart[static_cast<std::size_t>(tri)];
        if (chart / 2 != pants) return std::optional<cplx>{};
        if (chart % 2 == 0) return std::optional<cplx>{z};
        const cplx w = std::conj(z);
        const cplx uhp = disk_to_uhp(w);
        return std::optional<cplx>{uhp_to_disk(geo.seam_reflection(0).apply_uhp(uhp))};
    };
    std::vector<cplx> level_pts;
    for (const auto& lc : curves) {
        for (std::size_t k = 0; k < lc.points.size(); ++k) {
            const auto p = to_pants(lc.triangles[k], lc.points[k]);
            if (p) level_pts.push_back(*p);
        }
    }
    if (level_pts.empty() || reference.empty()) return std::numeric_limits<double>::infinity();
    // Quotient distance within the pants: allow short deck words.
    const std::vector<MobiusIsometry> gens{geo.cuff_holonomy(0), geo.cuff_holonomy(1)};
    double r_all = 0;
    for (const cplx& z : level_pts) r_all = std::max(r_all, dist_disk({0, 0}, z));
    for (const cplx& z : reference) r_all = std::max(r_all, dist_disk({0, 0}, z));
    const fuchsian::GroupBall ball = fuchsian::enumerate_ball(gens, 2 * r_all + 0.5, 64, 500'000);
    auto dq = [&](cplx a, cplx b) {
        double best = dist_disk(a, b);
        for (const auto& el : ball.elems) best = std::min(best, dist_disk(a, el.m.apply_disk(b)));
        return best;
    };
    auto one_sided = [&](const std::vector<cplx>& from, const std::vector<cplx>& to) {
        double worst = 0;
        for (const cplx& a : from) {
            double best = std::numeric_limits<double>::infinity();
            for (const cplx& b : to) best = std::min(best, dq(a, b));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(one_sided(level_pts, reference), one_sided(reference, level_pts));
}

}  // namespace hypwidth::allencahn
