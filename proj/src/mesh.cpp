#include "hypwidth/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <istream>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "hypwidth/pants.hpp"

namespace hypwidth::mesh {

namespace {

double heron_area(double a, double b, double c) {
    const double s = (a + b + c) / 2;
    const double q = s * (s - a) * (s - b) * (s - c);
    return q > 0 ? std::sqrt(q) : 0.0;
}

// --- hexagon half meshing ---------------------------------------------------

struct SideCircle {  // geodesic carrying a hexagon side, as a Euclidean circle
    bool is_line = false;
    cplx center;        // for circles
    double radius = 0;  // for circles
    cplx a, b;          // endpoints (for lines)
    double side_of(cplx z) const {
        if (is_line) {
            const cplx d = b - a;
            return d.real() * (z.imag() - a.imag()) - d.imag() * (z.real() - a.real());
        }
        return std::abs(z - center) - radius;
    }
};

SideCircle side_circle(cplx a, cplx b) {
    SideCircle s;
    // Orthocircle through a, b: center c with 2 a.c = |a|^2 + 1, 2 b.c = |b|^2 + 1.
    const double a11 = 2 * a.real(), a12 = 2 * a.imag();
    const double a21 = 2 * b.real(), a22 = 2 * b.imag();
    const double r1 = std::norm(a) + 1, r2 = std::norm(b) + 1;
    const double det = a11 * a22 - a12 * a21;
    if (std::abs(det) < 1e-12) {
        s.is_line = true;
        s.a = a;
        s.b = b;
        return s;
    }
    s.center = cplx((r1 * a22 - r2 * a12) / det, (a11 * r2 - a21 * r1) / det);
    s.radius = std::sqrt(std::max(0.0, std::norm(s.center) - 1.0));
    return s;
}

struct HexMesh {
    std::vector<cplx> pts;
    // Boundary sample ids: per side s (0..5), the ordered sample indices
    // (corners included, shared between adjacent sides).
    std::array<std::vector<int>, 6> side_samples;
    std::vector<std::array<int, 3>> tris;  // CCW in the chart
};

// Annular hyperbolic grid for Poisson-disk distance queries.
class AnnularGrid {
  public:
    AnnularGrid(double rmax, double h) : h_(h), nr_(static_cast<int>(rmax / h) + 2) {
        rings_.resize(static_cast<std::size_t>(nr_));
        counts_.resize(static_cast<std::size_t>(nr_));
        for (int k = 0; k < nr_; ++k) {
            const double rho = (k + 0.5) * h_;
            counts_[static_cast<std::size_t>(k)] =
                std::max(8, static_cast<int>(std::ceil(2 * M_PI * std::sinh(rho) / h_)));
            rings_[static_cast<std::size_t>(k)].resize(
                static_cast<std::size_t>(counts_[static_cast<std::size_t>(k)]));
        }
    }
    void insert(cplx z, int id) {
        auto [k, t] = locate(z);
        rings_[static_cast<std::size_t>(k)][static_cast<std::size_t>(t)].push_back(id);
    }
    template <class F>
    void for_near(cplx z, F&& f) const {
        auto [k, t] = locate(z);
        const double theta = std::arg(z) + M_PI;
        for (int dk = -2; dk <= 2; ++dk) {
            const int kk = k + dk;
            if (kk < 0 || kk >= nr_) continue;
            const int n = counts_[static_cast<std::size_t>(kk)];
            const int tc = std::min(n - 1, static_cast<int>(theta / (2 * M_PI) * n));
            const double rho = std::max((kk + 0.5) * h_, h_);
            const double need = 2.5 * h_ / std::sinh(rho);
            const int span = std::min(n / 2, 1 + static_cast<int>(std::ceil(need / (2 * M_PI / n))));
            for (int dt = -span; dt <= span; ++dt) {
                const int tt = ((tc + dt) % n + n) % n;
                for (int id : rings_[static_cast<std::size_t>(kk)][static_cast<std::size_t>(tt)])
                    f(id);
            }
        }
        (void)t;
    }

  private:
    std::pair<int, int> locate(cplx z) const {
        const double rho = dist_disk({0, 0}, z);
        int k = std::min(nr_ - 1, static_cast<int>(rho / h_));
        const double th = std::arg(z) + M_PI;
        int t = static_cast<int>(th / (2 * M_PI) * counts_[static_cast<std::size_t>(k)]);
        t = std::min(std::max(t, 0), counts_[static_cast<std::size_t>(k)] - 1);
        return {k, t};
    }
    double h_;
    int nr_;
    std::vector<int> counts_;
    std::vector<std::vector<std::vector<int>>> rings_;
};

// Bowyer-Watson Delaunay in Euclidean chart coordinates (valid as hyperbolic
// Delaunay while circumcircles stay inside the unit disk).
std::vector<std::array<int, 3>> delaunay(const std::vector<cplx>& pts) {
    struct Tri {
        int a, b, c;
        cplx cc;
        double r2;
        bool alive = true;
    };
    const int n = static_cast<int>(pts.size());
    std::vector<cplx> P = pts;
    // Super-triangle.
    P.push_back(cplx(-8, -8));
    P.push_back(cplx(8, -8));
    P.push_back(cplx(0, 12));
    auto circum = [&](int a, int b, int c, cplx& cc, double& r2) {
        const cplx A = P[static_cast<std::size_t>(a)], B = P[static_cast<std::size_t>(b)],
                   C = P[static_cast<std::size_t>(c)];
        const double d = 2 * (A.real() * (B.imag() - C.imag()) + B.real() * (C.imag() - A.imag()) +
                              C.real() * (A.imag() - B.imag()));
        if (std::abs(d) < 1e-300) {
            r2 = std::numeric_limits<double>::infinity();
            cc = 0;
            return;
        }
        const double ux = (std::norm(A) * (B.imag() - C.imag()) +
                           std::norm(B) * (C.imag() - A.imag()) +
                           std::norm(C) * (A.imag() - B.imag())) /
                          d;
        const double uy = (std::norm(A) * (C.real() - B.real()) +
                           std::norm(B) * (A.real() - C.real()) +
                           std::norm(C) * (B.real() - A.real())) /
                          d;
        cc = cplx(ux, uy);
        r2 = std::norm(cc - A);
    };
    std::vector<Tri> tris;
    {
        Tri t{n, n + 1, n + 2, 0, 0, true};
        circum(t.a, t.b, t.c, t.cc, t.r2);
        tris.push_back(t);
    }
    for (int ip = 0; ip < n; ++ip) {
        const cplx p = P[static_cast<std::size_t>(ip)];
        std::vector<int> bad;
        for (int k = 0; k < static_cast<int>(tris.size()); ++k) {
            const Tri& t = tris[static_cast<std::size_t>(k)];
            if (t.alive && std::norm(p - t.cc) < t.r2 * (1 + 1e-12)) bad.push_back(k);
        }
        std::map<std::pair<int, int>, int> edge_count;
        for (int k : bad) {
            Tri& t = tris[static_cast<std::size_t>(k)];
            t.alive = false;
            const std::array<std::pair<int, int>, 3> es{{{t.a, t.b}, {t.b, t.c}, {t.c, t.a}}};
            for (auto [x, y] : es) {
                const auto key = std::minmax(x, y);
                edge_count[{key.first, key.second}]++;
            }
        }
        for (int k : bad) {
            const Tri& t = tris[static_cast<std::size_t>(k)];
            const std::array<std::pair<int, int>, 3> es{{{t.a, t.b}, {t.b, t.c}, {t.c, t.a}}};
            for (auto [x, y] : es) {
                const auto key = std::minmax(x, y);
                if (edge_count[{key.first, key.second}] == 1) {
                    Tri nt{x, y, ip, 0, 0, true};
                    circum(nt.a, nt.b, nt.c, nt.cc, nt.r2);
                    tris.push_back(nt);
                }
            }
        }
    }
    std::vector<std::array<int, 3>> out;
    for (const Tri& t : tris) {
        if (!t.alive || t.a >= n || t.b >= n || t.c >= n) continue;
        // CCW orientation.
        const cplx A = P[static_cast<std::size_t>(t.a)], B = P[static_cast<std::size_t>(t.b)],
                   C = P[static_cast<std::size_t>(t.c)];
        const double cross = (B.real() - A.real()) * (C.imag() - A.imag()) -
                             (B.imag() - A.imag()) * (C.real() - A.real());
        if (cross >= 0) out.push_back({t.a, t.b, t.c});
        else out.push_back({t.a, t.c, t.b});
    }
    return out;
}

cplx karcher_mean(const std::vector<cplx>& q, cplx start) {
    cplx p = start;
    for (int it = 0; it < 4; ++it) {
        // Average the log map: log_p(x) ~ chart tangent via Mobius translate.
        cplx acc{0, 0};
        for (cplx x : q) {
            const cplx w = (x - p) / (cplx(1, 0) - std::conj(p) * x);
            const double r = std::abs(w);
            if (r < 1e-15) continue;
            acc += (w / r) * 2.0 * std::atanh(std::min(r, 1 - 1e-14));
        }
        acc /= static_cast<double>(q.size());
        const double d = std::abs(acc);
        if (d < 1e-14) break;
        const cplx step = std::tanh(d / 2) * (acc / d);
        p = (step + p) / (cplx(1, 0) + std::conj(p) * step);
    }
    return p;
}

HexMesh mesh_hexagon(const PantsGeometry& geo, double h, std::uint64_t seed,
                     const std::array<int, 6>& side_counts) {
    HexMesh hm;
    const std::array<cplx, 6> v = geo.hexagon_vertices_disk();
    std::array<SideCircle, 6> circles;
    cplx centroid{0, 0};
    for (int s = 0; s < 6; ++s) centroid += v[static_cast<std::size_t>(s)];
    centroid /= 6.0;
    std::array<double, 6> inner_sign{};
    for (int s = 0; s < 6; ++s) {
        circles[static_cast<std::size_t>(s)] =
            side_circle(v[static_cast<std::size_t>(s)], v[static_cast<std::size_t>((s + 1) % 6)]);
        inner_sign[static_cast<std::size_t>(s)] =
            circles[static_cast<std::size_t>(s)].side_of(centroid) > 0 ? 1.0 : -1.0;
    }
    auto inside = [&](cplx z, double margin) {
        for (int s = 0; s < 6; ++s) {
            if (inner_sign[static_cast<std::size_t>(s)] *
                    circles[static_cast<std::size_t>(s)].side_of(z) <
                margin)
                return false;
        }
        return true;
    };

    // Boundary samples (corners shared).
    std::array<int, 6> corner_id{};
    for (int s = 0; s < 6; ++s) {
        corner_id[static_cast<std::size_t>(s)] = static_cast<int>(hm.pts.size());
        hm.pts.push_back(v[static_cast<std::size_t>(s)]);
    }
    for (int s = 0; s < 6; ++s) {
        const int n = side_counts[static_cast<std::size_t>(s)];
        auto& ids = hm.side_samples[static_cast<std::size_t>(s)];
        ids.push_back(corner_id[static_cast<std::size_t>(s)]);
        for (int j = 1; j < n; ++j) {
            ids.push_back(static_cast<int>(hm.pts.size()));
            hm.pts.push_back(geodesic_point_disk(v[static_cast<std::size_t>(s)],
                                                 v[static_cast<std::size_t>((s + 1) % 6)],
                                                 static_cast<double>(j) / n));
        }
        ids.push_back(corner_id[static_cast<std::size_t>((s + 1) % 6)]);
    }
    const int n_boundary = static_cast<int>(hm.pts.size());

    // Poisson-disk interior fill, uniform in hyperbolic area.
    double rmax = 0;
    for (int s = 0; s < 6; ++s) rmax = std::max(rmax, dist_disk({0, 0}, v[static_cast<std::size_t>(s)]));
    AnnularGrid grid(rmax + 1, h);
    for (int i = 0; i < n_boundary; ++i) grid.insert(hm.pts[static_cast<std::size_t>(i)], i);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double area_upper = 2 * M_PI * (std::cosh(rmax) - 1.0);
    const long attempts = std::lround(60.0 * area_upper / (h * h) + 512);
    const double r_int = 0.82 * h, r_bnd = 0.72 * h;
    for (long a = 0; a < attempts; ++a) {
        const double rho = std::acosh(1 + uni(rng) * (std::cosh(rmax) - 1));
        const double th = 2 * M_PI * uni(rng);
        const cplx z = std::tanh(rho / 2) * cplx(std::cos(th), std::sin(th));
        if (!inside(z, 1e-9)) continue;
        bool ok = true;
        grid.for_near(z, [&](int id) {
            if (!ok) return;
            const double need = id < n_boundary ? r_bnd : r_int;
            if (dist_disk(z, hm.pts[static_cast<std::size_t>(id)]) < need) ok = false;
        });
        if (!ok) continue;
        grid.insert(z, static_cast<int>(hm.pts.size()));
        hm.pts.push_back(z);
    }

    // Delaunay + Lloyd smoothing of the interior.
    for (int round = 0; round < 3; ++round) {
        hm.tris = delaunay(hm.pts);
        std::vector<std::vector<int>> nbr(hm.pts.size());
        for (const auto& t : hm.tris) {
            for (int e = 0; e < 3; ++e) {
                const int x = t[static_cast<std::size_t>(e)], y = t[static_cast<std::size_t>((e + 1) % 3)];
                nbr[static_cast<std::size_t>(x)].push_back(y);
                nbr[static_cast<std::size_t>(y)].push_back(x);
            }
        }
        std::vector<cplx> next = hm.pts;
        for (int i = n_boundary; i < static_cast<int>(hm.pts.size()); ++i) {
            std::vector<cplx> q;
            for (int j : nbr[static_cast<std::size_t>(i)]) q.push_back(hm.pts[static_cast<std::size_t>(j)]);
            if (q.empty()) continue;
            const cplx m = karcher_mean(q, hm.pts[static_cast<std::size_t>(i)]);
            if (inside(m, 1e-9)) next[static_cast<std::size_t>(i)] = m;
        }
        hm.pts = std::move(next);
    }
    hm.tris = delaunay(hm.pts);

    // Drop triangles outside the hexagon (concave chart boundary).
    std::vector<std::array<int, 3>> kept;
    for (const auto& t : hm.tris) {
        const cplx g = (hm.pts[static_cast<std::size_t>(t[0])] + hm.pts[static_cast<std::size_t>(t[1])] +
                        hm.pts[static_cast<std::size_t>(t[2])]) /
                       3.0;
        if (inside(g, -1e-12)) kept.push_back(t);
    }
    hm.tris = std::move(kept);
    return hm;
}

}  // namespace

double TriangulatedSurface::area() const {
    double a = 0;
    for (const auto& e : edge_lengths) a += heron_area(e[0], e[1], e[2]);
    return a;
}

double TriangulatedSurface::gauss_bonnet_relative_error() const {
    const double want = 4 * M_PI * (genus - 1);
    return std::abs(area() - want) / want;
}

double TriangulatedSurface::max_edge() const {
    double m = 0;
    for (const auto& e : edge_lengths) m = std::max({m, e[0], e[1], e[2]});
    return m;
}

void TriangulatedSurface::validate() const {
    std::map<std::pair<int, int>, int> edge_use;
    for (const auto& t : triangles) {
        for (int e = 0; e < 3; ++e) {
            const auto mm = std::minmax(t[static_cast<std::size_t>(e)],
                                        t[static_cast<std::size_t>((e + 1) % 3)]);
            edge_use[{mm.first, mm.second}]++;
        }
    }
    for (const auto& [e, c] : edge_use) {
        if (c != 2)
            throw StructureError("mesh edge (" + std::to_string(e.first) + "," +
                                 std::to_string(e.second) + ") used " + std::to_string(c) +
                                 " times; surface is not closed");
    }
    const int V = num_vertices(), E = static_cast<int>(edge_use.size()), F = num_triangles();
    if (V - E + F != 2 - 2 * genus) throw StructureError("mesh Euler characteristic mismatch");
    for (const auto& el : edge_lengths) {
        if (!(el[0] + el[1] > el[2] && el[1] + el[2] > el[0] && el[2] + el[0] > el[1]))
            throw StructureError("mesh triangle inequality violated");
    }
}

TriangulatedSurface build_surface_mesh(const fuchsian::SurfaceModel& model, double target_h,
                                       std::uint64_t seed) {
    const auto& spec = model.spec();
    if (spec.kind != fuchsian::SurfaceSpec::Kind::PantsGlued)
        throw DomainError("meshing is implemented for pants-glued surfaces");
    const int P = model.num_pants();

    // Sample counts: cuff sides from the shared cuff, seam sides per pants.
    std::vector<std::array<int, 6>> counts(static_cast<std::size_t>(P));
    std::vector<std::array<int, 3>> slot_edge(static_cast<std::size_t>(P), {-1, -1, -1});
    for (int e = 0; e < static_cast<int>(spec.edges.size()); ++e) {
        const auto& ed = spec.edges[static_cast<std::size_t>(e)];
        slot_edge[static_cast<std::size_t>(ed.pants_a)][static_cast<std::size_t>(ed.slot_a)] = e;
        slot_edge[static_cast<std::size_t>(ed.pants_b)][static_cast<std::size_t>(ed.slot_b)] = e;
    }
    for (int p = 0; p < P; ++p) {
        const PantsGeometry& geo = model.pants(p);
        for (int k = 0; k < 3; ++k) {
            const double half_cuff = geo.cuff_length(k) / 2;
            counts[static_cast<std::size_t>(p)][static_cast<std::size_t>(2 * k)] =
                std::max(2, static_cast<int>(std::lround(half_cuff / target_h)));
            const double seam = geo.hexagon_side_lengths()[static_cast<std::size_t>(2 * k + 1)];
            counts[static_cast<std::size_t>(p)][static_cast<std::size_t>(2 * k + 1)] =
                std::max(2, static_cast<int>(std::lround(seam / target_h)));
        }
    }

    // Mesh each pants' base hexagon; the mirror half is the conjugated copy.
    std::vector<HexMesh> base(static_cast<std::size_t>(P));
    for (int p = 0; p < P; ++p)
        base[static_cast<std::size_t>(p)] =
            mesh_hexagon(model.pants(p), target_h, seed + static_cast<std::uint64_t>(p) * 7919,
                         counts[static_cast<std::size_t>(p)]);

    // Global ids via union-find over (chart, local index).
    std::vector<int> offset(static_cast<std::size_t>(2 * P + 1), 0);
    for (int p = 0; p < P; ++p) {
        const int np = static_cast<int>(base[static_cast<std::size_t>(p)].pts.size());
        offset[static_cast<std::size_t>(2 * p + 1)] = offset[static_cast<std::size_t>(2 * p)] + np;
        offset[static_cast<std::size_t>(2 * p + 2)] =
            offset[static_cast<std::size_t>(2 * p + 1)] + np;
    }
    const int total = offset[static_cast<std::size_t>(2 * P)];
    std::vector<int> uf(static_cast<std::size_t>(total));
    std::iota(uf.begin(), uf.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (uf[static_cast<std::size_t>(x)] != x) {
            uf[static_cast<std::size_t>(x)] = uf[static_cast<std::size_t>(uf[static_cast<std::size_t>(x)])];
            x = uf[static_cast<std::size_t>(x)];
        }
        return x;
    };
    auto unite = [&](int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) uf[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    };
    auto gid = [&](int chart, int local) { return offset[static_cast<std::size_t>(chart)] + local; };

    // (a) Seam identification within each pants: sides 1, 3, 5, same index.
    for (int p = 0; p < P; ++p) {
        for (int s : {1, 3, 5}) {
            const auto& ids = base[static_cast<std::size_t>(p)].side_samples[static_cast<std::size_t>(s)];
            for (int j = 0; j < static_cast<int>(ids.size()); ++j) {
                unite(gid(2 * p, ids[static_cast<std::size_t>(j)]),
                      gid(2 * p + 1, ids[static_cast<std::size_t>(j)]));
            }
        }
    }
    // (b) Cuff identification across edges: (p, half 0, j) <-> (q, half 1, j+shift).
    for (const auto& ed : spec.edges) {
        const int sa = 2 * ed.slot_a, sb = 2 * ed.slot_b;
        const auto& ia = base[static_cast<std::size_t>(ed.pants_a)].side_samples[static_cast<std::size_t>(sa)];
        const auto& ib = base[static_cast<std::size_t>(ed.pants_b)].side_samples[static_cast<std::size_t>(sb)];
        if (ia.size() != ib.size())
            throw StructureError("cuff sample counts differ across a gluing");
        const int n = static_cast<int>(ia.size()) - 1;  // samples 0..n
        const double delta = ed.length / (2 * n);
        const double shift_f = ed.twist / delta;
        const int shift = static_cast<int>(std::lround(shift_f));
        if (std::abs(shift_f - shift) > 1e-9)
            throw StructureError("mesh gluing needs the twist to be a multiple of the sample spacing");
        // Circle parametrization: tau(half0, j) = j, tau(half1, j) = 2n - j (mod 2n).
        auto circle_id = [&](int pants, int side, int tau) {
            tau = ((tau % (2 * n)) + 2 * n) % (2 * n);
            const auto& ids =
                base[static_cast<std::size_t>(pants)].side_samples[static_cast<std::size_t>(side)];
            if (tau <= n) return gid(2 * pants, ids[static_cast<std::size_t>(tau)]);
            return gid(2 * pants + 1, ids[static_cast<std::size_t>(2 * n - tau)]);
        };
        for (int tau = 0; tau < 2 * n; ++tau) {
            unite(circle_id(ed.pants_a, sa, tau), circle_id(ed.pants_b, sb, shift - tau));
        }
    }

    // Collect vertices and triangles.
    TriangulatedSurface out;
    out.target_h = target_h;
    out.genus = spec.genus;
    std::vector<int> root_to_vertex(static_cast<std::size_t>(total), -1);
    out.identifications.clear();
    auto chart_pos = [&](int chart, int local) {
        const cplx z = base[static_cast<std::size_t>(chart / 2)].pts[static_cast<std::size_t>(local)];
        return (chart % 2 == 0) ? z : std::conj(z);
    };
    for (int chart = 0; chart < 2 * P; ++chart) {
        const int np = static_cast<int>(base[static_cast<std::size_t>(chart / 2)].pts.size());
        for (int local = 0; local < np; ++local) {
            const int g = gid(chart, local);
            const int r = find(g);
            if (root_to_vertex[static_cast<std::size_t>(r)] < 0) {
                root_to_vertex[static_cast<std::size_t>(r)] = static_cast<int>(out.vertices.size());
                out.vertices.push_back({chart, chart_pos(chart, local)});
                out.identifications.push_back({});
            }
            out.identifications[static_cast<std::size_t>(
                                    root_to_vertex[static_cast<std::size_t>(r)])]
                .push_back({chart, chart_pos(chart, local)});
        }
    }
    for (int chart = 0; chart < 2 * P; ++chart) {
        const HexMesh& hm = base[static_cast<std::size_t>(chart / 2)];
        const bool mirror = (chart % 2 == 1);
        for (const auto& t : hm.tris) {
            std::array<int, 3> tri{};
            std::array<cplx, 3> cor{};
            for (int k = 0; k < 3; ++k) {
                const int local = t[static_cast<std::size_t>(mirror ? 2 - k : k)];
                tri[static_cast<std::size_t>(k)] =
                    root_to_vertex[static_cast<std::size_t>(find(gid(chart, local)))];
                cor[static_cast<std::size_t>(k)] = chart_pos(chart, local);
            }
            std::array<double, 3> el{};
            for (int k = 0; k < 3; ++k) {
                el[static_cast<std::size_t>(k)] = dist_disk(cor[static_cast<std::size_t>((k + 1) % 3)],
                                                            cor[static_cast<std::size_t>((k + 2) % 3)]);
            }
            out.triangles.push_back(tri);
            out.triangle_chart.push_back(chart);
            out.corners.push_back(cor);
            out.edge_lengths.push_back(el);
        }
    }
    out.validate();
    return out;
}

void write_mesh(std::ostream& os, const TriangulatedSurface& m) {
    os << "hypwidth-mesh 1\n";
    os << "genus " << m.genus << " target_h " << m.target_h << "\n";
    os << "vertices " << m.num_vertices() << "\n";
    char buf[160];
    for (const auto& v : m.vertices) {
        std::snprintf(buf, sizeof buf, "%d %.17g %.17g\n", v.chart, v.pos.real(), v.pos.imag());
        os << buf;
    }
    os << "triangles " << m.num_triangles() << "\n";
    for (int t = 0; t < m.num_triangles(); ++t) {
        const auto& tri = m.triangles[static_cast<std::size_t>(t)];
        const auto& cor = m.corners[static_cast<std::size_t>(t)];
        std::snprintf(buf, sizeof buf, "%d %d %d %d %.17g %.17g %.17g %.17g %.17g %.17g\n",
                      tri[0], tri[1], tri[2], m.triangle_chart[static_cast<std::size_t>(t)],
                      cor[0].real(), cor[0].imag(), cor[1].real(), cor[1].imag(), cor[2].real(),
                      cor[2].imag());
        os << buf;
    }
    os << "identifications " << m.identifications.size() << "\n";
    for (std::size_t v = 0; v < m.identifications.size(); ++v) {
        os << m.identifications[v].size();
        for (const auto& [chart, z] : m.identifications[v]) {
            std::snprintf(buf, sizeof buf, " %d %.17g %.17g", chart, z.real(), z.imag());
            os << buf;
        }
        os << "\n";
    }
}

TriangulatedSurface read_mesh(std::istream& is) {
    TriangulatedSurface m;
    std::string tag;
    int version = 0;
    is >> tag >> version;
    if (tag != "hypwidth-mesh" || version != 1) throw StructureError("bad mesh file header");
    is >> tag >> m.genus >> tag >> m.target_h;
    int nv = 0;
    is >> tag >> nv;
    m.vertices.resize(static_cast<std::size_t>(nv));
    for (auto& v : m.vertices) {
        double x, y;
        is >> v.chart >> x >> y;
        v.pos = cplx(x, y);
    }
    int nt = 0;
    is >> tag >> nt;
    for (int t = 0; t < nt; ++t) {
        std::array<int, 3> tri{};
        int chart;
        std::array<cplx, 3> cor{};
        double x, y;
        is >> tri[0] >> tri[1] >> tri[2] >> chart;
        for (int k = 0; k < 3; ++k) {
            is >> x >> y;
            cor[static_cast<std::size_t>(k)] = cplx(x, y);
        }
        std::array<double, 3> el{};
        for (int k = 0; k < 3; ++k)
            el[static_cast<std::size_t>(k)] = dist_disk(cor[static_cast<std::size_t>((k + 1) % 3)],
                                                        cor[static_cast<std::size_t>((k + 2) % 3)]);
        m.triangles.push_back(tri);
        m.triangle_chart.push_back(chart);
        m.corners.push_back(cor);
        m.edge_lengths.push_back(el);
    }
    std::size_t ni = 0;
    is >> tag >> ni;
    m.identifications.resize(ni);
    for (auto& group : m.identifications) {
        std::size_t k = 0;
        is >> k;
        group.resize(k);
        for (auto& [chart, z] : group) {
            double x, y;
            is >> chart >> x >> y;
            z = cplx(x, y);
        }
    }
    if (!is) throw StructureError("truncated mesh file");
    m.validate();
    return m;
}

}  // namespace hypwidth::mesh
