#include "hypwidth/sweepout.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

namespace hypwidth::sweepout {

namespace {

Word reduce_free(const Word& w) {
    Word out;
    for (int l : w) {
        if (l == 0) continue;
        if (!out.empty() && out.back() == -l) out.pop_back();
        else out.push_back(l);
    }
    return out;
}

Word concat(const Word& a, const Word& b) {
    Word w = a;
    w.insert(w.end(), b.begin(), b.end());
    return reduce_free(w);
}

Word concat(const Word& a, const Word& b, const Word& c) { return concat(concat(a, b), c); }

Word inverse_word(const Word& w) {
    Word out(w.rbegin(), w.rend());
    for (int& l : out) l = -l;
    return out;
}

}  // namespace

PantsDomain::PantsDomain(const hyptrig::CuffLengths& cuffs) : geo_(cuffs) {
    gen_[0] = geo_.cuff_holonomy(0).normalized();
    gen_[1] = geo_.cuff_holonomy(1).normalized();
}

PantsDomain build_pants_domain(const hyptrig::CuffLengths& cuffs) { return PantsDomain(cuffs); }

MobiusIsometry PantsDomain::word_matrix(const Word& w) const {
    MobiusIsometry m;
    for (int l : w) {
        const MobiusIsometry& g = gen_[std::abs(l) - 1];
        m = (m * (l > 0 ? g : g.inverse())).normalized();
    }
    return m;
}

const MobiusIsometry& PantsDomain::generator(int k) const { return gen_[k]; }

double DiscreteCurve::length(const PantsDomain& dom) const {
    double sum = 0;
    const int n = size();
    for (int i = 0; i < n; ++i) {
        const cplx q = markers[static_cast<std::size_t>(i)].empty()
                           ? points[static_cast<std::size_t>((i + 1) % n)]
                           : dom.word_matrix(markers[static_cast<std::size_t>(i)])
                                 .apply_disk(points[static_cast<std::size_t>((i + 1) % n)]);
        sum += dist_disk(points[static_cast<std::size_t>(i)], q);
    }
    return sum;
}

Word DiscreteCurve::holonomy_word() const {
    Word w;
    for (const auto& m : markers) w = concat(w, m);
    return w;
}

std::string DiscreteCurve::homotopy_class(const PantsDomain&) const {
    Word w = holonomy_word();
    while (w.size() >= 2 && w.front() == -w.back()) {
        w.erase(w.begin());
        w.pop_back();
    }
    if (w.empty()) return "1";
    std::string best;
    for (const Word& base : {w, inverse_word(w)}) {
        Word rot = base;
        for (std::size_t k = 0; k < base.size(); ++k) {
            std::rotate(rot.begin(), rot.begin() + 1, rot.end());
            const std::string s = fuchsian::word_to_string(rot, 2);
            if (best.empty() || s < best) best = s;
        }
    }
    return best;
}

void DiscreteCurve::validate(const PantsDomain& dom) const {
    if (points.size() != markers.size() || points.size() < 3)
        throw StructureError("discrete curve must have matching points/markers, size >= 3");
    const int n = size();
    for (int i = 0; i < n; ++i) {
        const cplx q = markers[static_cast<std::size_t>(i)].empty()
                           ? points[static_cast<std::size_t>((i + 1) % n)]
                           : dom.word_matrix(markers[static_cast<std::size_t>(i)])
                                 .apply_disk(points[static_cast<std::size_t>((i + 1) % n)]);
        if (dist_disk(points[static_cast<std::size_t>(i)], q) < 1e-14)
            throw StructureError("discrete curve has consecutive identical points");
    }
}

DiscreteCurve initial_class_curve(const PantsDomain& dom, const Word& cls, double resolution) {
    const Word w = reduce_free(cls);
    if (w.empty()) throw DomainError("homotopy class word must be non-trivial");
    DiscreteCurve c;
    c.resolution = resolution;
    const cplx x0{0.05, 0.02};
    MobiusIsometry prefix;
    for (std::size_t k = 0; k < w.size(); ++k) {
        const cplx a = prefix.apply_disk(x0);
        const MobiusIsometry& g = dom.generator(std::abs(w[k]) - 1);
        prefix = (prefix * (w[k] > 0 ? g : g.inverse())).normalized();
        const cplx b = prefix.apply_disk(x0);
        const double d = dist_disk(a, b);
        const int nseg = std::max(2, static_cast<int>(std::ceil(d / resolution)));
        for (int j = 0; j < nseg; ++j) {
            c.points.push_back(geodesic_point_disk(a, b, static_cast<double>(j) / nseg));
            c.markers.push_back({});
        }
    }
    // Closing edge: the final sampled point connects to w(first point).
    c.markers.back() = w;
    return c;
}

namespace {

cplx edge_target(const DiscreteCurve& c, const PantsDomain& dom, int i) {
    const int n = c.size();
    const cplx p = c.points[static_cast<std::size_t>((i + 1) % n)];
    if (c.markers[static_cast<std::size_t>(i)].empty()) return p;
    return dom.word_matrix(c.markers[static_cast<std::size_t>(i)]).apply_disk(p);
}

cplx left_neighbor(const DiscreteCurve& c, const PantsDomain& dom, int i) {
    const int n = c.size();
    const int j = (i + n - 1) % n;
    const cplx p = c.points[static_cast<std::size_t>(j)];
    if (c.markers[static_cast<std::size_t>(j)].empty()) return p;
    return dom.word_matrix(inverse_word(c.markers[static_cast<std::size_t>(j)])).apply_disk(p);
}

void normalize_charts(DiscreteCurve& c, const PantsDomain& dom) {
    const int n = c.size();
    const double r = dom.chart_radius();
    static const std::vector<Word> moves = {{1}, {-1}, {2}, {-2}, {-2, -1}, {1, 2}};
    for (int i = 0; i < n; ++i) {
        cplx& p = c.points[static_cast<std::size_t>(i)];
        if (dist_disk({0, 0}, p) <= r) continue;
        Word applied;
        bool improved = true;
        while (improved) {
            improved = false;
            double best = dist_disk({0, 0}, p);
            const Word* best_move = nullptr;
            cplx best_pt = p;
            for (const auto& mv : moves) {
                const cplx q = dom.word_matrix(mv).apply_disk(p);
                const double d = dist_disk({0, 0}, q);
                if (d < best - 1e-12) {
                    best = d;
                    best_move = &mv;
                    best_pt = q;
                }
            }
            if (best_move) {
                p = best_pt;
                applied = concat(*best_move, applied);
                improved = true;
            }
        }
        if (!applied.empty()) {
            const int j = (i + n - 1) % n;
            c.markers[static_cast<std::size_t>(j)] =
                concat(c.markers[static_cast<std::size_t>(j)], inverse_word(applied));
            c.markers[static_cast<std::size_t>(i)] =
                concat(applied, c.markers[static_cast<std::size_t>(i)]);
        }
    }
}

void resample(DiscreteCurve& c, const PantsDomain& dom) {
    const double hi = 2.0 * c.resolution, lo = 0.3 * c.resolution;
    DiscreteCurve out;
    out.resolution = c.resolution;
    const int n = c.size();
    for (int i = 0; i < n; ++i) {
        const cplx p = c.points[static_cast<std::size_t>(i)];
        const cplx q = edge_target(c, dom, i);
        const double d = dist_disk(p, q);
        out.points.push_back(p);
        if (d > hi) {
            const int parts = static_cast<int>(std::ceil(d / c.resolution));
            for (int k = 1; k < parts; ++k) {
                out.markers.push_back({});
                out.points.push_back(geodesic_point_disk(p, q, static_cast<double>(k) / parts));
            }
        }
        out.markers.push_back(c.markers[static_cast<std::size_t>(i)]);
    }
    DiscreteCurve fin;
    fin.resolution = c.resolution;
    const int m = out.size();
    std::vector<char> drop(static_cast<std::size_t>(m), 0);
    int kept = m;
    for (int i = 0; i < m && kept > 8; ++i) {
        const int j = (i + 1) % m;
        if (j == 0 || drop[static_cast<std::size_t>(i)] || drop[static_cast<std::size_t>(j)])
            continue;
        const double d =
            dist_disk(out.points[static_cast<std::size_t>(i)], edge_target(out, dom, i));
        if (d < lo) {
            drop[static_cast<std::size_t>(j)] = 1;
            --kept;
        }
    }
    for (int i = 0; i < m; ++i) {
        if (drop[static_cast<std::size_t>(i)]) {
            fin.markers.back() =
                concat(fin.markers.back(), out.markers[static_cast<std::size_t>(i)]);
            continue;
        }
        fin.points.push_back(out.points[static_cast<std::size_t>(i)]);
        fin.markers.push_back(out.markers[static_cast<std::size_t>(i)]);
    }
    c = std::move(fin);
}

double min_vertex_angle(const DiscreteCurve& c, const PantsDomain& dom) {
    double amin = M_PI;
    for (int i = 0; i < c.size(); ++i) {
        const cplx l = left_neighbor(c, dom, i);
        const cplx r = edge_target(c, dom, i);
        amin = std::min(amin,
                        std::abs(angle_at_disk(c.points[static_cast<std::size_t>(i)], l, r)));
    }
    return amin;
}

}  // namespace

void flow_step(DiscreteCurve& c, const PantsDomain& dom, double dt) {
    const int n = c.size();
    const double lambda = 2.0 * dt / (c.resolution * c.resolution);
    std::vector<cplx> next(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const cplx l = left_neighbor(c, dom, i);
        const cplx r = edge_target(c, dom, i);
        const cplx mid = midpoint_disk(l, r);
        next[static_cast<std::size_t>(i)] =
            geodesic_point_disk(c.points[static_cast<std::size_t>(i)], mid, lambda);
    }
    c.points = std::move(next);
}

FlowStats shorten(DiscreteCurve& c, const PantsDomain& dom, int steps, double dt,
                  bool do_resample) {
    FlowStats st;
    st.initial_length = c.length(dom);
    double len = st.initial_length;
    for (int k = 0; k < steps; ++k) {
        const std::vector<cplx> before = c.points;
        flow_step(c, dom, dt);
        const double after = c.length(dom);
        if (after > len + 1e-12 * std::max(1.0, len)) {
            std::ostringstream os;
            os << "curve shortening step increased length by " << (after - len)
               << "; decrease dt below resolution^2/2 = " << c.resolution * c.resolution / 2;
            throw ConvergenceError(os.str());
        }
        len = after;
        if (k == steps - 1 && c.size() == static_cast<int>(before.size())) {
            double mv = 0;
            for (int i = 0; i < c.size(); ++i)
                mv = std::max(mv, dist_disk(before[static_cast<std::size_t>(i)],
                                            c.points[static_cast<std::size_t>(i)]));
            st.max_move_per_dt = mv / dt;
        }
        if (do_resample && (k % 32) == 31) {
            normalize_charts(c, dom);
            resample(c, dom);
            const double l2 = c.length(dom);
            if (l2 > len + 1e-12 * std::max(1.0, len))
                throw ConvergenceError("resampling increased the length");
            len = l2;
        }
        ++st.steps;
    }
    st.final_length = len;
    return st;
}

FlowStats flow_to_geodesic(DiscreteCurve& c, const PantsDomain& dom, double tol, int max_steps) {
    FlowStats total;
    total.initial_length = c.length(dom);
    const double dt = 0.45 * c.resolution * c.resolution;
    double prev = total.initial_length;
    int done = 0;
    const int block = 200;
    while (done < max_steps) {
        const FlowStats st = shorten(c, dom, std::min(block, max_steps - done), dt, true);
        done += st.steps;
        total.max_move_per_dt = st.max_move_per_dt;
        const bool stalled = prev - st.final_length < tol * std::max(1.0, prev);
        prev = st.final_length;
        if (stalled) break;
    }
    total.steps = done;
    total.final_length = prev;
    return total;
}

std::vector<Crossing> self_intersections(const DiscreteCurve& c, const PantsDomain& dom) {
    const int n = c.size();
    std::vector<cplx> u(static_cast<std::size_t>(n) + 1);
    std::vector<MobiusIsometry> U(static_cast<std::size_t>(n) + 1);
    U[0] = MobiusIsometry::identity();
    u[0] = c.points[0];
    for (int i = 0; i < n; ++i) {
        U[static_cast<std::size_t>(i + 1)] =
            (U[static_cast<std::size_t>(i)] *
             dom.word_matrix(c.markers[static_cast<std::size_t>(i)]))
                .normalized();
        u[static_cast<std::size_t>(i + 1)] = U[static_cast<std::size_t>(i + 1)].apply_disk(
            c.points[static_cast<std::size_t>((i + 1) % n)]);
    }
    double r_curve = 0;
    for (int i = 0; i <= n; ++i)
        r_curve = std::max(r_curve, dist_disk({0, 0}, u[static_cast<std::size_t>(i)]));
    const std::vector<MobiusIsometry> gens{dom.generator(0), dom.generator(1)};
    const fuchsian::GroupBall ball =
        fuchsian::enumerate_ball(gens, 2 * r_curve + 0.6, 64, 1'000'000);

    auto seg_cross = [](cplx a1, cplx a2, cplx b1, cplx b2, double& s, double& t) {
        const double d1x = a2.real() - a1.real(), d1y = a2.imag() - a1.imag();
        const double d2x = b2.real() - b1.real(), d2y = b2.imag() - b1.imag();
        const double det = d1x * d2y - d1y * d2x;
        if (std::abs(det) < 1e-15) return false;
        const double ex = b1.real() - a1.real(), ey = b1.imag() - a1.imag();
        s = (ex * d2y - ey * d2x) / det;
        t = (ex * d1y - ey * d1x) / det;
        const double eps = 1e-7;
        return s > eps && s < 1 - eps && t > eps && t < 1 - eps;
    };

    std::vector<Crossing> found;
    auto quotient_same = [&](cplx x, cplx y) {
        for (const auto& el : ball.elems) {
            if (dist_disk(x, el.m.apply_disk(y)) < 0.5 * c.resolution) return true;
            if (dist_disk(y, el.m.apply_disk(x)) < 0.5 * c.resolution) return true;
        }
        return false;
    };

    for (const auto& el : ball.elems) {
        const bool is_id = el.disp < 1e-12;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (is_id && (std::abs(i - j) <= 1 || j < i)) continue;
                if (is_id && i == 0 && j == n - 1) continue;
                const cplx b1 = el.m.apply_disk(u[static_cast<std::size_t>(j)]);
                const cplx b2 = el.m.apply_disk(u[static_cast<std::size_t>(j + 1)]);
                double s = 0, t = 0;
                if (!seg_cross(u[static_cast<std::size_t>(i)], u[static_cast<std::size_t>(i + 1)],
                               b1, b2, s, t))
                    continue;
                const cplx x = u[static_cast<std::size_t>(i)] +
                               s * (u[static_cast<std::size_t>(i + 1)] -
                                    u[static_cast<std::size_t>(i)]);
                bool dup = false;
                for (const auto& cr : found) {
                    if (quotient_same(x, cr.point)) {
                        dup = true;
                        break;
                    }
                }
                if (dup) continue;
                Crossing cr;
                cr.seg_a = i;
                cr.seg_b = j;
                cr.point = x;
                cr.translate = ball.word_of(ball.find(el.m));
                cr.offset_a = s;
                cr.offset_b = t;
                found.push_back(cr);
            }
        }
    }
    return found;
}

std::vector<DiscreteCurve> surgery(const DiscreteCurve& curve, const PantsDomain& dom,
                                   SurgeryDirection dir, double t) {
    const std::vector<Crossing> crossings = self_intersections(curve, dom);
    if (crossings.size() != 1) {
        throw DomainError("surgery requires exactly one transverse self-intersection, found " +
                          std::to_string(crossings.size()));
    }
    const double len_in = curve.length(dom);
    Crossing cr = crossings[0];
    int i = cr.seg_a, j = cr.seg_b;
    Word g = cr.translate;
    if (j < i) {
        std::swap(i, j);
        g = inverse_word(g);
    }
    const int n = curve.size();

    // Chart word of each vertex relative to vertex 0 (one extra period).
    std::vector<Word> chart(static_cast<std::size_t>(n) + 2);
    for (int k = 0; k <= n; ++k)
        chart[static_cast<std::size_t>(k + 1)] = concat(
            chart[static_cast<std::size_t>(k)], curve.markers[static_cast<std::size_t>(k % n)]);

    // Crossing point x (base chart) lies on segment i and on g*(segment j).
    auto local_point = [&](int k, const cplx& base_pt) {
        return dom.word_matrix(inverse_word(chart[static_cast<std::size_t>(k)]))
            .apply_disk(base_pt);
    };
    const cplx x = cr.point;
    const cplx y = dom.word_matrix(inverse_word(g)).apply_disk(x);

    std::vector<DiscreteCurve> result;
    if (dir == SurgeryDirection::Split) {
        // Petal A: x -> v_{i+1} -> ... -> v_j -> (y == x).
        DiscreteCurve A;
        A.resolution = curve.resolution;
        A.points.push_back(local_point(i, x));
        A.markers.push_back(curve.markers[static_cast<std::size_t>(i)]);
        for (int k = i + 1; k <= j; ++k) {
            A.points.push_back(curve.points[static_cast<std::size_t>(k % n)]);
            if (k < j) A.markers.push_back(curve.markers[static_cast<std::size_t>(k)]);
        }
        A.markers.push_back(concat(inverse_word(chart[static_cast<std::size_t>(j)]),
                                   inverse_word(g), chart[static_cast<std::size_t>(i)]));

        // Petal B: y -> v_{j+1} -> ... -> v_{n+i} -> (Hx == y).
        DiscreteCurve B;
        B.resolution = curve.resolution;
        B.points.push_back(local_point(j, y));
        B.markers.push_back(curve.markers[static_cast<std::size_t>(j)]);
        for (int k = j + 1; k <= n + i; ++k) {
            B.points.push_back(curve.points[static_cast<std::size_t>(k % n)]);
            if (k < n + i) B.markers.push_back(curve.markers[static_cast<std::size_t>(k % n)]);
        }
        B.markers.push_back(concat(inverse_word(chart[static_cast<std::size_t>(i)]), g,
                                   chart[static_cast<std::size_t>(j)]));
        result.push_back(std::move(A));
        result.push_back(std::move(B));
    } else {
        // Merge: arc x -> ... -> v_j, then the other strand reversed.
        DiscreteCurve M;
        M.resolution = curve.resolution;
        M.points.push_back(local_point(i, x));
        M.markers.push_back(curve.markers[static_cast<std::size_t>(i)]);
        for (int k = i + 1; k <= j; ++k) {
            M.points.push_back(curve.points[static_cast<std::size_t>(k % n)]);
            if (k < j) M.markers.push_back(curve.markers[static_cast<std::size_t>(k)]);
        }
        // Junction: from v_j through the crossing onto g^{-1}*(reversed strand),
        // whose first vertex is g^{-1} v_i.
        M.markers.push_back(concat(inverse_word(chart[static_cast<std::size_t>(j)]),
                                   inverse_word(g), chart[static_cast<std::size_t>(i)]));
        for (int k = i; k > j - n; --k) {
            const int kk = ((k % n) + n) % n;
            M.points.push_back(curve.points[static_cast<std::size_t>(kk)]);
            const int prev = ((k - 1) % n + n) % n;
            if (k > j - n + 1)
                M.markers.push_back(inverse_word(curve.markers[static_cast<std::size_t>(prev)]));
        }
        M.markers.push_back(concat(inverse_word(chart[static_cast<std::size_t>(j + 1)]),
                                   inverse_word(g), chart[static_cast<std::size_t>(i)]));
        result.push_back(std::move(M));
    }

    // Smooth the reconnection corners: short monotone flow bursts until no
    // vertex angle stays below 150 degrees. Strictly length-decreasing.
    for (auto& c : result) {
        normalize_charts(c, dom);
        resample(c, dom);
        const double dt = 0.45 * c.resolution * c.resolution;
        int rounds = 0;
        int burst = std::max(8, static_cast<int>(std::ceil(t / (0.45 * c.resolution))));
        while (min_vertex_angle(c, dom) < M_PI * 150.0 / 180.0 && rounds++ < 24) {
            shorten(c, dom, burst, dt, true);
            burst *= 2;
        }
        c.validate(dom);
    }
    double len_out = 0;
    for (const auto& c : result) len_out += c.length(dom);
    if (!(len_out < len_in))
        throw ConvergenceError("surgery failed to decrease the total length");
    return result;
}

DiscreteCurve figure_eight_geodesic(const PantsDomain& dom, double resolution) {
    const Word cls = dom.figure_eight_word();
    const double expected =
        hyptrig::figure_eight_length({dom.cuff_length(0), dom.cuff_length(1), dom.cuff_length(2)});
    double res0 = std::max(resolution, std::min(0.16, expected / 24));
    DiscreteCurve c = initial_class_curve(dom, cls, res0);
    const std::string cls_str = c.homotopy_class(dom);
    while (true) {
        flow_to_geodesic(c, dom, res0 > resolution ? 1e-11 : 1e-13);
        if (c.homotopy_class(dom) != cls_str)
            throw ConvergenceError("figure-eight flow left its homotopy class");
        if (res0 <= resolution * (1 + 1e-12)) break;
        res0 = std::max(resolution, res0 / 2);
        c.resolution = res0;
        resample(c, dom);
    }
    const double len = c.length(dom);
    if (std::abs(len - expected) > 0.01 * expected) {
        std::ostringstream os;
        os << "figure-eight flow stagnated at length " << len << " (closed form " << expected
           << ")";
        throw ConvergenceError(os.str());
    }
    const auto crossings = self_intersections(c, dom);
    if (crossings.size() != 1) {
        throw ConvergenceError("figure-eight geodesic has " + std::to_string(crossings.size()) +
                               " self-intersections, expected 1");
    }
    return c;
}

namespace {

SweepoutSample make_sample(double t, const std::vector<DiscreteCurve>& curves,
                           const PantsDomain& dom, const std::string& note) {
    SweepoutSample s;
    s.t = t;
    s.components = static_cast<int>(curves.size());
    for (const auto& c : curves) s.length += c.length(dom);
    s.curves = curves;
    s.note = note;
    return s;
}

void finalize_max(SweepoutTrace& trace) {
    trace.max_length = 0;
    trace.max_index = -1;
    for (int k = 0; k < static_cast<int>(trace.samples.size()); ++k) {
        if (trace.samples[static_cast<std::size_t>(k)].length > trace.max_length) {
            trace.max_length = trace.samples[static_cast<std::size_t>(k)].length;
            trace.max_index = k;
        }
    }
}

}  // namespace

SweepoutTrace run_sweepout(const PantsDomain& dom, double resolution, int samples_per_side) {
    SweepoutTrace trace;
    const DiscreteCurve fig8 = figure_eight_geodesic(dom, resolution);
    const double t0 = 4 * resolution;

    auto record_side = [&](SurgeryDirection dir, double sign) {
        std::vector<DiscreteCurve> curves = surgery(fig8, dom, dir, t0);
        std::vector<std::pair<double, SweepoutSample>> raw;  // (tau, sample)
        raw.emplace_back(0.0, make_sample(0, curves, dom,
                                          dir == SurgeryDirection::Split ? "post-split"
                                                                         : "post-merge"));
        const double dt = 0.45 * resolution * resolution;
        double tau = 0;
        int block = 64;
        double prev = raw.back().second.length;
        for (int k = 1; k < samples_per_side; ++k) {
            for (auto& c : curves) shorten(c, dom, block, dt, true);
            tau += block * dt;
            raw.emplace_back(tau, make_sample(0, curves, dom, ""));
            const double len = raw.back().second.length;
            if (prev - len < 1e-10 * std::max(1.0, prev) && k > 3) break;
            prev = len;
            block *= 2;
        }
        for (auto& c : curves) flow_to_geodesic(c, dom, 1e-13);
        // Map flow time to (0,1) by arctan, scaled at the median sample time.
        const double tau_mid = std::max(raw[raw.size() / 2].first, 1e-6);
        std::vector<SweepoutSample> side;
        for (auto& [tk, sample] : raw) {
            sample.t = sign * std::min(0.999, (2.0 / M_PI) * std::atan(tk / tau_mid));
            if (std::abs(sample.t) < 1e-6) sample.t = sign * 1e-3;
            side.push_back(sample);
        }
        side.push_back(make_sample(sign, curves, dom, "converged endpoint"));
        return side;
    };

    const std::vector<SweepoutSample> neg = record_side(SurgeryDirection::Split, -1.0);
    const std::vector<SweepoutSample> pos = record_side(SurgeryDirection::Merge, +1.0);
    for (const auto& s : neg) trace.samples.push_back(s);
    trace.samples.push_back(make_sample(0.0, {fig8}, dom, "figure-eight maximum"));
    for (const auto& s : pos) trace.samples.push_back(s);
    std::sort(trace.samples.begin(), trace.samples.end(),
              [](const SweepoutSample& a, const SweepoutSample& b) { return a.t < b.t; });
    finalize_max(trace);
    return trace;
}

SweepoutTrace composite_trace_small_systole(const SweepoutTrace& pants_trace, int genus) {
    if (genus < 2) throw DomainError("genus must be at least 2");
    const int phases = 2 * genus - 2;
    SweepoutTrace out;
    const int ns = static_cast<int>(pants_trace.samples.size());
    for (int ph = 0; ph < phases; ++ph) {
        const bool forward = (ph % 2 == 0);
        for (int k = 0; k < ns; ++k) {
            const SweepoutSample& src =
                pants_trace.samples[static_cast<std::size_t>(forward ? k : ns - 1 - k)];
            SweepoutSample s;
            const double local = (static_cast<double>(k) / (ns - 1) + ph) / phases;
            s.t = 2 * local - 1;
            s.length = src.length;
            s.components = src.components;
            s.note = "phase " + std::to_string(ph);
            const bool outer_start = (ph == 0 && k == 0);
            const bool outer_end = (ph == phases - 1 && k == ns - 1);
            if (outer_start || outer_end) {
                s.length = 0;
                s.components = 0;
                s.note += ": self-glued cuffs cancel mod 2";
            }
            out.samples.push_back(s);
        }
    }
    finalize_max(out);
    return out;
}

SweepoutTrace composite_trace_three_cuff(const SweepoutTrace& pants_trace, double L) {
    SweepoutTrace out;
    const int ns = static_cast<int>(pants_trace.samples.size());
    for (int ph = 0; ph < 2; ++ph) {
        const bool forward = (ph == 1);
        for (int k = 0; k < ns; ++k) {
            const SweepoutSample& src =
                pants_trace.samples[static_cast<std::size_t>(forward ? k : ns - 1 - k)];
            SweepoutSample s;
            const double local = (static_cast<double>(k) / (ns - 1) + ph) / 2;
            s.t = 2 * local - 1;
            s.length = src.length + L;
            s.components = src.components + 1;
            s.note = "pants sweep plus the static cuff";
            const bool outer_start = (ph == 0 && k == 0);
            const bool outer_end = (ph == 1 && k == ns - 1);
            if (outer_start || outer_end) {
                s.length = 0;
                s.components = 0;
                s.note = "static cuff cancels the endpoint mod 2";
            }
            out.samples.push_back(s);
        }
    }
    finalize_max(out);
    return out;
}

void write_trace_csv(std::ostream& os, const SweepoutTrace& trace) {
    os << "t,length,components\n";
    char buf[96];
    for (const auto& s : trace.samples) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%d\n", s.t, s.length, s.components);
        os << buf;
    }
}

void write_polyline(std::ostream& os, const DiscreteCurve& c, const PantsDomain&) {
    os << "# closed polyline, Poincare disk chart; columns: x y marker-word\n";
    char buf[160];
    for (int i = 0; i < c.size(); ++i) {
        std::snprintf(
            buf, sizeof buf, "%.17g %.17g %s\n", c.points[static_cast<std::size_t>(i)].real(),
            c.points[static_cast<std::size_t>(i)].imag(),
            c.markers[static_cast<std::size_t>(i)].empty()
                ? "."
                : fuchsian::word_to_string(c.markers[static_cast<std::size_t>(i)], 2).c_str());
        os << buf;
    }
}

}  // namespace hypwidth::sweepout
