#include "hypwidth/fuchsian.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <bit>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

namespace hypwidth::fuchsian {

namespace {

constexpr double kBucketDelta = 1e-5;
constexpr double kMatchTol = 1e-7;

std::uint64_t bucket_key(long long ka, long long kb) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    mix(static_cast<std::uint64_t>(ka));
    mix(static_cast<std::uint64_t>(kb));
    return h;
}

bool matrices_match(const MobiusIsometry& x, const MobiusIsometry& y) {
    const double scale =
        1.0 + std::max({std::abs(x.a), std::abs(x.b), std::abs(x.c), std::abs(x.d)});
    return x.dist_proj(y) < kMatchTol * scale;
}

MobiusIsometry rho_half_turn() { return {0, 1, -1, 0}; }

}  // namespace

// --- words ----------------------------------------------------------------

std::string word_to_string(const Word& w, int num_generators) {
    if (w.empty()) return "1";
    std::string out;
    if (num_generators <= 26) {
        for (int l : w) {
            const int k = std::abs(l) - 1;
            out.push_back(static_cast<char>((l > 0 ? 'a' : 'A') + k));
        }
    } else {
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i) out.push_back('.');
            out += (w[i] > 0 ? "g" : "G") + std::to_string(std::abs(w[i]) - 1);
        }
    }
    return out;
}

Word word_from_string(const std::string& s, int num_generators) {
    Word w;
    if (s == "1" || s.empty()) return w;
    if (num_generators <= 26) {
        for (char ch : s) {
            if (ch >= 'a' && ch <= 'z') w.push_back(ch - 'a' + 1);
            else if (ch >= 'A' && ch <= 'Z') w.push_back(-(ch - 'A' + 1));
            else throw DomainError("bad word character");
        }
    } else {
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, '.')) {
            if (tok.size() < 2 || (tok[0] != 'g' && tok[0] != 'G'))
                throw DomainError("bad word token " + tok);
            const int k = std::atoi(tok.c_str() + 1) + 1;
            w.push_back(tok[0] == 'g' ? k : -k);
        }
    }
    return w;
}

// --- surface specs ---------------------------------------------------------

SurfaceSpec SurfaceSpec::bolza() {
    SurfaceSpec s;
    s.kind = Kind::Bolza;
    s.genus = 2;
    s.num_pants = 0;
    return s;
}

SurfaceSpec SurfaceSpec::small_systole_family(int genus, double a) {
    if (genus < 2) throw DomainError("genus must be at least 2");
    if (!(a > 0) || !std::isfinite(a)) throw DomainError("systole parameter must be positive");
    SurfaceSpec s;
    s.kind = Kind::PantsGlued;
    s.genus = genus;
    s.num_pants = 2 * genus - 2;
    auto edge = [a](int pa, int sa, int pb, int sb) {
        return Edge{pa, sa, pb, sb, a, 0.0};
    };
    s.edges.push_back(edge(0, 0, 0, 1));  // self-glued end cuff
    if (genus == 2) {
        s.edges.push_back(edge(0, 2, 1, 0));
        s.edges.push_back(edge(1, 1, 1, 2));
    } else {
        s.edges.push_back(edge(0, 2, 1, 0));
        for (int k = 1; k <= genus - 2; ++k) {
            const int p = 2 * k - 1, q = 2 * k;
            s.edges.push_back(edge(p, 1, q, 0));
            s.edges.push_back(edge(p, 2, q, 1));
            s.edges.push_back(edge(q, 2, q + 1, 0));
        }
        s.edges.push_back(edge(2 * genus - 3, 1, 2 * genus - 3, 2));
    }
    s.validate();
    return s;
}

SurfaceSpec SurfaceSpec::three_cuff_family(double L) {
    if (!(L > 0) || !std::isfinite(L)) throw DomainError("cuff length must be positive");
    SurfaceSpec s;
    s.kind = Kind::PantsGlued;
    s.genus = 2;
    s.num_pants = 2;
    for (int k = 0; k < 3; ++k) s.edges.push_back(Edge{0, k, 1, k, L, 0.0});
    s.validate();
    return s;
}

void SurfaceSpec::validate() const {
    if (kind == Kind::Bolza) {
        if (genus != 2) throw StructureError("the Bolza surface has genus 2");
        return;
    }
    const int V = num_pants, E = static_cast<int>(edges.size());
    if (V != 2 * genus - 2 || E != 3 * genus - 3)
        throw StructureError("pants count / cuff count inconsistent with the genus");
    std::vector<int> slot_seen(static_cast<std::size_t>(3 * V), 0);
    for (const auto& e : edges) {
        if (!(e.length > 0) || !std::isfinite(e.length))
            throw DomainError("cuff length must be positive");
        for (auto [p, sl] : {std::pair{e.pants_a, e.slot_a}, std::pair{e.pants_b, e.slot_b}}) {
            if (p < 0 || p >= V || sl < 0 || sl > 2)
                throw StructureError("pants/slot index out of range");
            if (slot_seen[static_cast<std::size_t>(3 * p + sl)]++)
                throw StructureError("cuff slot matched more than once");
        }
    }
    // Connectivity.
    std::vector<int> seen(static_cast<std::size_t>(V), 0);
    std::deque<int> q{0};
    seen[0] = 1;
    int count = 1;
    while (!q.empty()) {
        const int p = q.front();
        q.pop_front();
        for (const auto& e : edges) {
            for (auto [x, y] : {std::pair{e.pants_a, e.pants_b}, std::pair{e.pants_b, e.pants_a}}) {
                if (x == p && !seen[static_cast<std::size_t>(y)]) {
                    seen[static_cast<std::size_t>(y)] = 1;
                    ++count;
                    q.push_back(y);
                }
            }
        }
    }
    if (count != V) throw StructureError("pants graph is disconnected");
    if (E - V + 1 != genus) throw StructureError("pants graph genus mismatch");
}

// --- group ball -------------------------------------------------------------

void GroupBall::insert_bucket(const MobiusIsometry& m, int idx) {
    const MobiusIsometry c = m.sign_canonical();
    buckets_[bucket_key(llround(c.a / kBucketDelta), llround(c.b / kBucketDelta))].push_back(idx);
}

int GroupBall::find(const MobiusIsometry& m) const {
    const MobiusIsometry c = m.sign_canonical();
    const double fa = c.a / kBucketDelta, fb = c.b / kBucketDelta;
    for (long long da = -1; da <= 1; ++da) {
        for (long long db = -1; db <= 1; ++db) {
            const auto it = buckets_.find(bucket_key(llround(fa) + da, llround(fb) + db));
            if (it == buckets_.end()) continue;
            for (int idx : it->second) {
                if (matrices_match(elems[static_cast<std::size_t>(idx)].m, c)) return idx;
            }
        }
    }
    return -1;
}

Word GroupBall::word_of(int index) const {
    Word w;
    while (index > 0) {
        const auto& e = elems[static_cast<std::size_t>(index)];
        if (e.letter == 0) {
            const Word& suffix = splice_words_.at(index);
            w.insert(w.end(), suffix.rbegin(), suffix.rend());
        } else {
            w.push_back(e.letter);
        }
        index = e.parent;
    }
    std::reverse(w.begin(), w.end());
    return w;
}

std::vector<int> GroupBall::indices_by_displacement() const {
    std::vector<int> idx(elems.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [this](int x, int y) {
        return elems[static_cast<std::size_t>(x)].disp < elems[static_cast<std::size_t>(y)].disp;
    });
    return idx;
}

GroupBall enumerate_ball(const std::vector<MobiusIsometry>& generators, double prune_radius,
                         int max_word_len, std::size_t max_elements, double closure_disp) {
    GroupBall ball;
    ball.prune_radius = prune_radius;
    ball.min_unexplored = std::numeric_limits<double>::infinity();
    const int ng = static_cast<int>(generators.size());
    std::vector<MobiusIsometry> alpha;  // letter l>0 -> generators[l-1], l<0 -> inverse
    for (int j = 0; j < ng; ++j) alpha.push_back(generators[static_cast<std::size_t>(j)].normalized());
    for (int j = 0; j < ng; ++j) alpha.push_back(alpha[static_cast<std::size_t>(j)].inverse());
    auto letter_matrix = [&](int l) -> const MobiusIsometry& {
        return l > 0 ? alpha[static_cast<std::size_t>(l - 1)]
                     : alpha[static_cast<std::size_t>(ng - l - 1)];
    };
    std::vector<int> letters;
    for (int j = 1; j <= ng; ++j) {
        letters.push_back(j);
        letters.push_back(-j);
    }

    ball.elems.push_back({MobiusIsometry::identity(), -1, 0, 0.0f});
    ball.insert_bucket(ball.elems[0].m, 0);
    bool budget_ok = true;

    auto try_insert = [&](const MobiusIsometry& child, int parent, int letter) {
        const double disp = child.origin_displacement();
        if (disp > prune_radius) {
            ball.min_unexplored = std::min(ball.min_unexplored, disp);
            return false;
        }
        if (ball.find(child) >= 0) return false;
        if (ball.elems.size() >= max_elements) {
            budget_ok = false;
            ball.min_unexplored = std::min(ball.min_unexplored, disp);
            return false;
        }
        const int idx = static_cast<int>(ball.elems.size());
        ball.elems.push_back({child, parent, letter, static_cast<float>(disp)});
        ball.insert_bucket(child, idx);
        return true;
    };

    std::size_t start = 0, end = 1;
    int depth = 0;
    bool grew = true;
    while (grew && depth < max_word_len && budget_ok) {
        grew = false;
        ++depth;
        for (std::size_t i = start; i < end && budget_ok; ++i) {
            const MobiusIsometry base = ball.elems[i].m;
            const int last = ball.elems[i].letter;
            for (int l : letters) {
                if (i > 0 && l == -last) continue;  // immediate backtrack
                const MobiusIsometry child = (base * letter_matrix(l)).normalized();
                grew |= try_insert(child, static_cast<int>(i), l);
            }
        }
        start = end;
        end = ball.elems.size();
    }
    if (grew && budget_ok) {
        // Word-length cap hit: record the unexplored frontier children.
        for (std::size_t i = start; i < end; ++i) {
            for (int l : letters) {
                const MobiusIsometry child = (ball.elems[i].m * letter_matrix(l)).normalized();
                ball.min_unexplored = std::min(ball.min_unexplored, child.origin_displacement());
            }
        }
    }
    ball.closed = !grew && budget_ok;
    if (!budget_ok) ball.min_unexplored = 0.0;

    // Closure under short elements (covers the Dirichlet side pairings, which
    // need not be in the generating alphabet): any product g*p inside the
    // pruning radius must already be present, else completeness degrades.
    if (ball.closed && closure_disp > 0) {
        std::vector<int> shorts;
        for (std::size_t i = 1; i < ball.elems.size(); ++i) {
            if (ball.elems[i].disp <= closure_disp) shorts.push_back(static_cast<int>(i));
        }
        bool stable = false;
        for (int pass = 0; pass < 8 && !stable; ++pass) {
            stable = true;
            const std::size_t n = ball.elems.size();
            for (std::size_t i = 0; i < n; ++i) {
                for (int js : shorts) {
                    const auto& p = ball.elems[static_cast<std::size_t>(js)];
                    if (ball.elems[i].disp + p.disp > prune_radius + 1e-9) continue;
                    const MobiusIsometry prod = (ball.elems[i].m * p.m).normalized();
                    const double disp = prod.origin_displacement();
                    if (disp > prune_radius) continue;
                    if (ball.find(prod) < 0) {
                        if (ball.elems.size() >= max_elements) {
                            ball.min_unexplored = 0.0;
                            ball.closed = false;
                            return ball;
                        }
                        const int idx = static_cast<int>(ball.elems.size());
                        ball.elems.push_back({prod, static_cast<int>(i), 0,
                                              static_cast<float>(disp)});
                        ball.splice_words_[idx] = ball.word_of(js);
                        ball.insert_bucket(prod, idx);
                        stable = false;
                    }
                }
            }
        }
        if (!stable) ball.closed = false;
    }
    return ball;
}

// --- homology ---------------------------------------------------------------

HomologyTester::HomologyTester(int num_generators, std::vector<std::vector<long long>> relations)
    : n_(num_generators) {
    if (n_ > 63) throw StructureError("too many generators for the homology bitmask");
    basis_.assign(64, 0);  // indexed by leading (lowest set) bit
    int nrel = 0;
    for (const auto& rel : relations) {
        if (static_cast<int>(rel.size()) != n_)
            throw StructureError("relation vector has wrong dimension");
        std::uint64_t mask = 0;
        for (int i = 0; i < n_; ++i) {
            if (rel[static_cast<std::size_t>(i)] & 1) mask |= (1ull << i);
        }
        while (mask) {
            const int lead = std::countr_zero(mask);
            if (!basis_[static_cast<std::size_t>(lead)]) {
                basis_[static_cast<std::size_t>(lead)] = mask;
                ++nrel;
                break;
            }
            mask ^= basis_[static_cast<std::size_t>(lead)];
        }
    }
    rank_ = n_ - nrel;
}

bool HomologyTester::is_trivial(const Word& word) const {
    std::uint64_t v = 0;
    for (int l : word) {
        if (l == 0) continue;
        v ^= (1ull << (std::abs(l) - 1));
    }
    if (basis_.empty()) return v == 0;
    while (v) {
        const int lead = std::countr_zero(v);
        const std::uint64_t b = basis_[static_cast<std::size_t>(lead)];
        if (!b) return false;
        v ^= b;
    }
    return true;
}

// --- surface model ----------------------------------------------------------

MobiusIsometry SurfaceModel::word_matrix(const Word& w) const {
    MobiusIsometry m;
    for (int l : w) {
        if (l == 0) continue;
        const MobiusIsometry& g = gens_[static_cast<std::size_t>(std::abs(l) - 1)];
        m = (m * (l > 0 ? g : g.inverse())).normalized();
    }
    return m;
}

double SurfaceModel::cuff_length(int edge) const {
    if (spec_.kind == SurfaceSpec::Kind::Bolza) return hyptrig::bolza_systole();
    return spec_.edges.at(static_cast<std::size_t>(edge)).length;
}

namespace {

// Padded circumradius of the Dirichlet domain at the chart origin, from the
// bisector envelope over a fine direction grid.
double estimate_dirichlet_radius(const std::vector<MobiusIsometry>& gens) {
    double R0 = 2.0;
    for (const auto& g : gens) R0 = std::max(R0, g.origin_displacement() + 2.0);
    constexpr int kDirs = 4096;
    for (int attempt = 0; attempt < 10; ++attempt) {
        const GroupBall ball = enumerate_ball(gens, R0, 256, 2'000'000);
        std::vector<double> r(kDirs, std::numeric_limits<double>::infinity());
        for (std::size_t i = 1; i < ball.elems.size(); ++i) {
            const double d = ball.elems[i].disp;
            if (d < 1e-9) continue;
            const cplx q = ball.elems[i].m.apply_disk({0, 0});
            const double phi = std::arg(q);
            const double th = std::tanh(d / 2);
            const double half = std::acos(std::min(1.0, th));
            const int lo = static_cast<int>(std::floor((phi - half) / (2 * M_PI) * kDirs)) - 1;
            const int hi = static_cast<int>(std::ceil((phi + half) / (2 * M_PI) * kDirs)) + 1;
            for (int b = lo; b <= hi; ++b) {
                const double theta = (b + 0.5) * 2 * M_PI / kDirs;
                const double cosd = std::cos(theta - phi);
                if (cosd <= th) continue;
                const double rr = std::atanh(th / cosd);
                const int bi = ((b % kDirs) + kDirs) % kDirs;
                r[static_cast<std::size_t>(bi)] = std::min(r[static_cast<std::size_t>(bi)], rr);
            }
        }
        double rmax = 0;
        bool bounded = true;
        for (double v : r) {
            if (!std::isfinite(v)) {
                bounded = false;
                break;
            }
            rmax = std::max(rmax, v);
        }
        if (bounded && R0 >= 2 * rmax + 0.2) return rmax * 1.02 + 0.05;
        R0 = std::max(R0 * 1.5, 2 * rmax + 0.5);
    }
    throw ConvergenceError("Dirichlet radius estimate did not stabilize");
}

}  // namespace

double SurfaceModel::dirichlet_radius() const {
    if (dirichlet_radius_ < 0) dirichlet_radius_ = estimate_dirichlet_radius(gens_);
    return dirichlet_radius_;
}

SurfaceModel SurfaceModel::build(const SurfaceSpec& spec) {
    spec.validate();
    SurfaceModel model;
    model.spec_ = spec;

    if (spec.kind == SurfaceSpec::Kind::Bolza) {
        const double a0 = std::acosh(1.0 + std::sqrt(2.0));  // octagon apothem
        for (int k = 0; k < 4; ++k) {
            const MobiusIsometry R = MobiusIsometry::rotation_about_i(k * M_PI / 4);
            model.gens_.push_back(
                (R * MobiusIsometry::axis_translation(2 * a0) * R.inverse()).normalized());
            model.gen_names_.push_back(std::string(1, static_cast<char>('a' + k)));
        }
        // Octagon relator: g0 g1^-1 g2 g3^-1 g0^-1 g1 g2^-1 g3.
        const Word relator{1, -2, 3, -4, -1, 2, -3, 4};
        model.relation_residual_ =
            model.word_matrix(relator).dist_proj(MobiusIsometry::identity());
        if (model.relation_residual_ > 1e-10)
            throw StructureError("Bolza octagon relator check failed");
        // Relator abelianizes to zero: H1 = Z^4, separating <=> zero exponents.
        model.homology_ = HomologyTester(4, {});
        model.dirichlet_radius_ = std::acosh(3.0 + 2.0 * std::sqrt(2.0)) + 1e-9;
        return model;
    }

    const int V = spec.num_pants;
    // Cuff triple per pants.
    std::vector<std::array<double, 3>> triple(static_cast<std::size_t>(V));
    std::vector<std::array<int, 3>> slot_edge(static_cast<std::size_t>(V), {-1, -1, -1});
    for (int e = 0; e < static_cast<int>(spec.edges.size()); ++e) {
        const auto& ed = spec.edges[static_cast<std::size_t>(e)];
        triple[static_cast<std::size_t>(ed.pants_a)][static_cast<std::size_t>(ed.slot_a)] = ed.length;
        triple[static_cast<std::size_t>(ed.pants_b)][static_cast<std::size_t>(ed.slot_b)] = ed.length;
        slot_edge[static_cast<std::size_t>(ed.pants_a)][static_cast<std::size_t>(ed.slot_a)] = e;
        slot_edge[static_cast<std::size_t>(ed.pants_b)][static_cast<std::size_t>(ed.slot_b)] = e;
    }
    for (int p = 0; p < V; ++p) {
        const auto& t = triple[static_cast<std::size_t>(p)];
        model.pants_.emplace_back(hyptrig::CuffLengths{t[0], t[1], t[2]});
    }

    // Spanning tree by BFS (self-loops never tree edges).
    std::vector<int> parent_edge(static_cast<std::size_t>(V), -1);
    std::vector<int> order;
    std::vector<char> seen(static_cast<std::size_t>(V), 0);
    std::deque<int> q{0};
    seen[0] = 1;
    order.push_back(0);
    std::vector<char> is_tree(spec.edges.size(), 0);
    while (!q.empty()) {
        const int p = q.front();
        q.pop_front();
        for (int e = 0; e < static_cast<int>(spec.edges.size()); ++e) {
            const auto& ed = spec.edges[static_cast<std::size_t>(e)];
            if (ed.pants_a == ed.pants_b) continue;
            int other = -1;
            if (ed.pants_a == p) other = ed.pants_b;
            else if (ed.pants_b == p) other = ed.pants_a;
            if (other < 0 || seen[static_cast<std::size_t>(other)]) continue;
            seen[static_cast<std::size_t>(other)] = 1;
            is_tree[static_cast<std::size_t>(e)] = 1;
            parent_edge[static_cast<std::size_t>(other)] = e;
            order.push_back(other);
            q.push_back(other);
        }
    }

    model.pants_pos_.assign(static_cast<std::size_t>(V), MobiusIsometry::identity());
    const MobiusIsometry rho = rho_half_turn();
    for (int p : order) {
        const int e = parent_edge[static_cast<std::size_t>(p)];
        if (e < 0) continue;
        const auto& ed = spec.edges[static_cast<std::size_t>(e)];
        const bool p_is_b = (ed.pants_b == p);
        const int par = p_is_b ? ed.pants_a : ed.pants_b;
        const int slot_par = p_is_b ? ed.slot_a : ed.slot_b;
        const int slot_p = p_is_b ? ed.slot_b : ed.slot_a;
        const MobiusIsometry& Gpar = model.pants_pos_[static_cast<std::size_t>(par)];
        const MobiusIsometry Npar = model.pants_[static_cast<std::size_t>(par)]
                                        .slot_normalizer(slot_par);
        const MobiusIsometry Np = model.pants_[static_cast<std::size_t>(p)].slot_normalizer(slot_p);
        model.pants_pos_[static_cast<std::size_t>(p)] =
            (Gpar * Npar.inverse() * MobiusIsometry::axis_translation(ed.twist) * rho * Np)
                .normalized();
    }

    auto conj_holo = [&](int p, int slot) {
        const MobiusIsometry& G = model.pants_pos_[static_cast<std::size_t>(p)];
        return (G * model.pants_[static_cast<std::size_t>(p)].cuff_holonomy(slot) * G.inverse())
            .normalized();
    };

    // Generators: two cuff holonomies per pants, then non-tree stable letters.
    std::vector<std::vector<long long>> relations;
    int next_name = 0;
    auto add_gen = [&](const MobiusIsometry& m) {
        model.gens_.push_back(m);
        model.gen_names_.push_back(std::string(1, static_cast<char>('a' + next_name)));
        ++next_name;
    };
    for (int p = 0; p < V; ++p) {
        add_gen(conj_holo(p, 0));
        add_gen(conj_holo(p, 1));
    }
    std::vector<int> stable_index(spec.edges.size(), -1);
    std::vector<MobiusIsometry> stable;
    for (int e = 0; e < static_cast<int>(spec.edges.size()); ++e) {
        if (is_tree[static_cast<std::size_t>(e)]) continue;
        const auto& ed = spec.edges[static_cast<std::size_t>(e)];
        const MobiusIsometry& Ga = model.pants_pos_[static_cast<std::size_t>(ed.pants_a)];
        const MobiusIsometry& Gb = model.pants_pos_[static_cast<std::size_t>(ed.pants_b)];
        const MobiusIsometry Na =
            model.pants_[static_cast<std::size_t>(ed.pants_a)].slot_normalizer(ed.slot_a);
        const MobiusIsometry Nb =
            model.pants_[static_cast<std::size_t>(ed.pants_b)].slot_normalizer(ed.slot_b);
        const MobiusIsometry t =
            (Ga * Na.inverse() * MobiusIsometry::axis_translation(ed.twist) * rho * Nb *
             Gb.inverse())
                .normalized();
        stable_index[static_cast<std::size_t>(e)] = static_cast<int>(model.gens_.size());
        add_gen(t);
        stable.push_back(t);
    }

    const int n = static_cast<int>(model.gens_.size());
    auto expand_slot = [&](int p, int slot, std::vector<long long>& v, long long sign) {
        const int base = 2 * p;
        if (slot == 0) v[static_cast<std::size_t>(base)] += sign;
        else if (slot == 1) v[static_cast<std::size_t>(base + 1)] += sign;
        else {
            v[static_cast<std::size_t>(base)] -= sign;
            v[static_cast<std::size_t>(base + 1)] -= sign;
        }
    };

    double resid = 0;
    for (int e = 0; e < static_cast<int>(spec.edges.size()); ++e) {
        const auto& ed = spec.edges[static_cast<std::size_t>(e)];
        const MobiusIsometry Ca = conj_holo(ed.pants_a, ed.slot_a);
        const MobiusIsometry Cb = conj_holo(ed.pants_b, ed.slot_b);
        model.cuff_holo_.push_back(Ca);
        if (std::abs(Ca.translation_length() - ed.length) > 1e-10 * (1 + ed.length))
            throw StructureError("glued cuff holonomy has wrong translation length");
        MobiusIsometry lhs;
        if (is_tree[static_cast<std::size_t>(e)]) {
            lhs = Cb;
        } else {
            const MobiusIsometry& t =
                model.gens_[static_cast<std::size_t>(stable_index[static_cast<std::size_t>(e)])];
            lhs = (t * Cb * t.inverse()).normalized();
        }
        const double scale =
            1.0 + std::max({std::abs(lhs.a), std::abs(lhs.b), std::abs(lhs.c), std::abs(lhs.d)});
        resid = std::max(resid, lhs.dist_proj(Ca.inverse()) / scale);
        std::vector<long long> rel(static_cast<std::size_t>(n), 0);
        expand_slot(ed.pants_a, ed.slot_a, rel, 1);
        expand_slot(ed.pants_b, ed.slot_b, rel, 1);
        relations.push_back(std::move(rel));
    }
    model.relation_residual_ = resid;
    if (resid > 1e-9) throw StructureError("surface gluing relation residual too large");

    model.homology_ = HomologyTester(n, relations);
    if (model.homology_.rank() != 2 * spec.genus)
        throw StructureError("homology rank does not match the genus");

    return model;
}

// --- geodesic classes --------------------------------------------------------

namespace {

struct UnorientedKey {
    MobiusIsometry canon;
};

MobiusIsometry unoriented_canonical(const MobiusIsometry& m) {
    const MobiusIsometry x = m.normalized().sign_canonical();
    const MobiusIsometry y = m.inverse().normalized().sign_canonical();
    const std::array<double, 4> ex{x.a, x.b, x.c, x.d}, ey{y.a, y.b, y.c, y.d};
    return ex < ey ? x : y;
}

}  // namespace

ClassList enumerate_geodesics(const std::vector<MobiusIsometry>& gens,
                              const HomologyTester& homology, double dirichlet_radius,
                              double cutoff, int max_word_len, std::size_t max_elements,
                              GroupBall* keep_ball) {
    if (!(cutoff > 0)) throw DomainError("cutoff must be positive");
    const double D = dirichlet_radius;
    const double r_target = 2 * std::acosh(std::cosh(cutoff / 2) * std::cosh(D)) + 0.05;
    // Crossing searches need translates out to length + 2*(axis distance) + pad.
    const double r_prune = std::max(r_target + D, cutoff + 2 * (D + 0.3) + 0.7) + 0.05;
    const GroupBall ball =
        enumerate_ball(gens, r_prune, max_word_len, max_elements, 2 * D + 0.2);

    ClassList out;
    out.closed = ball.closed;
    const double c_disp = std::min(ball.min_unexplored, ball.prune_radius) - D;
    if (c_disp > 0 && std::cosh(c_disp / 2) > std::cosh(D)) {
        out.horizon = 2 * std::acosh(std::cosh(c_disp / 2) / std::cosh(D));
    } else {
        out.horizon = 0;
    }

    // Minimal translation length in the ball (for the primitivity root test).
    double lmin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < ball.elems.size(); ++i) {
        const double l = ball.elems[i].m.translation_length();
        if (l > 1e-9) lmin = std::min(lmin, l);
    }

    // Candidates: hyperbolic, within cutoff, axis near the origin, conjugacy-reduced.
    struct Cand {
        MobiusIsometry m;
        int ball_index;
        double length;
    };
    std::vector<MobiusIsometry> alphabet;
    for (const auto& g : gens) {
        alphabet.push_back(g.normalized());
        alphabet.push_back(g.inverse().normalized());
    }
    auto reduce = [&](MobiusIsometry m) {
        double best = m.origin_displacement();
        bool improved = true;
        while (improved) {
            improved = false;
            for (const auto& s : alphabet) {
                const MobiusIsometry c = (s.inverse() * m * s).normalized();
                const double d = c.origin_displacement();
                if (d < best - 1e-12) {
                    best = d;
                    m = c;
                    improved = true;
                }
            }
        }
        return m;
    };

    std::map<std::pair<long long, long long>, std::vector<std::size_t>> cand_map;
    std::vector<Cand> cands;
    auto cand_lookup_insert = [&](const MobiusIsometry& m, int ball_index, double length) {
        const MobiusIsometry c = unoriented_canonical(m);
        const std::pair<long long, long long> key{llround(c.a / kBucketDelta),
                                                  llround(c.b / kBucketDelta)};
        for (long long da = -1; da <= 1; ++da) {
            for (long long db = -1; db <= 1; ++db) {
                const auto it = cand_map.find({key.first + da, key.second + db});
                if (it == cand_map.end()) continue;
                for (std::size_t idx : it->second) {
                    if (matrices_match(cands[idx].m, c)) return;
                }
            }
        }
        cand_map[key].push_back(cands.size());
        cands.push_back({c, ball_index, length});
    };

    for (std::size_t i = 1; i < ball.elems.size(); ++i) {
        const MobiusIsometry& m = ball.elems[i].m;
        if (!m.is_hyperbolic(1e-9)) continue;
        const double l = m.translation_length();
        if (l > cutoff + 1e-12) continue;
        if (m.axis_distance_from_origin() > D + 0.3) continue;
        const MobiusIsometry red = reduce(m);
        const int ri = ball.find(red);
        cand_lookup_insert(red, ri >= 0 ? ri : static_cast<int>(i), l);
    }

    // Primitivity: discard proper powers (k-th root present in the ball).
    auto is_primitive = [&](const Cand& c) {
        const MobiusIsometry N = c.m.axis_normalizer();
        for (int k = 2; c.length / k >= lmin - 1e-9; ++k) {
            const MobiusIsometry root =
                (N.inverse() * MobiusIsometry::axis_translation(c.length / k) * N).normalized();
            if (ball.contains(root)) return false;
        }
        return true;
    };
    std::vector<Cand> prim;
    for (const auto& c : cands)
        if (is_primitive(c)) prim.push_back(c);

    // Cluster by length, then union conjugates within each cluster.
    std::sort(prim.begin(), prim.end(), [](const Cand& x, const Cand& y) {
        return x.length < y.length;
    });
    const std::vector<int> by_disp = ball.indices_by_displacement();

    std::size_t i0 = 0;
    while (i0 < prim.size()) {
        std::size_t i1 = i0 + 1;
        while (i1 < prim.size() &&
               prim[i1].length - prim[i1 - 1].length < 1e-9 * (1 + prim[i1].length))
            ++i1;
        const std::size_t sz = i1 - i0;
        std::vector<int> uf(sz);
        std::iota(uf.begin(), uf.end(), 0);
        std::function<int(int)> find_root = [&](int x) {
            while (uf[static_cast<std::size_t>(x)] != x) {
                uf[static_cast<std::size_t>(x)] = uf[static_cast<std::size_t>(uf[static_cast<std::size_t>(x)])];
                x = uf[static_cast<std::size_t>(x)];
            }
            return x;
        };
        const double lbar = prim[i0].length;
        const double conj_bound = 2 * (D + 0.3) + lbar / 2 + 0.3;
        for (std::size_t a = 0; a < sz; ++a) {
            if (find_root(static_cast<int>(a)) != static_cast<int>(a)) continue;
            const MobiusIsometry& base = prim[i0 + a].m;
            for (int bi : by_disp) {
                const auto& h = ball.elems[static_cast<std::size_t>(bi)];
                if (h.disp > conj_bound) break;
                const MobiusIsometry c =
                    unoriented_canonical((h.m * base * h.m.inverse()).normalized());
                for (std::size_t b = a + 1; b < sz; ++b) {
                    if (matrices_match(prim[i0 + b].m, c)) {
                        const int ra = find_root(static_cast<int>(a));
                        const int rb = find_root(static_cast<int>(b));
                        if (ra != rb) uf[static_cast<std::size_t>(std::max(ra, rb))] = std::min(ra, rb);
                    }
                }
            }
        }
        // Emit one class per union root.
        for (std::size_t a = 0; a < sz; ++a) {
            if (find_root(static_cast<int>(a)) != static_cast<int>(a)) continue;
            GeodesicClass cls;
            cls.rep = prim[i0 + a].m;
            cls.length = prim[i0 + a].length;
            cls.word = ball.word_of(prim[i0 + a].ball_index);
            cls.separating = homology.is_trivial(cls.word);
            out.classes.push_back(std::move(cls));
        }
        i0 = i1;
    }
    std::sort(out.classes.begin(), out.classes.end(),
              [](const GeodesicClass& x, const GeodesicClass& y) { return x.length < y.length; });
    if (keep_ball) *keep_ball = ball;
    return out;
}

namespace {

double disk_boundary_angle(const MobiusIsometry& h, double fp, bool at_inf) {
    // Image of a boundary point of the upper half-plane on the unit circle.
    if (at_inf) {
        if (std::abs(h.c) < 1e-13 * (std::abs(h.a) + 1)) return 0.0;  // arg of +1
        return std::arg(uhp_to_disk(cplx(h.a / h.c, 0)));
    }
    const double denom = h.c * fp + h.d;
    if (std::abs(denom) < 1e-13 * (std::abs(h.c * fp) + std::abs(h.d) + 1)) return 0.0;
    return std::arg(uhp_to_disk(cplx((h.a * fp + h.b) / denom, 0)));
}

bool chords_cross(double a1, double r1, double a2, double r2) {
    auto norm = [](double t) {
        while (t < 0) t += 2 * M_PI;
        while (t >= 2 * M_PI) t -= 2 * M_PI;
        return t;
    };
    auto in_arc = [&](double x, double lo, double hi) {
        const double span = norm(hi - lo);
        const double off = norm(x - lo);
        return off > 1e-9 && off < span - 1e-9;
    };
    return in_arc(a2, a1, r1) != in_arc(r2, a1, r1);
}

bool same_axis(double a1, double r1, double a2, double r2) {
    const double d1 = std::abs(std::remainder(a2 - a1, 2 * M_PI)) +
                      std::abs(std::remainder(r2 - r1, 2 * M_PI));
    const double d2 = std::abs(std::remainder(a2 - r1, 2 * M_PI)) +
                      std::abs(std::remainder(r2 - a1, 2 * M_PI));
    return std::min(d1, d2) < 1e-9;
}

}  // namespace

int count_self_crossings(const GeodesicClass& cls, const GroupBall& ball,
                         double dirichlet_radius, bool* certified) {
    const MobiusIsometry& g = cls.rep;
    const auto fp = g.fixed_points();
    const MobiusIsometry id = MobiusIsometry::identity();
    const double a1 = disk_boundary_angle(id, fp.attracting, fp.attracting_at_inf);
    const double r1 = disk_boundary_angle(id, fp.repelling, fp.repelling_at_inf);
    const double axis_dist = g.axis_distance_from_origin();
    const double bound = cls.length + 2 * axis_dist + 0.6;
    if (certified) {
        const double covered = std::min(ball.min_unexplored, ball.prune_radius) - dirichlet_radius;
        *certified = ball.closed && bound <= covered;
    }

    // Reduce a crossing translate to a canonical double-coset representative
    // <g> h <g> of minimal displacement.
    const MobiusIsometry gi = g.inverse();
    auto coset_reduce = [&](MobiusIsometry h) {
        bool improved = true;
        while (improved) {
            improved = false;
            for (const MobiusIsometry* s : {&g, &gi}) {
                for (int side = 0; side < 2; ++side) {
                    const MobiusIsometry c =
                        (side == 0 ? (*s) * h : h * (*s)).normalized();
                    if (c.origin_displacement() < h.origin_displacement() - 1e-12) {
                        h = c;
                        improved = true;
                    }
                }
            }
        }
        return h.sign_canonical();
    };

    std::vector<MobiusIsometry> reps;
    auto push_unique = [&](const MobiusIsometry& h) {
        for (const auto& r : reps)
            if (matrices_match(r, h)) return;
        reps.push_back(h);
    };
    for (const auto& el : ball.elems) {
        if (el.disp > bound) continue;
        const double a2 = disk_boundary_angle(el.m, fp.attracting, fp.attracting_at_inf);
        const double r2 = disk_boundary_angle(el.m, fp.repelling, fp.repelling_at_inf);
        if (same_axis(a1, r1, a2, r2)) continue;
        if (!chords_cross(a1, r1, a2, r2)) continue;
        push_unique(coset_reduce(el.m));
    }
    // Pair h with h^{-1}: each geometric crossing contributes both.
    std::vector<char> used(reps.size(), 0);
    int crossings = 0;
    for (std::size_t i = 0; i < reps.size(); ++i) {
        if (used[i]) continue;
        used[i] = 1;
        const MobiusIsometry hin = coset_reduce(reps[i].inverse());
        for (std::size_t j = i; j < reps.size(); ++j) {
            if (used[j] && j != i) continue;
            if (matrices_match(reps[j], hin)) {
                used[j] = 1;
                break;
            }
        }
        ++crossings;
    }
    return crossings;
}

Spectrum length_spectrum(const SurfaceModel& model, double cutoff, int max_word_len) {
    const ClassList cl = enumerate_geodesics(model.generators(), model.homology(),
                                             model.dirichlet_radius(), cutoff, max_word_len);
    Spectrum sp;
    sp.cutoff = cutoff;
    sp.horizon = cl.horizon;
    sp.possibly_incomplete = cutoff > cl.horizon + 1e-12;

    std::map<std::pair<long long, int>, SpectrumEntry> agg;
    for (const auto& c : cl.classes) {
        const std::pair<long long, int> key{llround(c.length * 1e9), c.separating ? 1 : 0};
        auto& e = agg[key];
        const std::string w = word_to_string(c.word, model.num_generators());
        if (e.multiplicity == 0) {
            e.length = c.length;
            e.separating = c.separating;
            e.word = w;
        } else if (std::make_pair(w.size(), w) < std::make_pair(e.word.size(), e.word)) {
            e.word = w;
        }
        e.multiplicity += 1;
        e.certified_complete = c.length <= cl.horizon + 1e-12;
    }
    for (auto& [k, e] : agg) sp.entries.push_back(e);
    std::sort(sp.entries.begin(), sp.entries.end(), [](const SpectrumEntry& x, const SpectrumEntry& y) {
        return std::make_pair(x.length, x.separating) < std::make_pair(y.length, y.separating);
    });
    return sp;
}

SystoleCertificate certify_systole(const SurfaceModel& model, int edge) {
    SystoleCertificate cert;
    cert.cuff_length = model.cuff_length(edge);
    const double a = cert.cuff_length;

    if (model.spec().kind == SurfaceSpec::Kind::PantsGlued) {
        double min_dc = std::numeric_limits<double>::infinity();
        for (int e = 0; e < static_cast<int>(model.spec().edges.size()); ++e)
            min_dc = std::min(min_dc, 2 * hyptrig::collar_halfwidth(model.cuff_length(e)));
        cert.min_doubled_collar = min_dc;
        if (min_dc > a) {
            // Non-crossing geodesics live inside a single pair of pants.
            cert.route = "collar+pants-spectrum";
            double shortest = std::numeric_limits<double>::infinity();
            double horizon = std::numeric_limits<double>::infinity();
            for (int p = 0; p < model.num_pants(); ++p) {
                const PantsGeometry& pg = model.pants(p);
                const std::vector<MobiusIsometry> gens{pg.cuff_holonomy(0), pg.cuff_holonomy(1)};
                const ClassList cl = enumerate_geodesics(gens, HomologyTester(2, {}),
                                                         pg.core_radius(), a + 0.01, 256);
                horizon = std::min(horizon, cl.horizon);
                for (const auto& c : cl.classes) shortest = std::min(shortest, c.length);
            }
            cert.shortest_found = shortest;
            cert.horizon = horizon;
            if (shortest < a - 1e-9) {
                cert.status = SystoleCertificate::Status::Refuted;
                cert.note = "a shorter closed geodesic exists inside a pair of pants";
            } else if (horizon >= a - 1e-12) {
                cert.status = SystoleCertificate::Status::Certified;
                cert.note = "crossing curves exceed the doubled collar width; "
                            "pants spectra contain nothing below the cuff length";
            } else {
                cert.status = SystoleCertificate::Status::Unknown;
                cert.note = "pants spectrum enumeration horizon below the cuff length";
            }
            return cert;
        }
    }

    // Direct route: complete full-surface enumeration below the cuff length.
    cert.route = "direct-spectrum";
    if (model.spec().kind == SurfaceSpec::Kind::PantsGlued) {
        double min_dc = std::numeric_limits<double>::infinity();
        for (int e = 0; e < static_cast<int>(model.spec().edges.size()); ++e)
            min_dc = std::min(min_dc, 2 * hyptrig::collar_halfwidth(model.cuff_length(e)));
        cert.min_doubled_collar = min_dc;
    }
    ClassList cl;
    try {
        cl = enumerate_geodesics(model.generators(), model.homology(), model.dirichlet_radius(),
                                 a + 0.01, 64, 8'000'000);
    } catch (const std::exception& ex) {
        cert.status = SystoleCertificate::Status::Unknown;
        cert.note = std::string("enumeration failed: ") + ex.what();
        return cert;
    }
    cert.horizon = cl.horizon;
    double shortest = std::numeric_limits<double>::infinity();
    bool cuff_present = false;
    for (const auto& c : cl.classes) {
        shortest = std::min(shortest, c.length);
        if (std::abs(c.length - a) < 1e-9 * (1 + a)) cuff_present = true;
    }
    cert.shortest_found = shortest;
    if (shortest < a - 1e-9) {
        cert.status = SystoleCertificate::Status::Refuted;
        cert.note = "a shorter closed geodesic was found";
    } else if (cl.horizon >= a - 1e-12 && cuff_present) {
        cert.status = SystoleCertificate::Status::Certified;
        cert.note = "complete enumeration below the cuff length found nothing shorter";
    } else {
        cert.status = SystoleCertificate::Status::Unknown;
        cert.note = "enumeration horizon below the cuff length";
    }
    return cert;
}

SeparatingSearch minimal_separating_simple(const SurfaceModel& model, double cutoff,
                                           int max_word_len) {
    SeparatingSearch out;
    const double D = model.dirichlet_radius();
    GroupBall ball;
    const ClassList cl = enumerate_geodesics(model.generators(), model.homology(), D, cutoff,
                                             max_word_len, 8'000'000, &ball);
    out.horizon = cl.horizon;
    for (const auto& c : cl.classes) {
        if (!c.separating) continue;
        bool certified = false;
        const int crossings = count_self_crossings(c, ball, D, &certified);
        if (crossings == 0) {
            out.found = true;
            out.length = c.length;
            out.word = word_to_string(c.word, model.num_generators());
            out.simple_certified = certified && c.length <= cl.horizon + 1e-12;
            return out;
        }
    }
    return out;
}

void write_spectrum_csv(std::ostream& os, const Spectrum& spectrum) {
    os << "length,multiplicity,separating,word\n";
    char buf[64];
    for (const auto& e : spectrum.entries) {
        std::snprintf(buf, sizeof buf, "%.17g", e.length);
        os << buf << ',' << e.multiplicity << ',' << (e.separating ? 1 : 0) << ',' << e.word
           << '\n';
    }
}

}  // namespace hypwidth::fuchsian
