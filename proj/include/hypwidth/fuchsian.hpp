#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hypwidth/mobius.hpp"
#include "hypwidth/pants.hpp"

namespace hypwidth::fuchsian {

// Declarative description of a closed hyperbolic surface: either the Bolza
// surface or a trivalent pants gluing with cuff lengths and twists.
struct SurfaceSpec {
    enum class Kind { PantsGlued, Bolza };

    struct Edge {
        int pants_a = 0, slot_a = 0;
        int pants_b = 0, slot_b = 0;
        double length = 1.0;
        double twist = 0.0;
    };

    Kind kind = Kind::PantsGlued;
    int genus = 2;
    int num_pants = 0;
    std::vector<Edge> edges;  // 3*genus-3 entries; every (pants,slot) matched once

    static SurfaceSpec bolza();
    // S_{m,a}: necklace of 2m-2 pants with self-glued end cuffs, all cuffs of
    // length a, zero twists. Systole certified separately.
    static SurfaceSpec small_systole_family(int genus, double a);
    // S_L: two pants sharing all three cuffs (theta graph), all of length L.
    static SurfaceSpec three_cuff_family(double L);

    void validate() const;
};

// Signed generator letters: +k / -k for generator k (1-based) and its inverse.
using Word = std::vector<int>;

std::string word_to_string(const Word& w, int num_generators);
Word word_from_string(const std::string& s, int num_generators);

// Ball of group elements with origin displacement below a pruning radius,
// produced by breadth-first closure over the generators with matrix dedup.
struct GroupBall {
    struct Element {
        MobiusIsometry m;
        int parent = -1;
        int letter = 0;  // signed letter appended to the parent's word
        float disp = 0;
    };
    std::vector<Element> elems;  // elems[0] = identity
    double prune_radius = 0;
    // Minimum displacement among children rejected by pruning or by the word
    // length cap; prune_radius when the closure completed with no rejections.
    double min_unexplored = 0;
    bool closed = false;

    int find(const MobiusIsometry& m) const;
    bool contains(const MobiusIsometry& m) const { return find(m) >= 0; }
    Word word_of(int index) const;
    std::vector<int> indices_by_displacement() const;

  private:
    friend GroupBall enumerate_ball(const std::vector<MobiusIsometry>&, double, int, std::size_t,
                                    double);
    std::unordered_map<std::uint64_t, std::vector<int>> buckets_;
    std::unordered_map<int, Word> splice_words_;  // closure products: full suffix words
    void insert_bucket(const MobiusIsometry& m, int idx);
};

// `closure_disp` > 0 additionally closes the ball under right-multiplication by
// all elements with displacement below it (pass 2*D + pad so the Dirichlet side
// pairings are covered; the completeness horizon relies on this closure).
GroupBall enumerate_ball(const std::vector<MobiusIsometry>& generators, double prune_radius,
                         int max_word_len, std::size_t max_elements, double closure_disp = 0.0);

// Mod-2 homology class test. A closed curve (not necessarily simple) separates
// the surface iff its class vanishes in H_1(S; Z_2), i.e. the exponent-parity
// vector of its word lies in the GF(2) span of the abelianized relations.
class HomologyTester {
  public:
    HomologyTester() = default;
    HomologyTester(int num_generators, std::vector<std::vector<long long>> relations);
    bool is_trivial(const Word& word) const;
    int rank() const { return rank_; }  // Z_2-rank of H_1 = 2*genus

  private:
    int n_ = 0;
    int rank_ = 0;
    std::vector<std::uint64_t> basis_;  // echelonized relation parities
};

// (length, multiplicity, separating, representative word) for one value of the
// primitive length spectrum. Multiplicity counts unoriented conjugacy classes.
struct SpectrumEntry {
    double length = 0;
    int multiplicity = 0;
    bool separating = false;
    std::string word;
    bool certified_complete = false;
};

struct Spectrum {
    std::vector<SpectrumEntry> entries;
    double horizon = 0;  // provably complete below this length
    double cutoff = 0;
    bool possibly_incomplete = false;
};

struct SystoleCertificate {
    enum class Status { Certified, Refuted, Unknown };
    Status status = Status::Unknown;
    double cuff_length = 0;
    double min_doubled_collar = 0;  // min over cuffs of 2*collar_halfwidth
    double shortest_found = 0;      // shortest geodesic seen by the chosen route
    double horizon = 0;
    std::string route;
    std::string note;
    bool ok() const { return status == Status::Certified; }
};

// A concrete holonomy representation: generators, relations, homology data and
// (for pants gluings) the positioned pants geometries.
class SurfaceModel {
  public:
    static SurfaceModel build(const SurfaceSpec& spec);

    const SurfaceSpec& spec() const { return spec_; }
    int num_generators() const { return static_cast<int>(gens_.size()); }
    const std::vector<MobiusIsometry>& generators() const { return gens_; }
    const std::string& generator_name(int k) const { return gen_names_[k]; }
    MobiusIsometry word_matrix(const Word& w) const;

    // Max matrix residual over the defining relations of the presentation.
    double relation_residual() const { return relation_residual_; }
    const HomologyTester& homology() const { return homology_; }

    int num_pants() const { return static_cast<int>(pants_.size()); }
    const PantsGeometry& pants(int p) const { return pants_[p]; }
    const MobiusIsometry& pants_position(int p) const { return pants_pos_[p]; }

    double cuff_length(int edge) const;
    // Holonomy of cuff `edge` as seen from its (pants_a, slot_a) side.
    const MobiusIsometry& cuff_holonomy(int edge) const { return cuff_holo_[edge]; }

    // Estimated circumradius of the Dirichlet domain at the chart origin,
    // padded; used for pruning radii and completeness horizons. Computed on
    // first use (analytic for the Bolza octagon).
    double dirichlet_radius() const;

    bool is_separating_word(const Word& w) const { return homology_.is_trivial(w); }

  private:
    SurfaceSpec spec_;
    std::vector<MobiusIsometry> gens_;
    std::vector<std::string> gen_names_;
    double relation_residual_ = 0;
    HomologyTester homology_;
    std::vector<PantsGeometry> pants_;
    std::vector<MobiusIsometry> pants_pos_;
    std::vector<MobiusIsometry> cuff_holo_;
    mutable double dirichlet_radius_ = -1;
};

// Conjugacy classes of primitive hyperbolic elements with length <= cutoff.
struct GeodesicClass {
    double length = 0;
    MobiusIsometry rep;
    Word word;
    bool separating = false;
};

struct ClassList {
    std::vector<GeodesicClass> classes;
    double horizon = 0;
    bool closed = false;
};

// Core enumeration shared by spectra and certificates. `dirichlet_radius`
// bounds the distance from the origin to any point of the surface (or convex
// core); the result is provably complete below `horizon`.
ClassList enumerate_geodesics(const std::vector<MobiusIsometry>& gens,
                              const HomologyTester& homology, double dirichlet_radius,
                              double cutoff, int max_word_len,
                              std::size_t max_elements = 8'000'000,
                              GroupBall* keep_ball = nullptr);

// Number of transverse self-crossings of the closed geodesic of `cls`,
// counted from crossing deck translates of its axis in the ball.
// `certified` reports whether the ball provably covers all crossing translates.
int count_self_crossings(const GeodesicClass& cls, const GroupBall& ball,
                         double dirichlet_radius, bool* certified);

Spectrum length_spectrum(const SurfaceModel& model, double cutoff, int max_word_len);

SystoleCertificate certify_systole(const SurfaceModel& model, int edge);

// Least length of a separating geodesic certified simple (no deck translate of
// its axis crosses it). Used by the Bolza width bracket.
struct SeparatingSearch {
    bool found = false;
    double length = 0;
    std::string word;
    bool simple_certified = false;
    double horizon = 0;
};
SeparatingSearch minimal_separating_simple(const SurfaceModel& model, double cutoff,
                                           int max_word_len);

void write_spectrum_csv(std::ostream& os, const Spectrum& spectrum);

}  // namespace hypwidth::fuchsian
