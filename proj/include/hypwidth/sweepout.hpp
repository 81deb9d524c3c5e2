#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hypwidth/fuchsian.hpp"
#include "hypwidth/pants.hpp"

namespace hypwidth::sweepout {

using fuchsian::Word;

// A pair of pants as a flow domain: the chart is the Poincare disk holding the
// doubled hexagon, the pairings are the cuff holonomies W1, W2, W3.
class PantsDomain {
  public:
    explicit PantsDomain(const hyptrig::CuffLengths& cuffs);

    const PantsGeometry& geometry() const { return geo_; }
    double cuff_length(int slot) const { return geo_.cuff_length(slot); }
    // Letters +-1, +-2 act as W1, W2 and inverses; markers are words in these.
    MobiusIsometry word_matrix(const Word& w) const;
    // Free generators for deck-marker algebra (letter 3 is rewritten).
    const MobiusIsometry& generator(int k) const;  // k = 0,1
    double chart_radius() const { return geo_.core_radius() + 1.0; }
    double hexagon_relation_residual() const { return geo_.closure_residual(); }
    // Figure-eight free homotopy class (winds cuffs 1 and 2): word in letters.
    Word figure_eight_word() const { return {1, -2}; }

  private:
    PantsGeometry geo_;
    MobiusIsometry gen_[2];
};

PantsDomain build_pants_domain(const hyptrig::CuffLengths& cuffs);

// Closed polyline on the pants: disk-chart points plus per-edge deck markers.
// Edge i joins points[i] to markers[i](points[i+1]), all seen in points[i]'s chart.
struct DiscreteCurve {
    std::vector<cplx> points;
    std::vector<Word> markers;  // same size as points (edge i: points[i] -> points[i+1])
    double resolution = 0.05;

    int size() const { return static_cast<int>(points.size()); }
    double length(const PantsDomain& dom) const;
    // Concatenated marker word, freely reduced.
    Word holonomy_word() const;
    // Canonical cyclically-reduced form of the holonomy (free homotopy class
    // invariant; constant along the flow and across resampling).
    std::string homotopy_class(const PantsDomain& dom) const;
    void validate(const PantsDomain& dom) const;
};

// Curve along the broken geodesic realizing a free homotopy class word.
DiscreteCurve initial_class_curve(const PantsDomain& dom, const Word& cls, double resolution);

struct FlowStats {
    int steps = 0;
    double initial_length = 0;
    double final_length = 0;
    double max_move_per_dt = 0;  // last step
};

// One simultaneous step: each vertex moves toward the hyperbolic midpoint of
// its neighbours by fraction lambda = 2*dt/resolution^2. lambda <= 1 is the
// provably length-nonincreasing regime; larger dt may increase length and
// trips the monotonicity guard in shorten().
void flow_step(DiscreteCurve& curve, const PantsDomain& dom, double dt);

// Run `steps` flow steps with periodic resampling and chart normalization.
// Throws ConvergenceError if a step increases the length beyond 1e-12.
FlowStats shorten(DiscreteCurve& curve, const PantsDomain& dom, int steps, double dt,
                  bool resample = true);

// Flow until the length stagnates (relative change below tol per block).
FlowStats flow_to_geodesic(DiscreteCurve& curve, const PantsDomain& dom, double tol = 1e-13,
                           int max_steps = 2'000'000);

// Transverse self-intersections of the projected curve.
struct Crossing {
    int seg_a = 0, seg_b = 0;
    cplx point;        // in the unrolled base chart
    Word translate;    // deck word carrying segment b across
    double offset_a = 0, offset_b = 0;  // arclength positions of the crossing
};
std::vector<Crossing> self_intersections(const DiscreteCurve& curve, const PantsDomain& dom);

enum class SurgeryDirection { Split, Merge };

// Resolve the unique self-intersection at scale t: Split yields two disjoint
// embedded curves, Merge one embedded curve; both strictly shorter.
std::vector<DiscreteCurve> surgery(const DiscreteCurve& curve, const PantsDomain& dom,
                                   SurgeryDirection dir, double t);

// Figure-eight geodesic by hierarchical curve shortening in its class.
DiscreteCurve figure_eight_geodesic(const PantsDomain& dom, double resolution = 0.02);

struct SweepoutSample {
    double t = 0;
    double length = 0;
    int components = 0;
    std::vector<DiscreteCurve> curves;
    std::string note;
};

struct SweepoutTrace {
    std::vector<SweepoutSample> samples;
    double max_length = 0;
    int max_index = -1;
};

// The one-parameter sweepout of the pants: t = -1 gives the two wound cuffs
// (union), t = 0 the figure eight, t = +1 the distinguished cuff.
SweepoutTrace run_sweepout(const PantsDomain& dom, double resolution = 0.02,
                           int samples_per_side = 12);

// Composite traces assembled from the single-pants trace by the gluing pattern.
// Necklace family: phases concatenate, junction states match, self-glued end
// cuffs cancel mod 2; the max equals the single-pants max.
SweepoutTrace composite_trace_small_systole(const SweepoutTrace& pants_trace, int genus);
// Three-shared-cuffs family: two joined pants sweeps plus the static cuff
// cycle; the max equals the pants max plus the cuff length.
SweepoutTrace composite_trace_three_cuff(const SweepoutTrace& pants_trace, double L);

void write_trace_csv(std::ostream& os, const SweepoutTrace& trace);
void write_polyline(std::ostream& os, const DiscreteCurve& curve, const PantsDomain& dom);

}  // namespace hypwidth::sweepout
