#pragma once

#include <vector>

#include "parcurve/offset_geometry.hpp"
#include "parcurve/sampled_curve.hpp"

namespace parcurve {

struct CoverPiece {
    enum class Kind { arc, segment };
    Kind kind = Kind::arc;
    int interval_index = -1;  // arcs: index into the ParallelSet intervals
    Vec2 start, end;
    double length = 0.0;
};

// The closed covering curve: offset arcs in cyclic order joined by straight
// segments from each arc's terminal point to the next arc's start. Segments
// may degenerate to points; the trace need not be simple.
struct CoverCurve {
    double t = 0.0;
    std::vector<CoverPiece> pieces;
    std::vector<ArcInterval> intervals;  // copied from the parallel set, same order
    std::vector<Vec2> arc_starts;        // p_k = gamma(a_k) + t n(a_k)
    std::vector<Vec2> arc_ends;          // q_k = gamma(b_k) + t n(b_k)
    double length = 0.0;
    bool symmetric = false;
    std::vector<Vec2> trace;  // dense closed polyline along the pieces
};

// Builds the cover from a regular, non-empty parallel set. Throws otherwise.
CoverCurve build_cover(const ParallelSet& ps, const SampledCurve& curve);

struct GapCheck {
    int k = 0;                // gap follows interval k
    double segment_length = 0.0;
    double gap_span = 0.0;    // a_{k+1} - b_k along the boundary
    double curvature_integral = 0.0;
    double bound = 0.0;       // gap_span - t * curvature_integral
    double margin = 0.0;      // bound - segment_length
};

struct CoverBoundReport {
    std::vector<GapCheck> gaps;
    double cover_length = 0.0;
    double hartman_bound = 0.0;  // L - 2 pi t
    double global_margin = 0.0;
    bool all_gaps_ok = true;
};

// Checks the per-gap segment bound and the aggregate length bound. Failures
// are reported, not thrown.
CoverBoundReport verify_cover_bound(const CoverCurve& cc, const SampledCurve& curve);

struct HartmanRefinedReport {
    double t = 0.0;
    double length_St = 0.0;
    int n_components = 0;
    std::vector<double> component_distances;  // dist(Gamma_n, S_t minus Gamma_n)
    double distance_sum = 0.0;                // zero when there is one component
    double bound = 0.0;                       // L - 2 pi t
    double margin = 0.0;                      // bound - |S_t| - distance_sum
    double plain_margin = 0.0;                // bound - |S_t|
};

// The component-distance refinement of the length bound.
HartmanRefinedReport verify_hartman_refined(const ParallelSet& ps, const SampledCurve& curve);

// True when reflecting every point through the origin lands within tol of the
// set; grid-accelerated symmetric-set test.
bool point_set_centrally_symmetric(const std::vector<Vec2>& points, double tol);

}  // namespace parcurve
