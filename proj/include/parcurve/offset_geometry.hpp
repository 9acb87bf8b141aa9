#pragma once

#include <optional>
#include <vector>

#include "parcurve/sampled_curve.hpp"
#include "parcurve/vec2.hpp"

namespace parcurve {

// One maximal run [a, b] of boundary parameters whose offset points survive the
// distance pruning. b may exceed L when the run wraps through s = 0.
struct ArcInterval {
    double a = 0.0;
    double b = 0.0;
    bool full_cover = false;  // the run is the whole circle [a, a + L)
};

// Positions and weights for line integrals with the offset measure
// (1 - t*kappa(s)) ds; the weight sum is the arc length.
struct LineQuadrature {
    std::vector<Vec2> points;
    std::vector<double> weights;

    double total_weight() const {
        double sum = 0.0;
        for (double w : weights) sum += w;
        return sum;
    }
};

// The inner parallel set S_t: surviving offset arcs, their grouping into
// closed components, and the arc-length of the set.
struct ParallelSet {
    double t = 0.0;
    std::vector<ArcInterval> intervals;        // cyclically ordered, first = smallest a
    std::vector<std::vector<Vec2>> arcs;       // display samples of Phi(.,t) per interval
    std::vector<LineQuadrature> quadratures;   // per-interval integration nodes
    std::vector<std::vector<int>> components;  // interval indices per closed loop
    double length = 0.0;                       // integral of (1 - t*kappa) over intervals
    bool regular = true;   // endpoint structure stable under halving the tolerance
    bool empty = false;

    int component_count() const { return static_cast<int>(components.size()); }
};

// Distance from x to the boundary curve: coarse minimum over samples, refined
// by Newton projection on the analytic parametrization.
double distance_to_boundary(const Vec2& x, const SampledCurve& curve);

struct InradiusResult {
    double r_i = 0.0;
    Vec2 argmax;
};

// Maximizes the boundary distance over the interior: coarse interior grid with
// a parity test, then grid-zoom refinement. Throws when no interior grid point
// is found.
InradiusResult inradius(const SampledCurve& curve, int grid = 128);

struct AlphaCurve {
    double t = 0.0;
    std::vector<Vec2> points;  // gamma(s_i) + t n(s_i), all of them, unpruned
    double length = 0.0;       // integral of |1 - t kappa| ds
};

// The unpruned offset trace alpha_t; may self-intersect.
AlphaCurve alpha_curve(const SampledCurve& curve, double t);

struct ParallelSetOptions {
    // Membership certification band as a multiple of the sample spacing L/n;
    // also the emptiness scale.
    double dist_tol_factor = 10.0;
    // Classification tolerance relative to L. Distances are Newton-refined,
    // so activity can be decided far below the membership band; a blunt
    // threshold would keep offset points past swallowtail crossings, whose
    // distance deficit is small but real.
    double activity_tol_rel = 1e-6;
    // Arc-endpoint matching tolerance for component closure, x L/n.
    double join_tol_factor = 5.0;
    int bisection_steps = 40;
    // Endpoint shift allowed when the activity tolerance is halved, x delta_dist.
    double stability_factor = 4.0;
    // Known in-radius; avoids recomputing it when classifying empty levels.
    std::optional<double> known_inradius;
};

// Prunes the offset trace at depth t down to the inner parallel set
// (activity test on the boundary distance of Phi(s,t), endpoint bisection,
// component grouping). Throws when t exceeds the in-radius beyond tolerance.
ParallelSet parallel_set(const SampledCurve& curve, double t,
                         const ParallelSetOptions& options = {});

// Largest depth on a refinement grid up to which the offset map stays
// injective (offset polyline remains simple and fold-free). Never exceeds r_i.
double t_star_estimate(const SampledCurve& curve, int grid = 64);

// Integration nodes for one offset arc. Full-cover intervals use the periodic
// trapezoid rule on the native grid; partial intervals use composite
// Gauss-Legendre panels.
LineQuadrature offset_arc_quadrature(const SampledCurve& curve, const ArcInterval& interval,
                                     double t);

}  // namespace parcurve
