#include "parcurve/cover_builder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

namespace parcurve {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct GaussLegendre4 {
    static constexpr double node[4] = {-0.8611363115940526, -0.3399810435848563,
                                       0.3399810435848563, 0.8611363115940526};
    static constexpr double weight[4] = {0.3478548451374538, 0.6521451548625461,
                                         0.6521451548625461, 0.3478548451374538};
};

// Quadrature of kappa ds over the boundary stretch [s_from, s_to] (s_to may
// exceed L to express wrap-around).
double curvature_integral(const SampledCurve& curve, double s_from, double s_to) {
    if (s_to <= s_from) return 0.0;
    if (!curve.smooth()) {
        double sum = 0.0;
        const double ds = curve.spacing();
        for (double s = s_from; s < s_to; s += ds)
            sum += curve.curvature_at(s) * std::min(ds, s_to - s);
        return sum;
    }
    const CurveModel& model = curve.model();
    const double L = curve.length();
    double ua = curve.param_at(std::fmod(s_from, L));
    double ub = curve.param_at(std::fmod(s_to, L));
    const double span = s_to - s_from;
    while (ub <= ua && span > 0.0) ub += model.period();
    // kappa(u) * |gamma'(u)| du = kappa ds
    const int panels = std::max(4, static_cast<int>(std::ceil((ub - ua) / (model.period() / curve.n()))));
    const double h = (ub - ua) / panels;
    double sum = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = ua + h * (p + 0.5);
        for (int q = 0; q < 4; ++q) {
            const double u = mid + 0.5 * h * GaussLegendre4::node[q];
            sum += GaussLegendre4::weight[q] * 0.5 * h * model.curvature(u) * model.speed(u);
        }
    }
    return sum;
}

}  // namespace

bool point_set_centrally_symmetric(const std::vector<Vec2>& points, double tol) {
    if (points.empty()) return true;
    const double cell = std::max(tol, 1e-300);
    std::unordered_map<long long, std::vector<int>> grid;
    auto key = [cell](double x, double y) {
        const long long cx = static_cast<long long>(std::floor(x / cell));
        const long long cy = static_cast<long long>(std::floor(y / cell));
        return cx * 73856093LL ^ cy * 19349663LL;
    };
    grid.reserve(points.size() * 2);
    for (int i = 0; i < static_cast<int>(points.size()); ++i)
        grid[key(points[i].x, points[i].y)].push_back(i);

    for (const auto& p : points) {
        const Vec2 q = -p;
        bool found = false;
        for (int dy = -1; dy <= 1 && !found; ++dy) {
            for (int dx = -1; dx <= 1 && !found; ++dx) {
                const auto it = grid.find(key(q.x + dx * cell, q.y + dy * cell));
                if (it == grid.end()) continue;
                for (int j : it->second) {
                    if ((points[j] - q).norm() <= tol) {
                        found = true;
                        break;
                    }
                }
            }
        }
        if (!found) return false;
    }
    return true;
}

CoverCurve build_cover(const ParallelSet& ps, const SampledCurve& curve) {
    if (ps.empty) throw std::invalid_argument("build_cover: parallel set is empty");
    if (!ps.regular) throw std::invalid_argument("build_cover: irregular level");

    CoverCurve cc;
    cc.t = ps.t;
    cc.intervals = ps.intervals;
    const int m = static_cast<int>(ps.intervals.size());
    cc.arc_starts.resize(m);
    cc.arc_ends.resize(m);
    for (int k = 0; k < m; ++k) {
        cc.arc_starts[k] = curve.offset_at(ps.intervals[k].a, ps.t);
        cc.arc_ends[k] = curve.offset_at(ps.intervals[k].b, ps.t);
    }

    for (int k = 0; k < m; ++k) {
        CoverPiece arc;
        arc.kind = CoverPiece::Kind::arc;
        arc.interval_index = k;
        arc.start = cc.arc_starts[k];
        arc.end = cc.arc_ends[k];
        arc.length = ps.quadratures[k].total_weight();
        cc.pieces.push_back(arc);
        cc.trace.insert(cc.trace.end(), ps.arcs[k].begin(), ps.arcs[k].end());

        if (m == 1 && ps.intervals[k].full_cover) break;  // closed arc, no joins

        CoverPiece seg;
        seg.kind = CoverPiece::Kind::segment;
        seg.start = cc.arc_ends[k];
        seg.end = cc.arc_starts[(k + 1) % m];
        seg.length = (seg.end - seg.start).norm();  // may be zero
        cc.pieces.push_back(seg);
        cc.trace.push_back(seg.end);
    }

    for (const auto& piece : cc.pieces) cc.length += piece.length;

    const double join_tol = 5.0 * curve.spacing();
    cc.symmetric = is_centrally_symmetric(curve.spec()) &&
                   point_set_centrally_symmetric(cc.trace, join_tol);
    return cc;
}

CoverBoundReport verify_cover_bound(const CoverCurve& cc, const SampledCurve& curve) {
    CoverBoundReport report;
    const double L = curve.length();
    report.cover_length = cc.length;
    report.hartman_bound = L - kTwoPi * cc.t;
    report.global_margin = report.hartman_bound - cc.length;

    const int m = static_cast<int>(cc.intervals.size());
    // Degenerate corner gaps sit exactly at equality in the segment bound, so
    // the verdict needs the same slack as the global length tolerance.
    const double tol = 1e-5 * L;
    int gap_index = 0;
    for (const auto& piece : cc.pieces) {
        if (piece.kind != CoverPiece::Kind::segment) continue;
        const int k = gap_index++;
        const double b_k = std::fmod(cc.intervals[k].b, L);
        const double a_next = std::fmod(cc.intervals[(k + 1) % m].a, L);
        double span = a_next - b_k;
        while (span < 0.0) span += L;

        GapCheck gap;
        gap.k = k;
        gap.segment_length = piece.length;
        gap.gap_span = span;
        gap.curvature_integral = curvature_integral(curve, b_k, b_k + span);
        gap.bound = gap.gap_span - cc.t * gap.curvature_integral;
        gap.margin = gap.bound - gap.segment_length;
        if (gap.margin < -tol) report.all_gaps_ok = false;
        report.gaps.push_back(gap);
    }
    return report;
}

HartmanRefinedReport verify_hartman_refined(const ParallelSet& ps, const SampledCurve& curve) {
    HartmanRefinedReport report;
    report.t = ps.t;
    report.length_St = ps.length;
    report.n_components = ps.component_count();
    report.bound = curve.length() - kTwoPi * ps.t;
    report.plain_margin = report.bound - ps.length;

    const int nc = report.n_components;
    if (nc <= 1) {
        report.component_distances.assign(std::max(nc, 0), 0.0);
        report.distance_sum = 0.0;
        report.margin = report.plain_margin;
        return report;
    }

    // Pairwise component distances: coarse minimum over arc samples, then one
    // local alternating refinement along the arcs.
    struct TaggedPoint {
        Vec2 p;
        double s;
        int interval;
    };
    const double ds = curve.spacing();
    std::vector<std::vector<TaggedPoint>> comp_points(nc);
    for (int c = 0; c < nc; ++c) {
        for (int k : ps.components[c]) {
            const ArcInterval& iv = ps.intervals[k];
            const size_t count = ps.arcs[k].size();
            const double s_first_inner = std::ceil(iv.a / ds) * ds;
            for (size_t j = 0; j < count; ++j) {
                double s = iv.a;
                if (j + 1 == count)
                    s = iv.b;
                else if (j > 0)
                    s = s_first_inner + (j - 1) * ds;
                comp_points[c].push_back({ps.arcs[k][j], s, k});
            }
        }
    }

    auto refine_pair = [&](const TaggedPoint& ta, const TaggedPoint& tb) {
        double sa = ta.s, sb = tb.s;
        const ArcInterval& ia = ps.intervals[ta.interval];
        const ArcInterval& ib = ps.intervals[tb.interval];
        auto ternary = [&](double s_fixed_other, double lo, double hi) {
            const Vec2 other = curve.offset_at(s_fixed_other, ps.t);
            for (int iter = 0; iter < 40; ++iter) {
                const double m1 = lo + (hi - lo) / 3.0;
                const double m2 = hi - (hi - lo) / 3.0;
                if ((curve.offset_at(m1, ps.t) - other).norm2() <
                    (curve.offset_at(m2, ps.t) - other).norm2())
                    hi = m2;
                else
                    lo = m1;
            }
            return 0.5 * (lo + hi);
        };
        for (int round = 0; round < 2; ++round) {
            sa = ternary(sb, std::max(ia.a, sa - ds), std::min(ia.b, sa + ds));
            sb = ternary(sa, std::max(ib.a, sb - ds), std::min(ib.b, sb + ds));
        }
        return (curve.offset_at(sa, ps.t) - curve.offset_at(sb, ps.t)).norm();
    };

    std::vector<std::vector<double>> pair_dist(nc, std::vector<double>(nc, 0.0));
    for (int a = 0; a < nc; ++a) {
        for (int b = a + 1; b < nc; ++b) {
            double best = std::numeric_limits<double>::infinity();
            const TaggedPoint* best_a = nullptr;
            const TaggedPoint* best_b = nullptr;
            for (const auto& pa : comp_points[a]) {
                for (const auto& pb : comp_points[b]) {
                    const double d2 = (pa.p - pb.p).norm2();
                    if (d2 < best) {
                        best = d2;
                        best_a = &pa;
                        best_b = &pb;
                    }
                }
            }
            double dist = std::sqrt(best);
            if (best_a && best_b) dist = std::min(dist, refine_pair(*best_a, *best_b));
            pair_dist[a][b] = pair_dist[b][a] = dist;
        }
    }
    report.component_distances.resize(nc);
    for (int a = 0; a < nc; ++a) {
        double best = std::numeric_limits<double>::infinity();
        for (int b = 0; b < nc; ++b)
            if (b != a) best = std::min(best, pair_dist[a][b]);
        report.component_distances[a] = best;
        report.distance_sum += best;
    }
    report.margin = report.bound - ps.length - report.distance_sum;
    return report;
}

}  // namespace parcurve
