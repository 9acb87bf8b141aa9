#include "parcurve/offset_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace parcurve {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Newton projection of x onto the analytic curve starting from the native
// parameter of sample idx; returns the refined distance (never worse than the
// starting guess thanks to the final min in the caller).
double newton_project(const SampledCurve& curve, const Vec2& x, int idx) {
    const CurveModel& model = curve.model();
    const double period = model.period();
    double u = curve.param_at(curve.s()[idx]);
    const double du_max = 4.0 * period / curve.n();
    for (int iter = 0; iter < 12; ++iter) {
        const Vec2 d = model.position(u) - x;
        const Vec2 g = model.derivative(u);
        const double f1 = 2.0 * dot(d, g);
        const double f2 = 2.0 * (dot(g, g) + dot(d, model.second_derivative(u)));
        if (!(f2 > 0.0)) break;
        double step = -f1 / f2;
        step = std::clamp(step, -du_max, du_max);
        u += step;
        if (std::abs(step) < 1e-15 * period) break;
    }
    return (model.position(u) - x).norm();
}

// Even-odd ray-casting test against the sample polygon.
bool point_inside(const Vec2& p, const std::vector<Vec2>& poly) {
    bool inside = false;
    const size_t n = poly.size();
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double x_cross = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if (p.x < x_cross) inside = !inside;
        }
    }
    return inside;
}

struct GaussLegendre4 {
    // 4-point rule on [-1, 1].
    static constexpr double node[4] = {-0.8611363115940526, -0.3399810435848563,
                                       0.3399810435848563, 0.8611363115940526};
    static constexpr double weight[4] = {0.3478548451374538, 0.6521451548625461,
                                         0.6521451548625461, 0.3478548451374538};
};

}  // namespace

double distance_to_boundary(const Vec2& x, const SampledCurve& curve) {
    const auto& pts = curve.points();
    const int n = curve.n();

    thread_local std::vector<double> d2_scratch;
    d2_scratch.resize(n);
    double best2 = kInf;
    for (int i = 0; i < n; ++i) {
        const double dx = pts[i].x - x.x;
        const double dy = pts[i].y - x.y;
        const double d2 = dx * dx + dy * dy;
        d2_scratch[i] = d2;
        if (d2 < best2) best2 = d2;
    }
    const double ds = curve.spacing();
    const double cutoff = std::sqrt(best2) + ds;
    const double cutoff2 = cutoff * cutoff;

    double best = std::sqrt(best2);
    int refined = 0;
    for (int i = 0; i < n && refined < 64; ++i) {
        const double d2 = d2_scratch[i];
        if (d2 > cutoff2) continue;
        // Local minima of the sample distances only; flat stretches are capped
        // by the refinement budget.
        if (d2 > d2_scratch[(i + n - 1) % n] || d2 > d2_scratch[(i + 1) % n]) continue;
        ++refined;
        if (curve.smooth()) {
            // Newton projection onto the analytic curve; chords would bias the
            // distance low by their sagitta.
            best = std::min(best, newton_project(curve, x, i));
        } else {
            best = std::min(best, segment_distance(x, pts[(i + n - 1) % n], pts[i]));
            best = std::min(best, segment_distance(x, pts[i], pts[(i + 1) % n]));
        }
    }
    return best;
}

InradiusResult inradius(const SampledCurve& curve, int grid) {
    const auto& pts = curve.points();
    Vec2 lo = pts[0], hi = pts[0];
    for (const auto& p : pts) {
        lo.x = std::min(lo.x, p.x);
        lo.y = std::min(lo.y, p.y);
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
    }

    InradiusResult best;
    best.r_i = -kInf;
    for (int iy = 0; iy < grid; ++iy) {
        for (int ix = 0; ix < grid; ++ix) {
            const Vec2 p{lo.x + (hi.x - lo.x) * (ix + 0.5) / grid,
                         lo.y + (hi.y - lo.y) * (iy + 0.5) / grid};
            if (!point_inside(p, pts)) continue;
            const double d = distance_to_boundary(p, curve);
            if (d > best.r_i) {
                best.r_i = d;
                best.argmax = p;
            }
        }
    }
    if (!(best.r_i > 0.0))
        throw std::runtime_error("inradius: no interior grid point found (domain too thin)");

    // Grid-zoom refinement; robust against the ridge non-smoothness of the
    // distance function near the medial axis.
    double w = std::max((hi.x - lo.x), (hi.y - lo.y)) / grid;
    for (int level = 0; level < 18; ++level) {
        InradiusResult local = best;
        for (int iy = -4; iy <= 4; ++iy) {
            for (int ix = -4; ix <= 4; ++ix) {
                if (ix == 0 && iy == 0) continue;
                const Vec2 p = best.argmax + Vec2{w * ix / 4.0, w * iy / 4.0};
                if (!point_inside(p, pts)) continue;
                const double d = distance_to_boundary(p, curve);
                if (d > local.r_i) {
                    local.r_i = d;
                    local.argmax = p;
                }
            }
        }
        best = local;
        w *= 0.4;
    }
    return best;
}

AlphaCurve alpha_curve(const SampledCurve& curve, double t) {
    AlphaCurve alpha;
    alpha.t = t;
    const int n = curve.n();
    alpha.points.resize(n);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        alpha.points[i] = curve.points()[i] + t * curve.normals()[i];
        sum += std::abs(1.0 - t * curve.curvatures()[i]);
    }
    alpha.length = sum * curve.spacing();
    return alpha;
}

LineQuadrature offset_arc_quadrature(const SampledCurve& curve, const ArcInterval& interval,
                                     double t) {
    LineQuadrature quad;
    const CurveModel& model = curve.model();

    if (!curve.smooth()) {
        // Polylines: rectangle rule on the arc-length samples with the
        // finite-difference curvature.
        const double ds = curve.spacing();
        const double b_end = interval.full_cover ? interval.a + curve.length() : interval.b;
        for (double s = interval.a; s < b_end - 1e-12 * curve.length(); s += ds) {
            const int i = static_cast<int>(std::lround(s / ds)) % curve.n();
            quad.points.push_back(curve.offset_at(s, t));
            quad.weights.push_back((1.0 - t * curve.curvatures()[i]) * ds);
        }
        return quad;
    }

    if (interval.full_cover) {
        // Periodic trapezoid on the native grid: spectrally accurate for the
        // smooth integrand (1 - t*kappa(u)) |gamma'(u)|.
        const int m = std::max(curve.n(), 1024);
        const double period = model.period();
        quad.points.resize(m);
        quad.weights.resize(m);
        for (int j = 0; j < m; ++j) {
            const double u = period * j / m;
            const Vec2 pos = model.position(u);
            const Vec2 d = model.derivative(u);
            const double v = d.norm();
            const Vec2 normal = perp(d / v);
            quad.points[j] = pos + t * normal;
            quad.weights[j] = (1.0 - t * model.curvature(u)) * v * period / m;
        }
        return quad;
    }

    const double L = curve.length();
    double ua = curve.param_at(std::fmod(interval.a, L));
    double ub = curve.param_at(std::fmod(interval.b, L));
    if (interval.b > interval.a && ub <= ua) ub += model.period();

    const int panels =
        std::max(4, static_cast<int>(std::ceil((ub - ua) / (model.period() / curve.n()))));
    const double h = (ub - ua) / panels;
    quad.points.reserve(4 * panels);
    quad.weights.reserve(4 * panels);
    for (int p = 0; p < panels; ++p) {
        const double mid = ua + h * (p + 0.5);
        for (int q = 0; q < 4; ++q) {
            const double u = mid + 0.5 * h * GaussLegendre4::node[q];
            const Vec2 pos = model.position(u);
            const Vec2 d = model.derivative(u);
            const double v = d.norm();
            const Vec2 normal = perp(d / v);
            quad.points.push_back(pos + t * normal);
            quad.weights.push_back(GaussLegendre4::weight[q] * 0.5 * h *
                                   (1.0 - t * model.curvature(u)) * v);
        }
    }
    return quad;
}

namespace {

struct EndpointRefinement {
    double s = 0.0;      // extrapolated transition parameter
    double shift = 0.0;  // movement when the activity tolerance was halved
    bool ok = true;
};

}  // namespace

ParallelSet parallel_set(const SampledCurve& curve, double t, const ParallelSetOptions& options) {
    if (t < 0.0) throw std::invalid_argument("parallel_set: t must be non-negative");
    const int n = curve.n();
    const double L = curve.length();
    const double ds = curve.spacing();
    const double delta = options.dist_tol_factor * ds;    // membership band
    const double act = options.activity_tol_rel * L;      // classification

    ParallelSet ps;
    ps.t = t;

    // Boundary distances of the offset points; the activity classifications at
    // delta and delta/2 both derive from this single pass. Samples with
    // t*kappa > 1 cannot belong to the set regardless of the distance test
    // (the distance deficit is high-order small near offset folds, so the
    // curvature condition is what prunes them reliably).
    std::vector<double> dist(n);
    std::vector<char> fold_free(n);
    for (int i = 0; i < n; ++i) {
        dist[i] = distance_to_boundary(curve.points()[i] + t * curve.normals()[i], curve);
        fold_free[i] = t * curve.curvatures()[i] <= 1.0 + 1e-9;
    }

    auto runs_for = [&](double dlt) {
        std::vector<std::pair<int, int>> runs;  // [start, end] sample indices, inclusive
        std::vector<char> active(n);
        int active_count = 0;
        for (int i = 0; i < n; ++i) {
            active[i] = fold_free[i] && dist[i] >= t - dlt;
            active_count += active[i];
        }
        if (active_count == 0 || active_count == n) return std::make_pair(runs, active_count);
        int start = 0;
        while (start < n && active[start]) ++start;  // start at an inactive sample
        int i = start;
        do {
            if (active[i % n]) {
                int j = i;
                while (active[(j + 1) % n]) ++j;
                runs.emplace_back(i % n, j % n);
                i = j + 1;
            } else {
                ++i;
            }
        } while (i < start + n);
        return std::make_pair(runs, active_count);
    };

    const auto [runs, active_count] = runs_for(act);

    if (active_count == 0) {
        double r_i = options.known_inradius ? *options.known_inradius : inradius(curve).r_i;
        if (t <= r_i + delta) {
            ps.empty = true;
            return ps;
        }
        throw std::invalid_argument("parallel_set: t exceeds the in-radius");
    }

    if (active_count == n) {
        ArcInterval iv;
        iv.a = 0.0;
        iv.b = L;
        iv.full_cover = true;
        ps.intervals.push_back(iv);
        ps.quadratures.push_back(offset_arc_quadrature(curve, iv, t));
        ps.arcs.push_back(ps.quadratures.back().points);
        ps.components.push_back({0});
        ps.length = ps.quadratures.back().total_weight();
        // Regularity: the full cover must survive the halved tolerance.
        for (int i = 0; i < n; ++i)
            if (dist[i] < t - 0.5 * act) {
                ps.regular = false;
                break;
            }
        // Razor edge at t = r_i: the set degenerates to isolated points.
        if (ps.length <= delta) ps.empty = true;
        return ps;
    }

    const auto [runs_half, active_half] = runs_for(0.5 * act);
    if (runs_half.size() != runs.size() || active_half == 0) ps.regular = false;

    auto active_at = [&](double s, double dlt) {
        if (t * curve.curvature_at(s) > 1.0 + 1e-9) return false;
        const Vec2 x = curve.offset_at(s, t);
        return distance_to_boundary(x, curve) >= t - dlt;
    };

    // Bisection for the transition point between an inactive and an active
    // sample, on the accurate predicate.
    auto refine = [&](double s_inactive, double s_active, double dlt) -> std::optional<double> {
        if (active_at(s_inactive, dlt) || !active_at(s_active, dlt)) return std::nullopt;
        double lo = s_inactive, hi = s_active;
        for (int iter = 0; iter < options.bisection_steps; ++iter) {
            const double mid = 0.5 * (lo + hi);
            if (active_at(mid, dlt))
                hi = mid;
            else
                lo = mid;
        }
        return 0.5 * (lo + hi);
    };

    // The sample-level bracket may sit a sample off for the accurate
    // predicate; walk the bracket ends until it is valid for both tolerances.
    // dir = +1 for a left (inactive -> active) endpoint, -1 for a right one;
    // dir*ds points into the run.
    auto refine_endpoint = [&](int inactive_idx, int active_idx, int dir) -> EndpointRefinement {
        EndpointRefinement out;
        double s_in = curve.s()[inactive_idx];
        double s_act = curve.s()[active_idx];
        if (dir > 0 && s_in > s_act) s_in -= L;
        if (dir < 0 && s_in < s_act) s_in += L;

        const int walk_budget = static_cast<int>(6.0 * options.dist_tol_factor);
        for (int tries = 0; tries < walk_budget && !active_at(s_act, 0.25 * act); ++tries)
            s_act += dir * ds;
        for (int tries = 0; tries < 8 && active_at(s_in, act); ++tries)
            s_in -= dir * ds;
        if (!active_at(s_act, 0.25 * act) || active_at(s_in, act)) {
            out.ok = false;
            out.s = curve.s()[active_idx];
            return out;
        }

        const auto r1 = refine(s_in, s_act, act);
        const auto r2 = refine(s_in, s_act, 0.5 * act);
        const auto r4 = refine(s_in, s_act, 0.25 * act);
        if (!r1 || !r2 || !r4) {
            out.ok = false;
            out.s = curve.s()[active_idx];
            return out;
        }
        // Richardson extrapolation of the tolerance to zero removes the
        // outward bias of the activity test through second order; the
        // crossing can be far from linear where wavefronts collide at a
        // shallow angle. The disagreement of the two first-order extrapolants
        // is the stability statistic: it bounds the remaining endpoint error.
        const double e1 = 2.0 * *r2 - *r1;
        const double e2 = 2.0 * *r4 - *r2;
        out.shift = std::abs(e2 - e1);
        const double s0 = *r1 / 3.0 - 2.0 * *r2 + 8.0 / 3.0 * *r4;
        out.s = std::clamp(s0, std::min(*r1, *r4) - 8.0 * act, std::max(*r1, *r4) + 8.0 * act);
        return out;
    };

    for (const auto& [ia, ib] : runs) {
        const int before = (ia + n - 1) % n;
        const int after = (ib + 1) % n;
        const EndpointRefinement ra = refine_endpoint(before, ia, +1);
        const EndpointRefinement rb = refine_endpoint(after, ib, -1);
        if (!ra.ok || !rb.ok) ps.regular = false;
        if (ra.shift > options.stability_factor * act ||
            rb.shift > options.stability_factor * act)
            ps.regular = false;

        ArcInterval iv;
        iv.a = std::fmod(ra.s + L, L);
        iv.b = std::fmod(rb.s + L, L);
        if (iv.b <= iv.a) iv.b += L;
        if (iv.b - iv.a < 0.25 * ds) continue;  // degenerate sliver
        ps.intervals.push_back(iv);
    }

    if (ps.intervals.empty()) {
        ps.empty = true;
        ps.regular = false;
        return ps;
    }

    std::sort(ps.intervals.begin(), ps.intervals.end(),
              [](const ArcInterval& u, const ArcInterval& v) { return u.a < v.a; });

    for (const auto& iv : ps.intervals) {
        ps.quadratures.push_back(offset_arc_quadrature(curve, iv, t));
        // Display samples: refined endpoints plus the uniform samples inside.
        std::vector<Vec2> arc;
        arc.push_back(curve.offset_at(iv.a, t));
        for (double s = std::ceil(iv.a / ds) * ds; s < iv.b; s += ds)
            arc.push_back(curve.offset_at(s, t));
        arc.push_back(curve.offset_at(iv.b, t));
        ps.arcs.push_back(std::move(arc));
        ps.length += ps.quadratures.back().total_weight();
    }

    // Component grouping: match the terminal point of each interval to the
    // nearest interval start; cycles of the successor map are the closed loops.
    const int m = static_cast<int>(ps.intervals.size());
    const double join_tol = options.join_tol_factor * ds;
    std::vector<int> succ(m, -1);
    std::vector<int> hit(m, 0);
    for (int k = 0; k < m; ++k) {
        const Vec2 q = curve.offset_at(ps.intervals[k].b, t);
        double best = kInf;
        for (int j = 0; j < m; ++j) {
            const double d = (curve.offset_at(ps.intervals[j].a, t) - q).norm();
            if (d < best) {
                best = d;
                succ[k] = j;
            }
        }
        if (best > join_tol) ps.regular = false;
        if (succ[k] >= 0) hit[succ[k]]++;
    }
    for (int j = 0; j < m; ++j)
        if (hit[j] != 1) ps.regular = false;

    std::vector<char> seen(m, 0);
    for (int k = 0; k < m; ++k) {
        if (seen[k]) continue;
        std::vector<int> loop;
        int cur = k;
        while (cur >= 0 && !seen[cur]) {
            seen[cur] = 1;
            loop.push_back(cur);
            cur = succ[cur];
        }
        ps.components.push_back(std::move(loop));
    }
    if (ps.length <= delta) ps.empty = true;
    return ps;
}

double t_star_estimate(const SampledCurve& curve, int grid) {
    const double r_i = inradius(curve).r_i;
    const double kmax = kappa_max(curve);
    const int n = curve.n();

    auto injective = [&](double tau) {
        if (tau * kmax > 1.0 + 1e-12) return false;  // fold in the offset map
        std::vector<Vec2> offset(n);
        for (int i = 0; i < n; ++i)
            offset[i] = curve.points()[i] + tau * curve.normals()[i];
        return closed_polyline_is_simple(offset, 1e-12 * curve.length());
    };

    double last_good = 0.0, first_bad = r_i;
    bool found_bad = false;
    for (int j = 0; j < grid; ++j) {
        const double tau = r_i * (j + 0.5) / grid;
        if (injective(tau)) {
            last_good = tau;
        } else {
            first_bad = tau;
            found_bad = true;
            break;
        }
    }
    if (!found_bad) return last_good;
    for (int iter = 0; iter < 20; ++iter) {
        const double mid = 0.5 * (last_good + first_bad);
        if (injective(mid))
            last_good = mid;
        else
            first_bad = mid;
    }
    return last_good;
}

}  // namespace parcurve
