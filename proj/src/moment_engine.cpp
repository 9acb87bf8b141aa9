#include "parcurve/moment_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace parcurve {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct GaussLegendre4 {
    static constexpr double node[4] = {-0.8611363115940526, -0.3399810435848563,
                                       0.3399810435848563, 0.8611363115940526};
    static constexpr double weight[4] = {0.3478548451374538, 0.6521451548625461,
                                         0.6521451548625461, 0.3478548451374538};
};

}  // namespace

double pieces_length(const Pieces& pieces) {
    double sum = 0.0;
    for (const auto& piece : pieces) sum += piece.total_weight();
    return sum;
}

Vec2 centroid(const Pieces& pieces) {
    Vec2 first_moment{0.0, 0.0};
    double total = 0.0;
    for (const auto& piece : pieces) {
        for (size_t i = 0; i < piece.points.size(); ++i) {
            first_moment += piece.weights[i] * piece.points[i];
            total += piece.weights[i];
        }
    }
    if (!(total > 0.0)) throw std::invalid_argument("centroid: zero total length");
    return first_moment / total;
}

double p_moment(const Pieces& pieces, double p, const Vec2& center) {
    if (!(p > 0.0)) throw std::invalid_argument("p_moment: p must be positive");
    double sum = 0.0;
    for (const auto& piece : pieces)
        for (size_t i = 0; i < piece.points.size(); ++i)
            sum += piece.weights[i] * std::pow((piece.points[i] - center).norm(), p);
    return sum;
}

LineQuadrature boundary_quadrature(const SampledCurve& curve) {
    ArcInterval full;
    full.a = 0.0;
    full.b = curve.length();
    full.full_cover = true;
    return offset_arc_quadrature(curve, full, 0.0);
}

Pieces cover_pieces(const CoverCurve& cc, const ParallelSet& ps) {
    Pieces pieces = ps.quadratures;
    for (const auto& piece : cc.pieces) {
        if (piece.kind != CoverPiece::Kind::segment) continue;
        if (piece.length <= 0.0) continue;
        LineQuadrature quad;
        quad.points.reserve(8);
        quad.weights.reserve(8);
        for (int panel = 0; panel < 2; ++panel) {
            for (int q = 0; q < 4; ++q) {
                const double x = 0.25 + 0.5 * panel + 0.25 * GaussLegendre4::node[q];
                quad.points.push_back(piece.start + x * (piece.end - piece.start));
                quad.weights.push_back(0.25 * GaussLegendre4::weight[q] * piece.length);
            }
        }
        pieces.push_back(std::move(quad));
    }
    return pieces;
}

std::pair<double, double> wirtinger_check(const std::vector<Vec2>& trace, double length) {
    if (trace.size() < 8) throw std::invalid_argument("wirtinger_check: trace too short");
    const double ds = length / static_cast<double>(trace.size());
    Vec2 mean{0.0, 0.0};
    for (const auto& x : trace) mean += x;
    mean = mean / static_cast<double>(trace.size());
    double lhs = 0.0;
    for (const auto& x : trace) lhs += (x - mean).norm2();
    lhs *= ds;
    const double rhs = length * length * length / (4.0 * std::numbers::pi * std::numbers::pi);
    return {lhs, rhs};
}

std::vector<Vec2> resample_closed_polyline(const std::vector<Vec2>& poly, int m,
                                           double* out_length) {
    const size_t n = poly.size();
    if (n < 3) throw std::invalid_argument("resample_closed_polyline: need at least 3 points");
    std::vector<double> cum(n + 1, 0.0);
    for (size_t i = 0; i < n; ++i)
        cum[i + 1] = cum[i] + (poly[(i + 1) % n] - poly[i]).norm();
    const double total = cum[n];
    if (out_length) *out_length = total;

    std::vector<Vec2> out(m);
    size_t seg = 0;
    for (int j = 0; j < m; ++j) {
        const double target = total * j / m;
        while (seg + 1 < n && cum[seg + 1] < target) ++seg;
        const double seg_len = cum[seg + 1] - cum[seg];
        const double frac = seg_len > 0.0 ? (target - cum[seg]) / seg_len : 0.0;
        out[j] = poly[seg] + frac * (poly[(seg + 1) % n] - poly[seg]);
    }
    return out;
}

std::vector<MomentReport> verify_isomom(const SampledCurve& curve,
                                        const std::vector<double>& t_grid, double p,
                                        const IsomomOptions& options) {
    if (!(p > 0.0) || p > 2.0)
        throw std::invalid_argument("verify_isomom: the guarantee covers p in (0, 2]");
    const double L = curve.length();
    const double tol = options.tol_factor * std::pow(L, p + 1.0);
    const bool symmetric_spec = is_centrally_symmetric(curve.spec());

    std::vector<MomentReport> reports;
    bool have_fixed_center = symmetric_spec;  // symmetric domains pin x0 at the origin
    Vec2 fixed_center{0.0, 0.0};

    for (double t : t_grid) {
        MomentReport report;
        report.t = t;
        report.p = p;
        ParallelSet ps = parallel_set(curve, t, options.parallel);
        report.regular = ps.regular;
        report.empty = ps.empty;
        report.n_components = ps.component_count();
        if (ps.empty || !ps.regular) {
            reports.push_back(report);
            continue;
        }

        const Pieces& pieces = ps.quadratures;
        report.centroid = centroid(pieces);
        report.moment = p_moment(pieces, p, report.centroid);
        report.disk_reference = kTwoPi * std::pow(L / kTwoPi - t, 1.0 + p);
        report.margin = report.disk_reference - report.moment;
        report.passed = report.margin >= -tol;

        if (p == 2.0) {
            if (!have_fixed_center) {
                // Non-symmetric domains: pin x0 at the centroid of the first
                // regular level and keep it for the remaining levels.
                fixed_center = report.centroid;
                have_fixed_center = true;
            }
            report.fixed_center = fixed_center;
            report.fixed_center_moment = p_moment(pieces, 2.0, fixed_center);
            const double l_t = L - kTwoPi * t;
            report.condition_bound = l_t * l_t * l_t / (4.0 * std::numbers::pi * std::numbers::pi);
            report.condition_passed = report.fixed_center_moment <= report.condition_bound + tol;
        }

        if (options.with_cover_wirtinger) {
            const CoverCurve cc = build_cover(ps, curve);
            report.cover_centroid = centroid(cover_pieces(cc, ps));
            double cover_len = 0.0;
            const auto resampled = resample_closed_polyline(cc.trace, 8192, &cover_len);
            const auto [lhs, rhs] = wirtinger_check(resampled, cover_len);
            report.wirtinger_lhs = lhs;
            report.wirtinger_rhs = rhs;
        }
        reports.push_back(report);
    }
    return reports;
}

DomainMomentResult domain_moment(const SampledCurve& curve, const DomainMomentOptions& options) {
    DomainMomentResult result;
    const ClosedCurveSpec& spec = curve.spec();

    if (spec.kind == CurveKind::fourier_radial) {
        // Polar quadrature: integral over the domain of |x|^2 equals
        // (1/4) integral of r(theta)^4 d theta; periodic trapezoid rule.
        const int m = 8192;
        double sum = 0.0;
        for (int i = 0; i < m; ++i) {
            const double theta = kTwoPi * i / m;
            double r = spec.a0;
            for (size_t k = 0; k < spec.cos_coeffs.size(); ++k)
                r += spec.cos_coeffs[k] * std::cos((k + 1) * theta);
            for (size_t k = 0; k < spec.sin_coeffs.size(); ++k)
                r += spec.sin_coeffs[k] * std::sin((k + 1) * theta);
            sum += r * r * r * r;
        }
        result.direct = 0.25 * sum * kTwoPi / m;
    } else {
        // Midpoint grid over the bounding box with a parity-based interior test.
        const auto& pts = curve.points();
        Vec2 lo = pts[0], hi = pts[0];
        for (const auto& q : pts) {
            lo.x = std::min(lo.x, q.x);
            lo.y = std::min(lo.y, q.y);
            hi.x = std::max(hi.x, q.x);
            hi.y = std::max(hi.y, q.y);
        }
        const int g = options.planar_grid;
        const double hx = (hi.x - lo.x) / g, hy = (hi.y - lo.y) / g;
        // Winding-parity via crossing counts per grid row keeps this O(g^2 + g n).
        double sum = 0.0;
        for (int iy = 0; iy < g; ++iy) {
            const double y = lo.y + hy * (iy + 0.5);
            std::vector<double> crossings;
            const size_t n = pts.size();
            for (size_t i = 0, j = n - 1; i < n; j = i++) {
                const Vec2& a = pts[i];
                const Vec2& b = pts[j];
                if ((a.y > y) != (b.y > y))
                    crossings.push_back(a.x + (y - a.y) / (b.y - a.y) * (b.x - a.x));
            }
            std::sort(crossings.begin(), crossings.end());
            for (int ix = 0; ix < g; ++ix) {
                const double x = lo.x + hx * (ix + 0.5);
                const auto it = std::upper_bound(crossings.begin(), crossings.end(), x);
                if ((crossings.end() - it) % 2 == 1)
                    sum += (x * x + y * y);
            }
        }
        result.direct = sum * hx * hy;
    }

    // Co-area path: integral over t of the moment of S_t about the origin,
    // composite Gauss-Legendre with irregular levels patched by interpolation.
    const InradiusResult ir = inradius(curve);
    result.r_i = ir.r_i;
    ParallelSetOptions ps_options;
    ps_options.known_inradius = ir.r_i;

    struct Node {
        double t, w, value;
        bool usable;
    };
    std::vector<Node> nodes;
    const int panels = options.t_panels;
    const double h = ir.r_i / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = h * (p + 0.5);
        for (int q = 0; q < 4; ++q) {
            Node node;
            node.t = mid + 0.5 * h * GaussLegendre4::node[q];
            node.w = 0.5 * h * GaussLegendre4::weight[q];
            const ParallelSet ps = parallel_set(curve, node.t, ps_options);
            node.usable = !ps.empty && ps.regular;
            node.value = ps.empty ? 0.0 : p_moment(ps.quadratures, 2.0, Vec2{0.0, 0.0});
            if (ps.empty) node.usable = true;
            nodes.push_back(node);
        }
    }
    // Patch unusable nodes by linear interpolation between usable neighbours.
    // The set shrinks to points at t = r_i, so that end is anchored at zero.
    Node sentinel;
    sentinel.t = ir.r_i;
    sentinel.w = 0.0;
    sentinel.value = 0.0;
    sentinel.usable = true;
    nodes.push_back(sentinel);
    for (size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].usable) continue;
        size_t lo_idx = i, hi_idx = i;
        while (lo_idx > 0 && !nodes[lo_idx].usable) --lo_idx;
        while (hi_idx + 1 < nodes.size() && !nodes[hi_idx].usable) ++hi_idx;
        if (nodes[lo_idx].usable && nodes[hi_idx].usable && hi_idx > lo_idx) {
            const double f = (nodes[i].t - nodes[lo_idx].t) / (nodes[hi_idx].t - nodes[lo_idx].t);
            nodes[i].value = nodes[lo_idx].value + f * (nodes[hi_idx].value - nodes[lo_idx].value);
        } else if (nodes[lo_idx].usable) {
            nodes[i].value = nodes[lo_idx].value;
        } else if (nodes[hi_idx].usable) {
            nodes[i].value = nodes[hi_idx].value;
        }
    }
    for (const auto& node : nodes) result.coarea += node.w * node.value;
    return result;
}

}  // namespace parcurve
