#include "parcurve/sampled_curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

namespace parcurve {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Signed area of the coarse sample polygon; positive means counterclockwise.
double coarse_signed_area(const CurveModel& model, int m = 512) {
    const double period = model.period();
    double area = 0.0;
    Vec2 prev = model.position(0.0);
    const Vec2 first = prev;
    for (int i = 1; i <= m; ++i) {
        const Vec2 cur = (i == m) ? first : model.position(period * i / m);
        area += cross(prev, cur);
        prev = cur;
    }
    return 0.5 * area;
}

ClosedCurveSpec reversed(const ClosedCurveSpec& spec) {
    ClosedCurveSpec out = spec;
    switch (spec.kind) {
        case CurveKind::fourier_radial:
            for (double& b : out.sin_coeffs) b = -b;  // r(-theta)
            break;
        case CurveKind::fourier_xy:
            for (double& b : out.x_sin) b = -b;
            for (double& b : out.y_sin) b = -b;
            break;
        case CurveKind::polyline:
            std::reverse(out.points.begin(), out.points.end());
            break;
    }
    return out;
}

double wrap_pi(double a) {
    while (a > std::numbers::pi) a -= kTwoPi;
    while (a < -std::numbers::pi) a += kTwoPi;
    return a;
}

// Proper or touching intersection of segments [a1,a2] and [b1,b2].
bool segments_intersect(const Vec2& a1, const Vec2& a2, const Vec2& b1, const Vec2& b2,
                        double tol) {
    const double d1 = cross(a2 - a1, b1 - a1);
    const double d2 = cross(a2 - a1, b2 - a1);
    const double d3 = cross(b2 - b1, a1 - b1);
    const double d4 = cross(b2 - b1, a2 - b1);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
        ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
        return true;
    // Near-touching configurations count as intersections.
    return segment_distance(b1, a1, a2) < tol || segment_distance(b2, a1, a2) < tol ||
           segment_distance(a1, b1, b2) < tol || segment_distance(a2, b1, b2) < tol;
}

}  // namespace

Vec2 SampledCurve::point_at(double s) const {
    s = std::fmod(s, length_);
    if (s < 0.0) s += length_;
    return model_->position(arclen_->param_at(s));
}

Vec2 SampledCurve::tangent_at(double s) const {
    s = std::fmod(s, length_);
    if (s < 0.0) s += length_;
    return normalized(model_->derivative(arclen_->param_at(s)));
}

Vec2 SampledCurve::normal_at(double s) const { return perp(tangent_at(s)); }

double SampledCurve::curvature_at(double s) const {
    s = std::fmod(s, length_);
    if (s < 0.0) s += length_;
    if (model_->smooth()) return model_->curvature(arclen_->param_at(s));
    // Polylines: nearest sampled value (curvature lives in the corners).
    const int i = static_cast<int>(std::lround(s / spacing())) % n();
    return curvatures_[i];
}

Vec2 SampledCurve::offset_at(double s, double t) const {
    return point_at(s) + t * normal_at(s);
}

double SampledCurve::param_at(double s) const {
    s = std::fmod(s, length_);
    if (s < 0.0) s += length_;
    return arclen_->param_at(s);
}

SampledCurve sample(const ClosedCurveSpec& spec_in, int n, const SampleOptions& options) {
    if (n < 64) throw std::invalid_argument("sample count must be at least 64");
    validate_spec(spec_in);

    ClosedCurveSpec spec = spec_in;
    auto model = std::shared_ptr<const CurveModel>(make_model(spec));
    if (coarse_signed_area(*model) < 0.0) {
        spec = reversed(spec);
        model = std::shared_ptr<const CurveModel>(make_model(spec));
    }

    const CurveModel* raw = model.get();
    auto arclen = std::make_shared<const ArcLengthMap>(
        [raw](double u) { return raw->speed(u); }, 0.0, model->period(),
        std::max(options.oversampling * n, 1024));

    SampledCurve curve;
    curve.spec_ = spec;
    curve.model_ = model;
    curve.arclen_ = arclen;
    curve.length_ = arclen->total_length();
    curve.s_.resize(n);
    curve.points_.resize(n);
    curve.tangents_.resize(n);
    curve.normals_.resize(n);
    curve.curvatures_.resize(n);

    const double ds = curve.length_ / n;
    for (int i = 0; i < n; ++i) {
        const double s = ds * i;
        const double u = arclen->param_at(s);
        curve.s_[i] = s;
        curve.points_[i] = model->position(u);
        curve.tangents_[i] = normalized(model->derivative(u));
        curve.normals_[i] = perp(curve.tangents_[i]);
        if (model->smooth()) curve.curvatures_[i] = model->curvature(u);
    }
    if (!model->smooth()) {
        // Finite-difference curvature from the turning of the sampled tangents;
        // its composite quadrature telescopes to the exact total turning.
        for (int i = 0; i < n; ++i) {
            const Vec2& t0 = curve.tangents_[i];
            const Vec2& t1 = curve.tangents_[(i + 1) % n];
            curve.curvatures_[i] = wrap_pi(std::atan2(cross(t0, t1), dot(t0, t1))) / ds;
        }
    }

    if (options.require_simple && !is_simple(curve))
        throw std::runtime_error("curve is not simple (self-intersection detected)");
    return curve;
}

double total_curvature(const SampledCurve& curve) {
    double sum = 0.0;
    for (double k : curve.curvatures()) sum += k;
    return sum * curve.spacing();
}

double kappa_max(const SampledCurve& curve) {
    const auto& kappa = curve.curvatures();
    const int n = curve.n();
    int best = 0;
    for (int i = 1; i < n; ++i)
        if (kappa[i] > kappa[best]) best = i;
    if (!curve.smooth()) return kappa[best];

    // Golden-section shrink around the discrete argmax, polished by one
    // parabolic interpolation step on the analytic curvature.
    const double ds = curve.spacing();
    double a = curve.s()[best] - ds, b = curve.s()[best] + ds;
    auto f = [&curve](double s) { return curve.curvature_at(s); };
    const double gr = 0.5 * (3.0 - std::sqrt(5.0));
    double x1 = a + gr * (b - a), x2 = b - gr * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int iter = 0; iter < 60 && (b - a) > 1e-13 * std::max(curve.length(), 1.0); ++iter) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = b - gr * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = a + gr * (b - a);
            f1 = f(x1);
        }
    }
    double refined = std::max(f1, f2);
    // One parabolic fit through the bracket midpoint as a final polish.
    const double m = 0.5 * (a + b), h = 0.5 * (b - a);
    if (h > 0.0) {
        const double fl = f(m - h), fm = f(m), fr = f(m + h);
        const double denom = fl - 2.0 * fm + fr;
        if (std::abs(denom) > 1e-300) {
            const double delta = 0.5 * h * (fl - fr) / denom;
            if (std::abs(delta) <= h) refined = std::max(refined, f(m + delta));
        }
    }
    return std::max(refined, kappa[best]);
}

bool is_simple(const SampledCurve& curve) {
    return closed_polyline_is_simple(curve.points(), 1e-12 * curve.length());
}

bool closed_polyline_is_simple(const std::vector<Vec2>& pts, double tol) {
    const int n = static_cast<int>(pts.size());
    if (n < 3) return false;

    double max_len = 0.0;
    Vec2 lo = pts[0], hi = pts[0];
    for (int i = 0; i < n; ++i) {
        const Vec2& a = pts[i];
        const Vec2& b = pts[(i + 1) % n];
        max_len = std::max(max_len, (b - a).norm());
        lo.x = std::min({lo.x, a.x});
        lo.y = std::min({lo.y, a.y});
        hi.x = std::max({hi.x, a.x});
        hi.y = std::max({hi.y, a.y});
    }
    const double cell = std::max(2.0 * max_len, 1e-12);
    const int nx = std::max(1, static_cast<int>((hi.x - lo.x) / cell) + 1);

    // Register every segment in all cells its bounding box touches, so any two
    // intersecting segments share the cell containing the crossing point.
    std::unordered_map<long long, std::vector<int>> grid;
    grid.reserve(2 * n);
    for (int i = 0; i < n; ++i) {
        const Vec2& a = pts[i];
        const Vec2& b = pts[(i + 1) % n];
        const int cx0 = static_cast<int>((std::min(a.x, b.x) - lo.x) / cell);
        const int cx1 = static_cast<int>((std::max(a.x, b.x) - lo.x) / cell);
        const int cy0 = static_cast<int>((std::min(a.y, b.y) - lo.y) / cell);
        const int cy1 = static_cast<int>((std::max(a.y, b.y) - lo.y) / cell);
        for (int cy = cy0; cy <= cy1; ++cy)
            for (int cx = cx0; cx <= cx1; ++cx)
                grid[static_cast<long long>(cy) * nx + cx].push_back(i);
    }

    for (const auto& [id, segs] : grid) {
        (void)id;
        for (size_t u = 0; u < segs.size(); ++u) {
            for (size_t v = u + 1; v < segs.size(); ++v) {
                const int i = segs[u], j = segs[v];
                const int gap = std::abs(i - j);
                if (gap <= 1 || gap >= n - 1) continue;  // cyclically adjacent
                if (segments_intersect(pts[i], pts[(i + 1) % n], pts[j], pts[(j + 1) % n], tol))
                    return false;
            }
        }
    }
    return true;
}

}  // namespace parcurve
