#include "parcurve/winding.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

#include "parcurve/curve_model.hpp"

namespace parcurve {

namespace {

constexpr double kPi = std::numbers::pi;

double angle_increment(const Vec2& from, const Vec2& to) {
    return std::atan2(cross(from, to), dot(from, to));
}

// Composite Simpson on uniformly spaced values (trapezoid on a trailing odd
// interval).
double integrate_uniform(const std::vector<double>& values, double h) {
    const size_t n = values.size();
    if (n < 2) return 0.0;
    double sum = 0.0;
    size_t i = 0;
    for (; i + 2 < n; i += 2) sum += h / 3.0 * (values[i] + 4.0 * values[i + 1] + values[i + 2]);
    if (i + 1 < n) sum += 0.5 * h * (values[i] + values[i + 1]);
    return sum;
}

}  // namespace

OpenArc sample_open_arc(const ParametricArc& path, int n) {
    if (n < 2) throw std::invalid_argument("sample_open_arc: need at least 2 samples");
    auto arclen = std::make_shared<ArcLengthMap>(
        [&path](double t) { return path.derivative(t).norm(); }, path.t0, path.t1,
        std::max(8 * n, 1024));

    OpenArc arc;
    arc.s_begin = 0.0;
    arc.s_end = arclen->total_length();
    arc.samples.resize(n);
    arc.tangents.resize(n);
    arc.curvatures.resize(n);
    for (int i = 0; i < n; ++i) {
        const double s = arc.s_end * i / (n - 1);
        const double t = arclen->param_at(s);
        const Vec2 d = path.derivative(t);
        const double v = d.norm();
        arc.samples[i] = path.position(t);
        arc.tangents[i] = d / v;
        arc.curvatures[i] = cross(d, path.second_derivative(t)) / (v * v * v);
    }
    const auto position = path.position;
    arc.position_of = [arclen, position](double s) { return position(arclen->param_at(s)); };
    return arc;
}

OpenArc make_circle_arc(const Vec2& center, double radius, double angle0, double angle1, int n) {
    ParametricArc path;
    path.position = [=](double t) {
        return center + radius * Vec2{std::cos(t), std::sin(t)};
    };
    path.derivative = [=](double t) {
        return radius * Vec2{-std::sin(t), std::cos(t)};
    };
    path.second_derivative = [=](double t) {
        return radius * Vec2{-std::cos(t), -std::sin(t)};
    };
    path.t0 = angle0;
    path.t1 = angle1;
    return sample_open_arc(path, n);
}

OpenArc make_segment_arc(const Vec2& a, const Vec2& b, int n) {
    ParametricArc path;
    const Vec2 d = b - a;
    path.position = [=](double t) { return a + t * d; };
    path.derivative = [=](double) { return d; };
    path.second_derivative = [=](double) { return Vec2{0.0, 0.0}; };
    path.t0 = 0.0;
    path.t1 = 1.0;
    return sample_open_arc(path, n);
}

OpenArc concatenate(const OpenArc& first, const OpenArc& second) {
    const double tol = 1e-9 * (first.length() + second.length());
    if ((first.samples.back() - second.samples.front()).norm() > tol)
        throw std::invalid_argument("concatenate: arcs do not share an endpoint");
    OpenArc out;
    out.s_begin = first.s_begin;
    out.s_end = first.s_end + second.length();
    out.samples = first.samples;
    out.tangents = first.tangents;
    out.curvatures = first.curvatures;
    out.samples.insert(out.samples.end(), second.samples.begin() + 1, second.samples.end());
    out.tangents.insert(out.tangents.end(), second.tangents.begin() + 1, second.tangents.end());
    out.curvatures.insert(out.curvatures.end(), second.curvatures.begin() + 1,
                          second.curvatures.end());
    const double split = first.s_end;
    const double offset2 = second.s_begin;
    auto f1 = first.position_of;
    auto f2 = second.position_of;
    if (f1 && f2) {
        out.position_of = [=](double s) {
            return s <= split ? f1(s) : f2(offset2 + (s - split));
        };
    }
    return out;
}

WindingResult winding_number(const OpenArc& arc, const Vec2& x0) {
    const int n = arc.n();
    if (n < 2) throw std::invalid_argument("winding_number: arc too short");
    const double ds = arc.spacing();
    const double on_arc_tol = 1e-12 * std::max(arc.length(), 1.0);

    // Refines one increment by bisecting the arc-length interval until every
    // sub-increment is below pi/2.
    std::function<double(double, const Vec2&, double, const Vec2&, int)> increment =
        [&](double s_a, const Vec2& va, double s_b, const Vec2& vb, int depth) -> double {
        const double inc = angle_increment(va, vb);
        if (std::abs(inc) < kPi / 2.0) return inc;
        if (!arc.position_of || depth >= 24)
            throw std::runtime_error("winding_number: sampling too coarse near the base point");
        const double s_m = 0.5 * (s_a + s_b);
        const Vec2 vm = arc.position_of(s_m) - x0;
        if (vm.norm() <= on_arc_tol)
            throw std::invalid_argument("winding_number: base point lies on the arc");
        return increment(s_a, va, s_m, vm, depth + 1) + increment(s_m, vm, s_b, vb, depth + 1);
    };

    WindingResult result;
    result.basepoint = x0;
    result.angle_trace.resize(n);

    Vec2 prev = arc.samples[0] - x0;
    if (prev.norm() <= on_arc_tol)
        throw std::invalid_argument("winding_number: base point coincides with the arc start");
    double theta = std::atan2(prev.y, prev.x);
    if (theta < 0.0) theta += 2.0 * kPi;  // representative in [0, 2 pi)
    result.angle_trace[0] = theta;

    for (int i = 1; i < n; ++i) {
        const Vec2 cur = arc.samples[i] - x0;
        if (cur.norm() <= on_arc_tol && i + 1 < n)
            throw std::invalid_argument("winding_number: base point lies on the arc interior");
        theta += increment(arc.s_begin + ds * (i - 1), prev, arc.s_begin + ds * i, cur, 0);
        result.angle_trace[i] = theta;
        prev = cur;
    }
    result.value = result.angle_trace.back() - result.angle_trace.front();
    return result;
}

double endpoint_winding(const OpenArc& arc, ArcEndpoint which) {
    const bool at_start = which == ArcEndpoint::start;
    const Vec2 endpoint = at_start ? arc.samples.front() : arc.samples.back();
    const Vec2 tangent = at_start ? arc.tangents.front() : arc.tangents.back();
    // Base points on the straight extension beyond the endpoint.
    const Vec2 dir = at_start ? -tangent : tangent;

    const double h0 = 0.01 * arc.length();
    double w[4];
    for (int level = 0; level < 4; ++level) {
        const double h = h0 / (1 << level);
        w[level] = winding_number(arc, endpoint + h * dir).value;
    }
    // Richardson for a first-order sequence: error O(h) -> O(h^2) -> O(h^3).
    double r1[3], r2[2];
    for (int i = 0; i < 3; ++i) r1[i] = 2.0 * w[i + 1] - w[i];
    for (int i = 0; i < 2; ++i) r2[i] = (4.0 * r1[i + 1] - r1[i]) / 3.0;
    const double value = (8.0 * r2[1] - r2[0]) / 7.0;
    if (std::abs(r2[1] - r2[0]) > 1e-3 * (1.0 + std::abs(value)))
        throw std::runtime_error("endpoint_winding: extrapolation did not converge");
    return value;
}

std::pair<double, double> curvature_winding_identity(const OpenArc& arc) {
    const double lhs = integrate_uniform(arc.curvatures, arc.spacing());
    const double rhs =
        endpoint_winding(arc, ArcEndpoint::start) + endpoint_winding(arc, ArcEndpoint::end);
    return {lhs, rhs};
}

GeometricInequalityReport geometric_inequality_check(const OpenArc& arc, const Vec2& c1,
                                                     const Vec2& c2, double t,
                                                     const TangencyTolerances& tol) {
    if (!(t > 0.0)) throw std::invalid_argument("geometric_inequality_check: t must be positive");
    GeometricInequalityReport report;
    report.arc_length = arc.length();
    report.center_distance = (c1 - c2).norm();
    report.curvature_integral = integrate_uniform(arc.curvatures, arc.spacing());

    const double scale = std::max(1.0, t);
    auto check_endpoint = [&](const Vec2& p, const Vec2& tangent, const Vec2& c) {
        if (std::abs((p - c).norm() - t) > tol.on_circle * scale) return false;
        const Vec2 ccw_tangent = normalized(perp(p - c));
        const double misalignment = std::abs(angle_increment(ccw_tangent, tangent));
        return misalignment <= tol.tangent_angle;
    };
    report.hypothesis_ok = check_endpoint(arc.samples.front(), arc.tangents.front(), c1) &&
                           check_endpoint(arc.samples.back(), arc.tangents.back(), c2);
    if (!report.hypothesis_ok)
        throw std::invalid_argument(
            "geometric_inequality_check: endpoint tangency hypothesis violated");

    report.margin = report.arc_length - report.center_distance - t * report.curvature_integral;
    return report;
}

}  // namespace parcurve
