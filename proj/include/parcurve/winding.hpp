#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "parcurve/vec2.hpp"

namespace parcurve {

// A simple smooth non-closed curve, resampled at unit speed. The optional
// evaluator maps arc length to position and is used when the angle increments
// need local refinement.
struct OpenArc {
    std::vector<Vec2> samples;
    std::vector<Vec2> tangents;
    std::vector<double> curvatures;
    double s_begin = 0.0;
    double s_end = 0.0;
    bool simple = true;
    std::function<Vec2(double)> position_of;  // arc length -> position

    int n() const { return static_cast<int>(samples.size()); }
    double length() const { return s_end - s_begin; }
    double spacing() const { return length() / (n() - 1); }
};

// Parametric description used to build arcs with analytic geometry.
struct ParametricArc {
    std::function<Vec2(double)> position;
    std::function<Vec2(double)> derivative;
    std::function<Vec2(double)> second_derivative;
    double t0 = 0.0;
    double t1 = 1.0;
};

// Arc-length resampling of a parametric arc (n sample points, n >= 2).
OpenArc sample_open_arc(const ParametricArc& path, int n);

OpenArc make_circle_arc(const Vec2& center, double radius, double angle0, double angle1, int n);
OpenArc make_segment_arc(const Vec2& a, const Vec2& b, int n);

// Joins two arcs where the terminal point of `first` is the starting point of
// `second` (within tolerance).
OpenArc concatenate(const OpenArc& first, const OpenArc& second);

struct WindingResult {
    double value = 0.0;               // Theta(s2) - Theta(s1), radians, signed
    std::vector<double> angle_trace;  // unwrapped angle at each sample
    Vec2 basepoint;
};

// Net angle swept by the ray from x0 to the moving point. x0 must stay off the
// arc interior; increments of pi/2 or more trigger local refinement through
// the evaluator, and failing that an error.
WindingResult winding_number(const OpenArc& arc, const Vec2& x0);

enum class ArcEndpoint { start, end };

// Winding with respect to an endpoint: the limit along a straight extension
// beyond the endpoint, accelerated by Richardson extrapolation. The limit does
// not depend on the extension, so the tangent ray suffices.
double endpoint_winding(const OpenArc& arc, ArcEndpoint which);

// lhs = quadrature of kappa ds; rhs = endpoint winding at the start plus the
// endpoint winding at the end.
std::pair<double, double> curvature_winding_identity(const OpenArc& arc);

struct GeometricInequalityReport {
    double arc_length = 0.0;
    double center_distance = 0.0;      // |c1 - c2|
    double curvature_integral = 0.0;   // integral of kappa ds
    double margin = 0.0;               // |Gamma| - |c1-c2| - t * integral
    bool hypothesis_ok = true;
};

struct TangencyTolerances {
    double on_circle = 1e-7;
    double tangent_angle = 1e-6;
};

// Checks the tangency hypothesis numerically (endpoints on the circles of
// radius t about c1/c2, tangents aligned counterclockwise) and evaluates the
// length inequality. Throws when the hypothesis is violated.
GeometricInequalityReport geometric_inequality_check(const OpenArc& arc, const Vec2& c1,
                                                     const Vec2& c2, double t,
                                                     const TangencyTolerances& tol = {});

}  // namespace parcurve
