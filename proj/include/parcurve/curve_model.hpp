#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "parcurve/curve_spec.hpp"
#include "parcurve/vec2.hpp"

namespace parcurve {

// Analytic evaluation of a closed curve in its native parameter u in
// [0, period). Fourier specs give exact derivatives; polylines are piecewise
// linear with zero second derivative (their curvature is handled separately).
class CurveModel {
public:
    virtual ~CurveModel() = default;
    virtual double period() const = 0;
    virtual Vec2 position(double u) const = 0;
    virtual Vec2 derivative(double u) const = 0;
    virtual Vec2 second_derivative(double u) const = 0;
    virtual bool smooth() const { return true; }

    double speed(double u) const { return derivative(u).norm(); }

    // Signed curvature with respect to the native orientation.
    double curvature(double u) const {
        const Vec2 d = derivative(u);
        const Vec2 dd = second_derivative(u);
        const double v = d.norm();
        return cross(d, dd) / (v * v * v);
    }
};

std::unique_ptr<CurveModel> make_model(const ClosedCurveSpec& spec);

// Cumulative arc length s(u) tabulated on a fine native grid with per-interval
// Simpson increments, plus a monotone cubic Hermite inverse. Generic over the
// speed function so open arcs can reuse it.
class ArcLengthMap {
public:
    ArcLengthMap(const std::function<double(double)>& speed, double u_begin,
                 double u_end, int nodes);

    double total_length() const { return s_.back(); }

    // Native parameter at arc length s (clamped to [0, total_length]).
    double param_at(double s) const;

    // Arc length at native parameter u (monotone cubic through the table).
    double length_at(double u) const;

    // Smallest tabulated speed; near-zero values indicate a degenerate
    // parametrization.
    double min_speed() const { return min_speed_; }

private:
    std::vector<double> u_, s_, v_;  // nodes, cumulative length, speed = ds/du
    double min_speed_ = 0.0;

    double hermite_s(int i, double u) const;
};

}  // namespace parcurve
