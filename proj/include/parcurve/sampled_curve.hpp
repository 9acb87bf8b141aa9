#pragma once

#include <memory>
#include <vector>

#include "parcurve/curve_model.hpp"
#include "parcurve/curve_spec.hpp"
#include "parcurve/vec2.hpp"

namespace parcurve {

struct SampleOptions {
    bool require_simple = true;
    int oversampling = 8;  // native grid density used for the arc-length table
};

// A closed plane curve resampled at n equal arc-length steps, oriented
// counterclockwise, with unit tangents, inward normals and signed curvature
// per sample. The analytic model and its arc-length map are retained so the
// curve can be evaluated at arbitrary arc length.
class SampledCurve {
public:
    int n() const { return static_cast<int>(points_.size()); }
    double length() const { return length_; }
    double spacing() const { return length_ / n(); }

    const std::vector<double>& s() const { return s_; }
    const std::vector<Vec2>& points() const { return points_; }
    const std::vector<Vec2>& tangents() const { return tangents_; }
    const std::vector<Vec2>& normals() const { return normals_; }
    const std::vector<double>& curvatures() const { return curvatures_; }
    const ClosedCurveSpec& spec() const { return spec_; }
    bool smooth() const { return model_->smooth(); }

    // Evaluation at arbitrary arc length (wrapped mod L).
    Vec2 point_at(double s) const;
    Vec2 tangent_at(double s) const;
    Vec2 normal_at(double s) const;
    double curvature_at(double s) const;
    // gamma(s) + t * n(s), the inner offset map.
    Vec2 offset_at(double s, double t) const;

    // Native-parameter access used by quadrature routines.
    const CurveModel& model() const { return *model_; }
    double param_at(double s) const;

    friend SampledCurve sample(const ClosedCurveSpec&, int, const SampleOptions&);

private:
    ClosedCurveSpec spec_;
    std::shared_ptr<const CurveModel> model_;
    std::shared_ptr<const ArcLengthMap> arclen_;
    double length_ = 0.0;
    std::vector<double> s_;
    std::vector<Vec2> points_, tangents_, normals_;
    std::vector<double> curvatures_;
};

// Resamples the spec by arc length. Orientation is auto-corrected to
// counterclockwise. Throws when n < 64, when the parametrization is
// degenerate, or (unless disabled) when the curve is not simple.
SampledCurve sample(const ClosedCurveSpec& spec, int n,
                    const SampleOptions& options = {});

// Composite quadrature of kappa ds over one period; 2*pi for every smooth
// simple closed curve.
double total_curvature(const SampledCurve& curve);

// Maximum signed curvature, refined by successive parabolic interpolation
// around the discrete argmax.
double kappa_max(const SampledCurve& curve);

// True iff no two non-adjacent sample segments intersect.
bool is_simple(const SampledCurve& curve);

// Same test on a raw closed polyline; used for offset traces as well.
bool closed_polyline_is_simple(const std::vector<Vec2>& pts, double tol);

}  // namespace parcurve
