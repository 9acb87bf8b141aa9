#pragma once

// Test-side oracles. Everything here is deliberately independent of the
// library's computational paths: brute-force scans, raster transforms and
// closed forms used to freeze expected values.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "parcurve/curve_spec.hpp"
#include "parcurve/sampled_curve.hpp"
#include "parcurve/vec2.hpp"
#include "parcurve/winding.hpp"

namespace oracles {

using parcurve::ClosedCurveSpec;
using parcurve::CurveKind;
using parcurve::ParametricArc;
using parcurve::SampledCurve;
using parcurve::Vec2;

// ---------------------------------------------------------------- quadrature

inline double adaptive_simpson_impl(const std::function<double(double)>& f, double a, double b,
                                    double fa, double fm, double fb, double whole, double tol,
                                    int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson_impl(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adaptive_simpson_impl(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-12) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson_impl(f, a, b, fa, fm, fb, whole, tol, 40);
}

// --------------------------------------------------- raster distance oracle

// Exact Euclidean distance transform of a raster (squared distances, the
// two-pass parabolic-envelope construction), seeded from dense boundary
// samples. Used as ground truth for the inner-parallel-set membership.
class DistanceGrid {
public:
    DistanceGrid(const SampledCurve& curve, int size = 2048, int boundary_samples = 65536)
        : size_(size) {
        Vec2 lo = curve.points()[0], hi = curve.points()[0];
        for (const auto& p : curve.points()) {
            lo.x = std::min(lo.x, p.x);
            lo.y = std::min(lo.y, p.y);
            hi.x = std::max(hi.x, p.x);
            hi.y = std::max(hi.y, p.y);
        }
        const double span = std::max(hi.x - lo.x, hi.y - lo.y);
        const double pad = 0.05 * span;
        origin_ = {lo.x - pad, lo.y - pad};
        cell_ = (span + 2.0 * pad) / size;

        const double inf = std::numeric_limits<double>::infinity();
        d2_.assign(static_cast<size_t>(size_) * size_, inf);
        for (int k = 0; k < boundary_samples; ++k) {
            const Vec2 p = curve.point_at(curve.length() * k / boundary_samples);
            const int ix = std::clamp(static_cast<int>((p.x - origin_.x) / cell_), 0, size_ - 1);
            const int iy = std::clamp(static_cast<int>((p.y - origin_.y) / cell_), 0, size_ - 1);
            d2_[static_cast<size_t>(iy) * size_ + ix] = 0.0;
        }
        std::vector<double> line(size_), out(size_);
        // rows
        for (int iy = 0; iy < size_; ++iy) {
            for (int ix = 0; ix < size_; ++ix) line[ix] = d2_[static_cast<size_t>(iy) * size_ + ix];
            dt1d(line, out);
            for (int ix = 0; ix < size_; ++ix) d2_[static_cast<size_t>(iy) * size_ + ix] = out[ix];
        }
        // columns
        for (int ix = 0; ix < size_; ++ix) {
            for (int iy = 0; iy < size_; ++iy) line[iy] = d2_[static_cast<size_t>(iy) * size_ + ix];
            dt1d(line, out);
            for (int iy = 0; iy < size_; ++iy) d2_[static_cast<size_t>(iy) * size_ + ix] = out[iy];
        }
    }

    double distance(const Vec2& p) const {
        const int ix = std::clamp(static_cast<int>((p.x - origin_.x) / cell_), 0, size_ - 1);
        const int iy = std::clamp(static_cast<int>((p.y - origin_.y) / cell_), 0, size_ - 1);
        return cell_ * std::sqrt(d2_[static_cast<size_t>(iy) * size_ + ix]);
    }

    // Resolution bound for membership comparisons.
    double cell() const { return cell_; }
    int size() const { return size_; }
    Vec2 cell_center(int ix, int iy) const {
        return {origin_.x + cell_ * (ix + 0.5), origin_.y + cell_ * (iy + 0.5)};
    }
    double cell_distance(int ix, int iy) const {
        return cell_ * std::sqrt(d2_[static_cast<size_t>(iy) * size_ + ix]);
    }

private:
    // 1-D squared distance transform along one scanline (grid units).
    static void dt1d(const std::vector<double>& f, std::vector<double>& d) {
        const int n = static_cast<int>(f.size());
        static thread_local std::vector<int> v;
        static thread_local std::vector<double> z;
        v.assign(n, 0);
        z.assign(n + 1, 0.0);
        int k = 0;
        v[0] = 0;
        z[0] = -std::numeric_limits<double>::infinity();
        z[1] = std::numeric_limits<double>::infinity();
        for (int q = 1; q < n; ++q) {
            if (f[q] == std::numeric_limits<double>::infinity()) continue;
            double s;
            while (true) {
                const int p = v[k];
                if (f[p] == std::numeric_limits<double>::infinity()) {
                    // no finite parabola yet; replace
                    if (k == 0) {
                        v[0] = q;
                        z[0] = -std::numeric_limits<double>::infinity();
                        z[1] = std::numeric_limits<double>::infinity();
                        s = std::numeric_limits<double>::quiet_NaN();
                        break;
                    }
                    --k;
                    continue;
                }
                s = ((f[q] + q * q) - (f[p] + p * p)) / (2.0 * q - 2.0 * p);
                if (s <= z[k]) {
                    --k;
                    continue;
                }
                break;
            }
            if (std::isnan(s)) continue;
            ++k;
            v[k] = q;
            z[k] = s;
            z[k + 1] = std::numeric_limits<double>::infinity();
        }
        k = 0;
        for (int q = 0; q < n; ++q) {
            while (z[k + 1] < q) ++k;
            const int p = v[k];
            d[q] = f[p] == std::numeric_limits<double>::infinity()
                       ? std::numeric_limits<double>::infinity()
                       : (q - p) * (q - p) + f[p];
        }
    }

    int size_;
    double cell_ = 0.0;
    Vec2 origin_;
    std::vector<double> d2_;
};

// Brute-force minimum distance to a dense boundary sampling.
inline double dense_boundary_distance(const Vec2& x, const SampledCurve& curve,
                                      int samples = 1000000) {
    double best2 = std::numeric_limits<double>::infinity();
    for (int k = 0; k < samples; ++k) {
        const Vec2 p = curve.point_at(curve.length() * k / samples);
        best2 = std::min(best2, (p - x).norm2());
    }
    return std::sqrt(best2);
}

// --------------------------------------------------------- seeded generators

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}
    double uniform() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
};

// Strictly positive radial profile => always a simple closed curve.
inline ClosedCurveSpec random_simple_radial(Rng& rng, int max_modes = 6) {
    ClosedCurveSpec spec;
    spec.kind = CurveKind::fourier_radial;
    spec.a0 = 1.0;
    double budget = 0.55;
    for (int k = 1; k <= max_modes; ++k) {
        const double amp = budget / (k * k + 1.0);
        spec.cos_coeffs.push_back(rng.uniform(-amp, amp));
        spec.sin_coeffs.push_back(rng.uniform(-amp, amp));
    }
    return spec;
}

// Smooth closed curve, not necessarily simple.
inline ClosedCurveSpec random_closed_xy(Rng& rng, int max_modes = 4) {
    ClosedCurveSpec spec;
    spec.kind = CurveKind::fourier_xy;
    spec.x_cos.assign(max_modes, 0.0);
    spec.x_sin.assign(max_modes, 0.0);
    spec.y_cos.assign(max_modes, 0.0);
    spec.y_sin.assign(max_modes, 0.0);
    spec.x_cos[0] = 1.0;
    spec.y_sin[0] = 1.0;
    for (int k = 1; k < max_modes; ++k) {
        const double amp = 0.35 / ((k + 1) * (k + 1));
        spec.x_cos[k] = rng.uniform(-amp, amp);
        spec.x_sin[k] = rng.uniform(-amp, amp);
        spec.y_cos[k] = rng.uniform(-amp, amp);
        spec.y_sin[k] = rng.uniform(-amp, amp);
    }
    return spec;
}

// Random smooth simple arc: the graph (t, f(t)) of a small trigonometric
// polynomial over [0, 1]; graphs never self-intersect.
inline ParametricArc random_graph_arc(Rng& rng) {
    const double a1 = rng.uniform(-0.3, 0.3);
    const double a2 = rng.uniform(-0.25, 0.25);
    const double a3 = rng.uniform(-0.15, 0.15);
    const double b1 = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double b2 = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double b3 = rng.uniform(0.0, 2.0 * std::numbers::pi);
    ParametricArc path;
    path.position = [=](double t) {
        return Vec2{t, a1 * std::sin(2 * t + b1) + a2 * std::sin(3 * t + b2) +
                           a3 * std::sin(5 * t + b3)};
    };
    path.derivative = [=](double t) {
        return Vec2{1.0, 2 * a1 * std::cos(2 * t + b1) + 3 * a2 * std::cos(3 * t + b2) +
                             5 * a3 * std::cos(5 * t + b3)};
    };
    path.second_derivative = [=](double t) {
        return Vec2{0.0, -4 * a1 * std::sin(2 * t + b1) - 9 * a2 * std::sin(3 * t + b2) -
                             25 * a3 * std::sin(5 * t + b3)};
    };
    path.t0 = 0.0;
    path.t1 = 1.0;
    return path;
}

// ------------------------------------------------------------ belt builders

// The straight lower tangent of the two disks B_t(c1), B_t(c2) (centers on a
// horizontal line), perturbed by a smooth interior bump of the given
// amplitude. Endpoints and endpoint tangents are those of the unperturbed
// tangent segment, so the tangency hypothesis holds exactly.
inline ParametricArc bump_belt(double span, double t, double amplitude, double shape) {
    // f(u) = A * w(u)^3 * m(u) with w = u(1-u): vanishes to third order at the
    // ends, so the endpoint tangency of the straight belt is preserved exactly.
    constexpr double two_pi = 2.0 * std::numbers::pi;
    auto eval = [=](double x) {
        const double u = x / span;
        const double w = u * (1.0 - u);
        const double dw = 1.0 - 2.0 * u;
        const double q = w * w * w;
        const double dq = 3.0 * w * w * dw;
        const double ddq = 6.0 * w * dw * dw - 6.0 * w * w;
        const double m = 1.0 + shape * std::sin(two_pi * u);
        const double dm = shape * two_pi * std::cos(two_pi * u);
        const double ddm = -shape * two_pi * two_pi * std::sin(two_pi * u);
        struct Out {
            double f, df, ddf;
        };
        return Out{amplitude * q * m,
                   amplitude * (dq * m + q * dm) / span,
                   amplitude * (ddq * m + 2.0 * dq * dm + q * ddm) / (span * span)};
    };
    ParametricArc path;
    path.position = [=](double x) { return Vec2{x, -t + eval(x).f}; };
    path.derivative = [=](double x) { return Vec2{1.0, eval(x).df}; };
    path.second_derivative = [=](double x) { return Vec2{0.0, eval(x).ddf}; };
    path.t0 = 0.0;
    path.t1 = span;
    return path;
}

// ----------------------------------------------------------------- misc

inline parcurve::OpenArc reversed(const parcurve::OpenArc& arc) {
    parcurve::OpenArc out = arc;
    std::reverse(out.samples.begin(), out.samples.end());
    std::reverse(out.tangents.begin(), out.tangents.end());
    std::reverse(out.curvatures.begin(), out.curvatures.end());
    for (auto& t : out.tangents) t = -t;
    for (auto& k : out.curvatures) k = -k;
    out.position_of = nullptr;
    if (arc.position_of) {
        const double s0 = arc.s_begin, s1 = arc.s_end;
        auto f = arc.position_of;
        out.position_of = [=](double s) { return f(s1 - (s - s0)); };
    }
    return out;
}

}  // namespace oracles
