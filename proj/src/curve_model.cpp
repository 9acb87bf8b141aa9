#include "parcurve/curve_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace parcurve {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

class FourierRadialModel final : public CurveModel {
public:
    explicit FourierRadialModel(const ClosedCurveSpec& spec)
        : a0_(spec.a0), ac_(spec.cos_coeffs), as_(spec.sin_coeffs) {}

    double period() const override { return kTwoPi; }

    Vec2 position(double u) const override {
        const auto [r, dr, ddr] = profile(u);
        (void)dr;
        (void)ddr;
        return {r * std::cos(u), r * std::sin(u)};
    }

    Vec2 derivative(double u) const override {
        const auto [r, dr, ddr] = profile(u);
        (void)ddr;
        const double c = std::cos(u), s = std::sin(u);
        return {dr * c - r * s, dr * s + r * c};
    }

    Vec2 second_derivative(double u) const override {
        const auto [r, dr, ddr] = profile(u);
        const double c = std::cos(u), s = std::sin(u);
        return {(ddr - r) * c - 2.0 * dr * s, (ddr - r) * s + 2.0 * dr * c};
    }

private:
    struct Profile {
        double r, dr, ddr;
    };
    Profile profile(double u) const {
        double r = a0_, dr = 0.0, ddr = 0.0;
        for (size_t k = 0; k < ac_.size(); ++k) {
            const double n = static_cast<double>(k + 1);
            const double c = std::cos(n * u), s = std::sin(n * u);
            r += ac_[k] * c;
            dr -= ac_[k] * n * s;
            ddr -= ac_[k] * n * n * c;
        }
        for (size_t k = 0; k < as_.size(); ++k) {
            const double n = static_cast<double>(k + 1);
            const double c = std::cos(n * u), s = std::sin(n * u);
            r += as_[k] * s;
            dr += as_[k] * n * c;
            ddr -= as_[k] * n * n * s;
        }
        return {r, dr, ddr};
    }

    double a0_;
    std::vector<double> ac_, as_;
};

class FourierXYModel final : public CurveModel {
public:
    explicit FourierXYModel(const ClosedCurveSpec& spec)
        : x0_(spec.x0), y0_(spec.y0), xc_(spec.x_cos), xs_(spec.x_sin), yc_(spec.y_cos),
          ys_(spec.y_sin) {}

    double period() const override { return kTwoPi; }

    Vec2 position(double u) const override { return eval(u, 0); }
    Vec2 derivative(double u) const override { return eval(u, 1); }
    Vec2 second_derivative(double u) const override { return eval(u, 2); }

private:
    static double series(double u, const std::vector<double>& cc, const std::vector<double>& ss,
                         int order) {
        double out = 0.0;
        for (size_t k = 0; k < cc.size(); ++k) {
            const double n = static_cast<double>(k + 1);
            const double arg = n * u;
            switch (order) {
                case 0: out += cc[k] * std::cos(arg); break;
                case 1: out -= cc[k] * n * std::sin(arg); break;
                default: out -= cc[k] * n * n * std::cos(arg); break;
            }
        }
        for (size_t k = 0; k < ss.size(); ++k) {
            const double n = static_cast<double>(k + 1);
            const double arg = n * u;
            switch (order) {
                case 0: out += ss[k] * std::sin(arg); break;
                case 1: out += ss[k] * n * std::cos(arg); break;
                default: out -= ss[k] * n * n * std::sin(arg); break;
            }
        }
        return out;
    }

    Vec2 eval(double u, int order) const {
        Vec2 p{series(u, xc_, xs_, order), series(u, yc_, ys_, order)};
        if (order == 0) {
            p.x += x0_;
            p.y += y0_;
        }
        return p;
    }

    double x0_, y0_;
    std::vector<double> xc_, xs_, yc_, ys_;
};

class PolylineModel final : public CurveModel {
public:
    explicit PolylineModel(std::vector<Vec2> pts) : pts_(std::move(pts)) {}

    double period() const override { return static_cast<double>(pts_.size()); }
    bool smooth() const override { return false; }

    Vec2 position(double u) const override {
        const auto [i, t] = locate(u);
        return pts_[i] + t * (pts_[(i + 1) % pts_.size()] - pts_[i]);
    }

    Vec2 derivative(double u) const override {
        const auto [i, t] = locate(u);
        (void)t;
        return pts_[(i + 1) % pts_.size()] - pts_[i];
    }

    Vec2 second_derivative(double) const override { return {0.0, 0.0}; }

private:
    std::pair<size_t, double> locate(double u) const {
        const double m = static_cast<double>(pts_.size());
        u = std::fmod(u, m);
        if (u < 0.0) u += m;
        size_t i = std::min(static_cast<size_t>(u), pts_.size() - 1);
        return {i, u - static_cast<double>(i)};
    }

    std::vector<Vec2> pts_;
};

}  // namespace

std::unique_ptr<CurveModel> make_model(const ClosedCurveSpec& spec) {
    switch (spec.kind) {
        case CurveKind::fourier_radial: return std::make_unique<FourierRadialModel>(spec);
        case CurveKind::fourier_xy: return std::make_unique<FourierXYModel>(spec);
        case CurveKind::polyline: return std::make_unique<PolylineModel>(spec.points);
    }
    throw std::logic_error("unreachable curve kind");
}

ArcLengthMap::ArcLengthMap(const std::function<double(double)>& speed, double u_begin,
                           double u_end, int nodes) {
    if (nodes < 2) throw std::invalid_argument("arc-length table needs at least 2 nodes");
    u_.resize(nodes + 1);
    s_.resize(nodes + 1);
    v_.resize(nodes + 1);
    const double h = (u_end - u_begin) / nodes;
    min_speed_ = std::numeric_limits<double>::infinity();
    for (int j = 0; j <= nodes; ++j) {
        u_[j] = u_begin + h * j;
        v_[j] = speed(u_[j]);
        min_speed_ = std::min(min_speed_, v_[j]);
    }
    s_[0] = 0.0;
    for (int j = 0; j < nodes; ++j) {
        const double vm = speed(0.5 * (u_[j] + u_[j + 1]));
        min_speed_ = std::min(min_speed_, vm);
        s_[j + 1] = s_[j] + h / 6.0 * (v_[j] + 4.0 * vm + v_[j + 1]);
    }
    if (!(min_speed_ > 0.0))
        throw std::runtime_error("degenerate parametrization: arc length is not monotone");
}

double ArcLengthMap::hermite_s(int i, double u) const {
    // Cubic Hermite on [u_i, u_{i+1}] using exact derivatives ds/du = v. The
    // speed is positive, so the interpolant is monotone for any reasonable
    // table density.
    const double h = u_[i + 1] - u_[i];
    const double t = (u - u_[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    return s_[i] * (2 * t3 - 3 * t2 + 1) + h * v_[i] * (t3 - 2 * t2 + t) +
           s_[i + 1] * (-2 * t3 + 3 * t2) + h * v_[i + 1] * (t3 - t2);
}

double ArcLengthMap::length_at(double u) const {
    if (u <= u_.front()) return 0.0;
    if (u >= u_.back()) return total_length();
    const auto it = std::upper_bound(u_.begin(), u_.end(), u);
    const int i = std::max<int>(0, static_cast<int>(it - u_.begin()) - 1);
    return hermite_s(i, u);
}

double ArcLengthMap::param_at(double s) const {
    if (s <= 0.0) return u_.front();
    if (s >= total_length()) return u_.back();
    const auto it = std::upper_bound(s_.begin(), s_.end(), s);
    const int i = std::max<int>(0, static_cast<int>(it - s_.begin()) - 1);
    double lo = u_[i], hi = u_[i + 1];
    for (int iter = 0; iter < 60; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (hermite_s(i, mid) < s)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace parcurve
