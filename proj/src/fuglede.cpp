#include "parcurve/fuglede.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace parcurve {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct GaussLegendre16 {
    static constexpr double node[8] = {0.0950125098376374, 0.2816035507792589,
                                       0.4580167776572274, 0.6178762444026438,
                                       0.7554044083550030, 0.8656312023878318,
                                       0.9445750230732326, 0.9894009349916499};
    static constexpr double weight[8] = {0.1894506104550685, 0.1826034150449236,
                                         0.1691565193950025, 0.1495959888165767,
                                         0.1246289712555339, 0.0951585116824928,
                                         0.0622535239386479, 0.0271524594117541};
};

// int_0^1 f(t) dt with 16-point Gauss-Legendre.
template <typename F>
double gl16(const F& f) {
    double sum = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double x = GaussLegendre16::node[i];
        sum += GaussLegendre16::weight[i] *
               (f(0.5 * (1.0 + x)) + f(0.5 * (1.0 - x)));
    }
    return 0.5 * sum;
}

// Radial curve integrals: |Gamma_eps| and int |x|^p over the curve whose
// radius is rho(theta), by the periodic trapezoid rule.
struct RadialIntegrals {
    double length = 0.0;
    double moment = 0.0;
};

RadialIntegrals radial_curve_integrals(const ClosedCurveSpec& spec, double p, int m) {
    RadialIntegrals out;
    for (int i = 0; i < m; ++i) {
        const double theta = kTwoPi * i / m;
        double rho = spec.a0, drho = 0.0;
        for (size_t k = 0; k < spec.cos_coeffs.size(); ++k) {
            const double n = static_cast<double>(k + 1);
            rho += spec.cos_coeffs[k] * std::cos(n * theta);
            drho -= spec.cos_coeffs[k] * n * std::sin(n * theta);
        }
        for (size_t k = 0; k < spec.sin_coeffs.size(); ++k) {
            const double n = static_cast<double>(k + 1);
            rho += spec.sin_coeffs[k] * std::sin(n * theta);
            drho += spec.sin_coeffs[k] * n * std::cos(n * theta);
        }
        const double element = std::sqrt(rho * rho + drho * drho);
        out.length += element;
        out.moment += std::pow(std::abs(rho), p) * element;
    }
    out.length *= kTwoPi / m;
    out.moment *= kTwoPi / m;
    return out;
}

double uniform_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
}

}  // namespace

double RadialProfile::value(double theta) const {
    double r = mean;
    for (size_t k = 0; k < cos_coeffs.size(); ++k)
        r += cos_coeffs[k] * std::cos((k + 1) * theta);
    for (size_t k = 0; k < sin_coeffs.size(); ++k)
        r += sin_coeffs[k] * std::sin((k + 1) * theta);
    return r;
}

double RadialProfile::derivative(double theta) const {
    double dr = 0.0;
    for (size_t k = 0; k < cos_coeffs.size(); ++k) {
        const double n = static_cast<double>(k + 1);
        dr -= cos_coeffs[k] * n * std::sin(n * theta);
    }
    for (size_t k = 0; k < sin_coeffs.size(); ++k) {
        const double n = static_cast<double>(k + 1);
        dr += sin_coeffs[k] * n * std::cos(n * theta);
    }
    return dr;
}

bool RadialProfile::symmetric(double tol) const {
    for (size_t k = 0; k < cos_coeffs.size(); ++k)
        if ((k + 1) % 2 == 1 && std::abs(cos_coeffs[k]) > tol) return false;
    for (size_t k = 0; k < sin_coeffs.size(); ++k)
        if ((k + 1) % 2 == 1 && std::abs(sin_coeffs[k]) > tol) return false;
    return true;
}

RadialProfile single_mode_profile(int mode, double cos_amp, double sin_amp) {
    if (mode < 1) throw std::invalid_argument("single_mode_profile: mode must be >= 1");
    RadialProfile r;
    r.cos_coeffs.assign(mode, 0.0);
    r.sin_coeffs.assign(mode, 0.0);
    r.cos_coeffs[mode - 1] = cos_amp;
    r.sin_coeffs[mode - 1] = sin_amp;
    return r;
}

ClosedCurveSpec perturbed_curve(const RadialProfile& r, double eps) {
    ClosedCurveSpec spec;
    spec.kind = CurveKind::fourier_radial;
    spec.a0 = 1.0 + eps * r.mean;
    spec.cos_coeffs = r.cos_coeffs;
    spec.sin_coeffs = r.sin_coeffs;
    for (double& c : spec.cos_coeffs) c *= eps;
    for (double& c : spec.sin_coeffs) c *= eps;
    validate_spec(spec);  // throws on a non-positive radius
    return spec;
}

double fuglede_functional(const RadialProfile& r, double p, int quad_points) {
    double int_r = 0.0, int_r2 = 0.0, int_dr2 = 0.0;
    for (int i = 0; i < quad_points; ++i) {
        const double theta = kTwoPi * i / quad_points;
        const double v = r.value(theta);
        const double d = r.derivative(theta);
        int_r += v;
        int_r2 += v * v;
        int_dr2 += d * d;
    }
    const double h = kTwoPi / quad_points;
    int_r *= h;
    int_r2 *= h;
    int_dr2 *= h;
    return (p + 1.0) * int_r2 - (p + 1.0) / kTwoPi * int_r * int_r - int_dr2;
}

double fuglede_functional_parseval(const RadialProfile& r, double p) {
    double sum = 0.0;
    for (size_t k = 0; k < r.cos_coeffs.size(); ++k) {
        const double n = static_cast<double>(k + 1);
        sum += ((p + 1.0) - n * n) * r.cos_coeffs[k] * r.cos_coeffs[k];
    }
    for (size_t k = 0; k < r.sin_coeffs.size(); ++k) {
        const double n = static_cast<double>(k + 1);
        sum += ((p + 1.0) - n * n) * r.sin_coeffs[k] * r.sin_coeffs[k];
    }
    return std::numbers::pi * sum;
}

FugledeReport expansion_check(const RadialProfile& r, double p,
                              const std::vector<double>& eps_grid) {
    if (eps_grid.size() < 4)
        throw std::invalid_argument("expansion_check: need at least 4 epsilon values");
    const auto [lo, hi] = std::minmax_element(eps_grid.begin(), eps_grid.end());
    if (!(*lo > 0.0) || *hi < 8.0 * *lo)
        throw std::invalid_argument("expansion_check: grid must span a factor of 8 in (0, inf)");
    if (!r.symmetric(0.0))
        throw std::invalid_argument("expansion_check: profile must be centrally symmetric");

    FugledeReport report;
    report.p = p;
    report.F_quadrature = fuglede_functional(r, p);
    report.F_parseval = fuglede_functional_parseval(r, p);
    report.eps_grid = eps_grid;
    report.expected_coeff = 0.5 * p * report.F_quadrature;

    double num = 0.0, den = 0.0;
    for (double eps : eps_grid) {
        const ClosedCurveSpec spec = perturbed_curve(r, eps);
        const RadialIntegrals ints = radial_curve_integrals(spec, p, 4096);
        const double g = ints.moment - std::pow(ints.length, p + 1.0) / std::pow(kTwoPi, p);
        report.G_values.push_back(g);
        num += g * eps * eps;
        den += eps * eps * eps * eps;
    }
    report.fitted_quadratic_coeff = num / den;
    return report;
}

ClosedTrace doubly_covered_segment(double half_width) {
    if (!(half_width > 0.0))
        throw std::invalid_argument("doubly_covered_segment: width must be positive");
    return {{Vec2{-half_width, 0.0}, Vec2{half_width, 0.0}}};
}

double trace_length(const ClosedTrace& trace) {
    const size_t n = trace.vertices.size();
    double len = 0.0;
    for (size_t i = 0; i < n; ++i)
        len += (trace.vertices[(i + 1) % n] - trace.vertices[i]).norm();
    return len;
}

double trace_p_moment_origin(const ClosedTrace& trace, double p) {
    const size_t n = trace.vertices.size();
    double sum = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const Vec2 a = trace.vertices[i];
        const Vec2 b = trace.vertices[(i + 1) % n];
        const double len = (b - a).norm();
        if (len == 0.0) continue;
        auto segment_part = [&](double t0, double t1) {
            if (t1 <= t0) return 0.0;
            return (t1 - t0) * len * gl16([&](double u) {
                       const double t = t0 + u * (t1 - t0);
                       return std::pow((a + t * (b - a)).norm(), p);
                   });
        };
        // Split at the closest approach to the origin so edges through zero
        // keep full quadrature accuracy.
        double t_split = dot(-a, b - a) / (len * len);
        t_split = std::clamp(t_split, 0.0, 1.0);
        sum += segment_part(0.0, t_split) + segment_part(t_split, 1.0);
    }
    return sum;
}

double normalized_functional(const ClosedCurveSpec& spec, double p, int quad_points) {
    if (!is_centrally_symmetric(spec))
        throw std::invalid_argument("normalized_functional: curve must be centrally symmetric");
    if (spec.kind != CurveKind::fourier_radial)
        throw std::invalid_argument("normalized_functional: expected a radial spec");
    const RadialIntegrals ints = radial_curve_integrals(spec, p, quad_points);
    return std::pow(kTwoPi, p) / std::pow(ints.length, p + 1.0) * ints.moment;
}

double normalized_functional(const ClosedTrace& trace, double p) {
    // Symmetry check on the vertex set (each pass of a retraced edge pairs up
    // with the reflected pass).
    double scale = 0.0;
    for (const auto& v : trace.vertices) scale = std::max(scale, v.norm());
    for (const auto& v : trace.vertices) {
        double best = std::numeric_limits<double>::infinity();
        const size_t n = trace.vertices.size();
        for (size_t i = 0; i < n; ++i)
            best = std::min(best, segment_distance(-v, trace.vertices[i],
                                                   trace.vertices[(i + 1) % n]));
        if (best > 1e-9 * std::max(scale, 1.0))
            throw std::invalid_argument("normalized_functional: trace is not centrally symmetric");
    }
    const double len = trace_length(trace);
    return std::pow(kTwoPi, p) / std::pow(len, p + 1.0) * trace_p_moment_origin(trace, p);
}

namespace {

// J_p of the perturbation profile encoded as a coefficient vector over the
// even modes 2, 4, ..., with the positivity barrier.
struct EvenModeObjective {
    double p;
    std::vector<int> modes;
    int quad_points = 1024;

    double operator()(const std::vector<double>& x) const {
        RadialProfile r;
        const int top = modes.empty() ? 0 : modes.back();
        r.cos_coeffs.assign(top, 0.0);
        r.sin_coeffs.assign(top, 0.0);
        for (size_t i = 0; i < modes.size(); ++i) {
            r.cos_coeffs[modes[i] - 1] = x[2 * i];
            r.sin_coeffs[modes[i] - 1] = x[2 * i + 1];
        }
        // Feasibility: radius stays well away from zero.
        double min_radius = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 256; ++i)
            min_radius = std::min(min_radius, 1.0 + r.value(kTwoPi * i / 256.0));
        if (min_radius < 0.05) return -1e9 + min_radius;

        ClosedCurveSpec spec;
        spec.kind = CurveKind::fourier_radial;
        spec.a0 = 1.0;
        spec.cos_coeffs = r.cos_coeffs;
        spec.sin_coeffs = r.sin_coeffs;
        const RadialIntegrals ints = radial_curve_integrals(spec, p, quad_points);
        return std::pow(kTwoPi, p) / std::pow(ints.length, p + 1.0) * ints.moment;
    }
};

}  // namespace

OptimizeResult optimize_cp(double p, int n_modes, int restarts, int budget, std::uint64_t seed) {
    if (n_modes < 2 || n_modes > 12)
        throw std::invalid_argument("optimize_cp: n_modes must be in [2, 12]");
    if (restarts < 1 || budget < 8)
        throw std::invalid_argument("optimize_cp: need at least one restart and a real budget");

    EvenModeObjective objective;
    objective.p = p;
    for (int m = 2; m <= n_modes; m += 2) objective.modes.push_back(m);
    const int dim = 2 * static_cast<int>(objective.modes.size());

    std::mt19937_64 rng(seed);
    OptimizeResult result;
    result.best_J = -std::numeric_limits<double>::infinity();

    for (int restart = 0; restart < restarts; ++restart) {
        std::vector<double> x0(dim, 0.0);
        if (restart > 0)
            for (double& c : x0) c = 0.3 * (uniform_double(rng) - 0.5);

        // Nelder-Mead with standard coefficients.
        const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
        std::vector<std::vector<double>> simplex(dim + 1, x0);
        std::vector<double> value(dim + 1);
        for (int i = 0; i < dim; ++i) simplex[i + 1][i] += 0.05;
        long long evals = 0;
        auto eval = [&](const std::vector<double>& x) {
            ++evals;
            ++result.evaluations;
            const double j = objective(x);
            if (j > result.best_J) {
                result.best_J = j;
                result.trace.emplace_back(result.evaluations, j);
                RadialProfile best;
                const int top = objective.modes.back();
                best.cos_coeffs.assign(top, 0.0);
                best.sin_coeffs.assign(top, 0.0);
                for (size_t k = 0; k < objective.modes.size(); ++k) {
                    best.cos_coeffs[objective.modes[k] - 1] = x[2 * k];
                    best.sin_coeffs[objective.modes[k] - 1] = x[2 * k + 1];
                }
                result.best_profile = best;
            }
            return j;
        };
        for (int i = 0; i <= dim; ++i) value[i] = eval(simplex[i]);

        while (evals < budget) {
            // Order ascending; the maximizer works on -J ordering inverted.
            std::vector<int> order(dim + 1);
            for (int i = 0; i <= dim; ++i) order[i] = i;
            std::sort(order.begin(), order.end(),
                      [&](int a, int b) { return value[a] > value[b]; });
            const int best = order[0], worst = order[dim], second_worst = order[dim - 1];

            std::vector<double> centroid_pt(dim, 0.0);
            for (int i = 0; i <= dim; ++i) {
                if (i == worst) continue;
                for (int d = 0; d < dim; ++d) centroid_pt[d] += simplex[i][d];
            }
            for (double& c : centroid_pt) c /= dim;

            auto blend = [&](double coeff) {
                std::vector<double> out(dim);
                for (int d = 0; d < dim; ++d)
                    out[d] = centroid_pt[d] + coeff * (simplex[worst][d] - centroid_pt[d]);
                return out;
            };

            const auto reflected = blend(-alpha);
            const double fr = eval(reflected);
            if (fr > value[best]) {
                const auto expanded = blend(-alpha * gamma);
                const double fe = eval(expanded);
                if (fe > fr) {
                    simplex[worst] = expanded;
                    value[worst] = fe;
                } else {
                    simplex[worst] = reflected;
                    value[worst] = fr;
                }
            } else if (fr > value[second_worst]) {
                simplex[worst] = reflected;
                value[worst] = fr;
            } else {
                const auto contracted = blend(rho);
                const double fc = eval(contracted);
                if (fc > value[worst]) {
                    simplex[worst] = contracted;
                    value[worst] = fc;
                } else {
                    for (int i = 0; i <= dim; ++i) {
                        if (i == best) continue;
                        for (int d = 0; d < dim; ++d)
                            simplex[i][d] =
                                simplex[best][d] + sigma * (simplex[i][d] - simplex[best][d]);
                        value[i] = eval(simplex[i]);
                    }
                }
            }
        }
    }
    if (!(result.best_J > -1e8))
        throw std::runtime_error("optimize_cp: no feasible profile evaluated within budget");
    return result;
}

std::vector<std::pair<double, double>> symmetry_breaking_sequence(double p, double eps0,
                                                                  int count) {
    if (!(p > 3.0))
        throw std::invalid_argument("symmetry_breaking_sequence: requires p > 3");
    if (!(eps0 > 0.0) || count < 1)
        throw std::invalid_argument("symmetry_breaking_sequence: bad parameters");
    const RadialProfile r = single_mode_profile(2, 0.0, 1.0);  // sin(2 theta)
    std::vector<std::pair<double, double>> out;
    for (int k = 0; k < count; ++k) {
        const double eps = eps0 / static_cast<double>(1 << k);
        out.emplace_back(eps, normalized_functional(perturbed_curve(r, eps), p));
    }
    return out;
}

}  // namespace parcurve
