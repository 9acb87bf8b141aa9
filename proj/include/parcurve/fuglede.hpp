#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "parcurve/curve_spec.hpp"
#include "parcurve/vec2.hpp"

namespace parcurve {

// Radial perturbation profile r(theta) = mean + sum of modes (indexed from 1).
// Symmetric profiles have all odd-mode coefficients equal to zero, i.e.
// r(theta) = r(theta + pi).
struct RadialProfile {
    double mean = 0.0;
    std::vector<double> cos_coeffs;
    std::vector<double> sin_coeffs;

    double value(double theta) const;
    double derivative(double theta) const;
    bool symmetric(double tol = 0.0) const;
};

// Profile supported on a single mode; helper for the common test cases.
RadialProfile single_mode_profile(int mode, double cos_amp, double sin_amp);

// The nearly circular curve R_eps(theta) = 1 + eps * r(theta) as a radial
// spec. Throws when the radius is not strictly positive.
ClosedCurveSpec perturbed_curve(const RadialProfile& r, double eps);

// Second-variation functional
//   F(r) = (p+1) int r^2 - (p+1)/(2 pi) (int r)^2 - int (r')^2,
// evaluated by quadrature on a uniform theta grid.
double fuglede_functional(const RadialProfile& r, double p, int quad_points = 4096);

// Same functional through the Parseval sum pi * sum_n ((p+1) - n^2) (a_n^2 + b_n^2).
double fuglede_functional_parseval(const RadialProfile& r, double p);

struct FugledeReport {
    double p = 2.0;
    double F_quadrature = 0.0;
    double F_parseval = 0.0;
    std::vector<double> eps_grid;
    std::vector<double> G_values;  // G(eps) = int |x|^p dH^1 - |Gamma|^{p+1} / (2 pi)^p
    double fitted_quadratic_coeff = 0.0;
    double expected_coeff = 0.0;  // p * F(r) / 2
};

// Evaluates G on the epsilon grid and fits the quadratic coefficient by least
// squares; the grid needs at least 4 points spanning a factor of 8.
FugledeReport expansion_check(const RadialProfile& r, double p,
                              const std::vector<double>& eps_grid);

// Closed Lipschitz curve as a cyclic polyline; multiplicity is expressed by
// retracing (the doubly covered segment lists each pass).
struct ClosedTrace {
    std::vector<Vec2> vertices;
};

// The doubly covered interval [-half_width, half_width] x {0}.
ClosedTrace doubly_covered_segment(double half_width = 0.25);

double trace_length(const ClosedTrace& trace);
// Line integral of |x|^p with edge-wise Gauss-Legendre, split where an edge
// passes the origin so integer powers integrate exactly.
double trace_p_moment_origin(const ClosedTrace& trace, double p);

// Normalized p-th moment J_p = (2 pi)^p / |Gamma|^{p+1} * int |x|^p dH^1.
// Requires a centrally symmetric input (the functional's search space).
double normalized_functional(const ClosedCurveSpec& spec, double p, int quad_points = 4096);
double normalized_functional(const ClosedTrace& trace, double p);

struct OptimizeResult {
    double best_J = 0.0;  // a lower bound for C_p, never the supremum itself
    RadialProfile best_profile;
    std::vector<std::pair<long long, double>> trace;  // (evaluation index, best J so far)
    long long evaluations = 0;
};

// Derivative-free simplex search over symmetric (even-mode) profiles with a
// positivity barrier on the radius; deterministic for a fixed seed. n_modes is
// the highest mode index used (<= 12); budget caps evaluations per restart.
OptimizeResult optimize_cp(double p, int n_modes, int restarts, int budget, std::uint64_t seed);

// J_p along the mode-2 family eps_n = eps0 / 2^n; only defined for p > 3,
// where the members beat the disk for small eps.
std::vector<std::pair<double, double>> symmetry_breaking_sequence(double p, double eps0,
                                                                  int count);

}  // namespace parcurve
