#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "parcurve/moment_engine.hpp"
#include "parcurve/sampled_curve.hpp"

using namespace parcurve;
constexpr double kPi = std::numbers::pi;

namespace {

const SampledCurve& peanut_curve() {
    static const SampledCurve c = sample(make_peanut(1.0, 0.7), 4096);
    return c;
}

double peanut_inradius() {
    static const double r = inradius(peanut_curve()).r_i;
    return r;
}

// Two Gauss-Legendre panels per pass of the doubly covered segment
// [-w, w] x {0}; the kink of |x|^p sits exactly on the panel boundary, so
// integer p integrates exactly.
Pieces doubly_covered_pieces(double w) {
    static constexpr double node[4] = {-0.8611363115940526, -0.3399810435848563,
                                       0.3399810435848563, 0.8611363115940526};
    static constexpr double weight[4] = {0.3478548451374538, 0.6521451548625461,
                                         0.6521451548625461, 0.3478548451374538};
    Pieces pieces;
    for (int pass = 0; pass < 2; ++pass) {
        LineQuadrature quad;
        for (int panel = 0; panel < 2; ++panel) {
            const double mid = (panel == 0) ? -0.5 * w : 0.5 * w;
            for (int q = 0; q < 4; ++q) {
                quad.points.push_back({mid + 0.5 * w * node[q], 0.0});
                quad.weights.push_back(weight[q] * 0.5 * w);
            }
        }
        pieces.push_back(quad);
    }
    return pieces;
}

}  // namespace

TEST_CASE("centroid: shifted circle, symmetric sets, refinement oracle") {
    ClosedCurveSpec shifted;
    shifted.kind = CurveKind::fourier_xy;
    shifted.x0 = 2.0;
    shifted.y0 = 3.0;
    shifted.x_cos = {0.5};
    shifted.y_sin = {0.5};
    const auto circle = sample(shifted, 2048);
    const Vec2 c = centroid({boundary_quadrature(circle)});
    CHECK(c.x == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(c.y == doctest::Approx(3.0).epsilon(1e-9));

    const Vec2 cp = centroid({boundary_quadrature(peanut_curve())});
    CHECK(cp.norm() < 1e-8);

    // refinement oracle: the same S_t from a twice-refined boundary sampling
    const double t = 0.62 * peanut_inradius();
    ParallelSetOptions opt;
    opt.known_inradius = peanut_inradius();
    const auto ps = parallel_set(peanut_curve(), t, opt);
    const Vec2 c1 = centroid(ps.quadratures);

    const auto fine = sample(make_peanut(1.0, 0.7), 8 * 4096 / 4);  // 8192 samples
    ParallelSetOptions fine_opt;
    fine_opt.known_inradius = peanut_inradius();
    const auto ps_fine = parallel_set(fine, t, fine_opt);
    const Vec2 c2 = centroid(ps_fine.quadratures);
    CHECK((c1 - c2).norm() < 1e-7);
}

TEST_CASE("centroid rejects empty pieces") {
    CHECK_THROWS_AS(centroid({}), std::invalid_argument);
}

TEST_CASE("p_moment: circles, disk parallel sets, doubly covered segment") {
    const double r = 1.5;
    const auto circle = sample(make_disk(r), 2048);
    CHECK(p_moment({boundary_quadrature(circle)}, 2.0, {0, 0}) ==
          doctest::Approx(2 * kPi * r * r * r).epsilon(1e-8));

    const auto disk = sample(make_disk(1.0), 4096);
    ParallelSetOptions opt;
    opt.known_inradius = 1.0;
    const double t = 0.35, p = 0.7;
    const auto ps = parallel_set(disk, t, opt);
    const double expected = 2 * kPi * std::pow(disk.length() / (2 * kPi) - t, 1.0 + p);
    CHECK(p_moment(ps.quadratures, p, {0, 0}) == doctest::Approx(expected).epsilon(1e-7));

    // closed form (1/4)^p / (p+1) for the unit-length doubly covered segment
    const auto pieces = doubly_covered_pieces(0.25);
    CHECK(pieces_length(pieces) == doctest::Approx(1.0).epsilon(1e-12));
    const double m4 = p_moment(pieces, 4.0, {0, 0});
    CHECK(m4 == doctest::Approx(std::pow(0.25, 4.0) / 5.0).epsilon(1e-10));
    CHECK(m4 == doctest::Approx(7.8125e-4).epsilon(1e-10));
}

TEST_CASE("p_moment input validation") {
    CHECK_THROWS_AS(p_moment({}, 0.0, {0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(p_moment({}, -1.0, {0, 0}), std::invalid_argument);
}

TEST_CASE("parallel-axis identity: the centroid minimizes the second moment") {
    const double t = 0.62 * peanut_inradius();
    ParallelSetOptions opt;
    opt.known_inradius = peanut_inradius();
    const auto ps = parallel_set(peanut_curve(), t, opt);
    const Vec2 c = centroid(ps.quadratures);
    const double base = p_moment(ps.quadratures, 2.0, c);
    const double len = pieces_length(ps.quadratures);
    oracles::Rng rng(99);
    for (int trial = 0; trial < 8; ++trial) {
        const Vec2 q{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        const double direct = p_moment(ps.quadratures, 2.0, q);
        const double axis = base + len * (q - c).norm2();
        CHECK(direct == doctest::Approx(axis).epsilon(1e-8));
        CHECK(direct >= base - 1e-12);
    }
}

TEST_CASE("verify_isomom: disk equality, strict inequality elsewhere") {
    const auto disk = sample(make_disk(1.0), 4096);
    std::vector<double> grid;
    for (int j = 0; j < 50; ++j) grid.push_back(0.95 * (j + 0.5) / 50.0);
    IsomomOptions fast;
    fast.with_cover_wirtinger = false;
    fast.parallel.known_inradius = 1.0;
    for (const auto& report : verify_isomom(disk, grid, 2.0, fast)) {
        REQUIRE(report.regular);
        CHECK(std::abs(report.margin) < 1e-7);  // equality case
        CHECK(report.passed);
        CHECK(report.condition_passed);
    }

    const auto ell = sample(make_ellipse(2.0, 1.0), 4096);
    IsomomOptions eopt;
    eopt.parallel.known_inradius = inradius(ell).r_i;
    const auto ereports = verify_isomom(ell, {0.2}, 2.0, eopt);
    REQUIRE(ereports.size() == 1);
    CHECK(ereports[0].margin > 1e-3);
    CHECK(ereports[0].passed);
    CHECK(ereports[0].wirtinger_lhs <= ereports[0].wirtinger_rhs);

    IsomomOptions popt;
    popt.parallel.known_inradius = peanut_inradius();
    const auto preports =
        verify_isomom(peanut_curve(), {0.62 * peanut_inradius()}, 1.0, popt);
    REQUIRE(preports.size() == 1);
    CHECK(preports[0].n_components == 2);
    CHECK(preports[0].margin > 1e-3);
    CHECK(preports[0].passed);
}

TEST_CASE("verify_isomom: p outside (0, 2] is rejected") {
    const auto disk = sample(make_disk(1.0), 1024);
    CHECK_THROWS_AS(verify_isomom(disk, {0.3}, 2.5), std::invalid_argument);
    CHECK_THROWS_AS(verify_isomom(disk, {0.3}, 0.0), std::invalid_argument);
}

TEST_CASE("Jensen consistency and scaling law") {
    IsomomOptions opt;
    opt.with_cover_wirtinger = false;
    opt.parallel.known_inradius = peanut_inradius();
    const double t = 0.3;
    const auto ps = parallel_set(peanut_curve(), t, opt.parallel);
    const Vec2 c = centroid(ps.quadratures);
    const double len = pieces_length(ps.quadratures);
    const double m2 = p_moment(ps.quadratures, 2.0, c);
    for (double p : {0.5, 1.0, 1.5}) {
        const double mp = p_moment(ps.quadratures, p, c);
        CHECK(std::pow(mp, 2.0 / p) <=
              std::pow(len, 2.0 / p - 1.0) * m2 * (1.0 + 1e-9) + 1e-12);
    }

    // scaling by lambda multiplies the p-th moment by lambda^{p+1}
    const double lambda = 1.7, p = 1.3;
    const auto big = sample(scaled(make_peanut(1.0, 0.7), lambda), 4096);
    const auto big_ps = parallel_set(big, lambda * t);
    const double mp_small = p_moment(ps.quadratures, p, c);
    const double mp_big = p_moment(big_ps.quadratures, p, centroid(big_ps.quadratures));
    CHECK(mp_big == doctest::Approx(std::pow(lambda, p + 1.0) * mp_small).epsilon(1e-6));

    // pass verdicts are scale invariant
    IsomomOptions big_opt = opt;
    big_opt.parallel.known_inradius = {};
    const auto small_rep = verify_isomom(peanut_curve(), {t}, p, opt)[0];
    const auto big_rep = verify_isomom(big, {lambda * t}, p, big_opt)[0];
    CHECK(small_rep.passed == big_rep.passed);
}

TEST_CASE("wirtinger_check: circle equality, ellipse strict, covers") {
    const auto circle = sample(make_disk(1.3), 4096);
    const auto [clhs, crhs] = wirtinger_check(circle.points(), circle.length());
    CHECK(clhs == doctest::Approx(crhs).epsilon(1e-8));

    const auto ell = sample(make_ellipse(2.0, 1.0), 4096);
    const auto [elhs, erhs] = wirtinger_check(ell.points(), ell.length());
    CHECK(elhs < erhs);

    ParallelSetOptions opt;
    opt.known_inradius = peanut_inradius();
    const auto ps = parallel_set(peanut_curve(), 0.62 * peanut_inradius(), opt);
    const auto cc = build_cover(ps, peanut_curve());
    double cover_len = 0.0;
    const auto trace = resample_closed_polyline(cc.trace, 8192, &cover_len);
    const auto [lhs, rhs] = wirtinger_check(trace, cover_len);
    CHECK(lhs <= rhs + 1e-5 * std::pow(cover_len, 3.0));
}

TEST_CASE("domain_moment: disk closed form and peanut two-path agreement") {
    const auto disk = sample(make_disk(1.0), 4096);
    const auto dm = domain_moment(disk);
    CHECK(dm.direct == doctest::Approx(kPi / 2.0).epsilon(1e-9));
    CHECK(std::abs(dm.coarea - kPi / 2.0) < 1e-6);

    const auto pm = domain_moment(peanut_curve());
    // closed form of (1/4) int r^4 for r = 1 + c cos(2 theta)
    const double c = 0.7;
    const double closed_form = 0.25 * 2 * kPi * (1.0 + 3.0 * c * c + 0.375 * c * c * c * c);
    CHECK(pm.direct == doctest::Approx(closed_form).epsilon(1e-10));
    CHECK(std::abs(pm.coarea - pm.direct) / pm.direct < 0.005);

    // isoperimetric comparison with the disk of equal perimeter
    const double R = peanut_curve().length() / (2 * kPi);
    CHECK(pm.direct <= kPi * R * R * R * R / 2.0);
    CHECK(pm.coarea <= kPi * R * R * R * R / 2.0);
}

TEST_CASE("domain_moment: grid fallback for non-radial specs") {
    const auto ell = sample(make_ellipse(2.0, 1.0), 2048);
    DomainMomentOptions opt;
    opt.t_panels = 12;
    const auto dm = domain_moment(ell, opt);
    // closed form: int |x|^2 over an ellipse = pi a b (a^2 + b^2) / 4
    const double expected = kPi * 2.0 * 1.0 * (4.0 + 1.0) / 4.0;
    CHECK(dm.direct == doctest::Approx(expected).epsilon(2e-3));
    CHECK(dm.coarea == doctest::Approx(expected).epsilon(2e-3));
}

TEST_CASE("verify_isomom: non-symmetric domains pin x0 at the first regular centroid") {
    ClosedCurveSpec egg;
    egg.kind = CurveKind::fourier_radial;
    egg.a0 = 1.0;
    egg.cos_coeffs = {0.15};
    const auto curve = sample(egg, 2048);
    IsomomOptions opt;
    opt.with_cover_wirtinger = false;
    const auto reports = verify_isomom(curve, {0.1, 0.3, 0.5}, 2.0, opt);
    REQUIRE(reports.size() == 3);
    const Vec2 x0 = reports[0].fixed_center;
    CHECK((x0 - reports[0].centroid).norm() < 1e-12);
    for (const auto& r : reports) {
        if (!r.regular || r.empty) continue;
        CHECK((r.fixed_center - x0).norm() < 1e-12);  // one x0 for all levels
        CHECK(r.passed);
    }
    // symmetric specs keep the origin and report the cover centroid near it
    const auto pea = sample(make_peanut(1.0, 0.7), 2048);
    IsomomOptions popt;
    const auto prep = verify_isomom(pea, {0.2}, 2.0, popt);
    CHECK(prep[0].fixed_center.norm() == 0.0);
    CHECK(prep[0].cover_centroid.norm() < 1e-6);
}
