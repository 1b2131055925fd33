#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "twisted/errors.hpp"
#include "twisted/operator_lab.hpp"
#include "twisted/propagator.hpp"
#include "twisted/stationary.hpp"

using namespace twisted;

TEST_CASE("stationary time") {
    CHECK(stationary_time(2.0) == doctest::Approx(pi / 2));
    CHECK(stationary_time(1.0) == doctest::Approx(pi / 6));
    CHECK_THROWS_AS(stationary_time(2.5), OutOfRegimeError);
    CHECK_THROWS_AS(stationary_time(0.0), OutOfRegimeError);
    // the phase derivative vanishes there
    const Point2 z{1.3, 0.4}, zp{0.1, -0.2};
    const double sc = stationary_time(dist(z, zp));
    CHECK(std::fabs(dphase_dt(sc, z, zp)) <= 1e-12);
}

TEST_CASE("stationary data closed forms") {
    Rng rng(41);
    for (int i = 0; i < 200; ++i) {
        const Point2 z{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        const Point2 zp{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        const double r = dist(z, zp);
        if (!(r > 0.05 && r < 1.95)) continue;
        const StationaryData d = make_stationary(4, z, zp);
        // Phi equals the phase evaluated at the stationary time
        CHECK(std::fabs(d.Phi - phase_P(d.S_c, z, zp)) <= 1e-12);
        // second derivative closed form
        CHECK(std::fabs(d.d2 - d2phase_dt2(d.S_c, z, zp)) <= 1e-10);
        CHECK(d.d2_scaled == doctest::Approx(std::ldexp(1.0, 1) * 4.0 *
                                             std::cos(d.S_c) / std::sin(d.S_c)));
    }
}

TEST_CASE("leading term vanishes off the refined cutoff") {
    const Window w = window_bump(0.8, 0.05);
    const double a = 1.75;
    CHECK(std::abs(leading_term(w, 256.0, a, 3, 1.0 / 16.0, 1.0 / 16.0,
                                {0.25, 0.0}, {0.0, 0.0})) == 0.0);
}

TEST_CASE("scaled geometry residuals shrink like 2^-j") {
    Rng rng(42);
    double sup6 = 0.0, sup10 = 0.0;
    for (int i = 0; i < 500; ++i) {
        const double u = rng.uniform(0.6, 1.4);
        const double dy = rng.uniform(-0.8, 0.8);
        const ScaledGeometry a = scaled_geometry(6, {-u, dy}, {0.0, 0.0});
        const ScaledGeometry b = scaled_geometry(10, {-u, dy}, {0.0, 0.0});
        sup6 = std::max(sup6, std::fabs(a.resid_sqrt));
        sup10 = std::max(sup10, std::fabs(b.resid_sqrt));
        CHECK(std::fabs(b.cubic_ratio - 2.0 / 3.0) <= 5.0 * std::ldexp(1.0, -10));
    }
    CHECK(sup10 <= sup6 / 8.0);
    CHECK_THROWS_AS(scaled_geometry(6, {1.0, 0.0}, {0.0, 0.0}), OutOfRegimeError);
}

TEST_CASE("reduced phase approaches the cubic model") {
    // phi_star + (2/3) frakP^{3/2} - cross -> 0 as j grows
    const Point2 z{-1.0, 0.3}, zp{0.0, 0.0};
    auto gap = [&](int j) {
        const double ph = phi_star(j, z, zp);
        const double model = -(2.0 / 3.0) * std::pow(frakP(j, z, zp), 1.5) +
                             cross_term(z, zp);
        return std::fabs(ph - model);
    };
    CHECK(gap(10) <= gap(6) / 8.0);
}

TEST_CASE("model phase determinant identity") {
    Rng rng(43);
    for (int i = 0; i < 100; ++i) {
        const double z1 = rng.uniform(0.5, 3.0), z2 = rng.uniform(-2.0, 2.0);
        const double z1p = rng.uniform(-2.0, 2.0), s = rng.uniform(-0.3, 0.3);
        CHECK(std::fabs(cs_determinant_closed(z1, z2, z1p, s) - 0.125) <= 1e-15);
        CHECK(std::fabs(cs_determinant_fd(z1, z2, z1p, s) - 0.125) <= 1e-9);
    }
    CHECK_THROWS_AS(cs_phase(-1.0, 0.0, 0.0, 0.0), OutOfRegimeError);
}

TEST_CASE("full scaled phase satisfies the determinant condition in the limit") {
    const double z1 = 0.9, z2 = 0.1, z1p = 0.4, s = 0.05;
    const double d6 = std::fabs(cs_determinant_full_fd(6, z1, z2, z1p, s) - 0.125);
    const double d10 = std::fabs(cs_determinant_full_fd(10, z1, z2, z1p, s) - 0.125);
    CHECK(d6 <= 0.1);
    CHECK(d10 < d6);
}
