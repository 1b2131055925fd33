#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "twisted/bumps.hpp"
#include "twisted/errors.hpp"
#include "twisted/oscillatory.hpp"
#include "twisted/quadrature.hpp"

using namespace twisted;

TEST_CASE("hat transform matches direct quadrature") {
    const int ell = 2;
    const double delta = 0.5;
    const cplx I{0.0, 1.0};
    for (double t : {-3.7, -0.4, 0.0, 1.1, 6.2}) {
        QuadOptions opt;
        opt.abs_tol = 1e-13;
        opt.rel_tol = 1e-12;
        const cplx direct =
            adaptive_integrate(
                [&](double s) {
                    return psi_ell_delta(ell, delta, s) * std::exp(-I * (s * t));
                },
                std::ldexp(1.0, ell - 2), std::ldexp(1.0, ell), opt)
                .value;
        CHECK(std::abs(hat_psi_ell_delta(ell, delta, t) - direct) <= 1e-8);
    }
    // real and even in t at t=0 symmetric pair
    CHECK(std::abs(hat_psi_ell_delta(ell, delta, 1.3) -
                   std::conj(hat_psi_ell_delta(ell, delta, -1.3))) <= 1e-10);
}

TEST_CASE("windows declare their supports") {
    const Window ring = window_eta_ring(0.125);
    CHECK(ring.support().size() == 2);
    CHECK(std::abs(ring.eval(0.06)) > 0.0);
    CHECK(std::abs(ring.eval(0.02)) == 0.0);
    const Window in = window_interior();
    CHECK(in.support().size() == 1);
    CHECK(std::abs(in.eval(pi / 2)) == doctest::Approx(1.0));
}

TEST_CASE("singular support is rejected without regularization") {
    const Window w = window_eta0_hatpsi(2, 0.5, 0);  // support straddles t = 0
    CHECK_THROWS_AS(bracket_kernel(w, 64.0, {1, 0}, {0, 0}), SingularTimeError);
    const cplx v = bracket_kernel(w, 64.0, {1, 0}, {0, 0}, 1e-3);
    CHECK(std::isfinite(std::abs(v)));
}

TEST_CASE("shared-node radial tables match pointwise quadrature") {
    const Grid2 g = Grid2::square(1.0, 12);
    const double h = g.hx();
    for (double lambda : {64.0, 256.0}) {
        const Window w = window_interior();
        const std::vector<cplx> table = bracket_radial_table(w, lambda, g);
        for (long s : {1L, 5L, 41L, 130L, 242L}) {
            const double r = h * std::sqrt(static_cast<double>(s));
            const cplx direct = bracket_kernel(w, lambda, {r, 0.0}, {0.0, 0.0});
            CHECK(std::abs(table[s] - direct) <= 1e-8 * (1.0 + std::abs(direct)));
        }
    }
    // ring window with the central gap, unregularized
    const Window ring = window_eta_ring(0.125);
    const std::vector<cplx> table = bracket_radial_table(ring, 128.0, g);
    const double r = h * std::sqrt(130.0);
    const cplx direct = bracket_kernel(ring, 128.0, {r, 0.0}, {0.0, 0.0});
    CHECK(std::abs(table[130] - direct) <= 1e-8 * (1.0 + std::abs(direct)));
}

TEST_CASE("assembled operator carries the cross phase") {
    const Grid2 g = Grid2::square(1.0, 8);
    const Window w = window_interior();
    const double lambda = 64.0;
    const DiscreteOperator T = bracket_operator(w, lambda, g);
    const Point2 z = g.point(10), zp = g.point(37);
    const cplx direct = bracket_kernel(w, lambda, z, zp);
    CHECK(std::abs(T.A(10, 37) - direct) <= 1e-8 * (1.0 + std::abs(direct)));
}

TEST_CASE("kernel envelopes: shape and lambda-stable constants") {
    CHECK(envelope_bl(3, 4, 256.0, 3) > 0.0);
    CHECK(envelope_Kj(2, 3, 256.0, 0.5, 3) < envelope_Kj(2, 3, 256.0, 0.1, 3));
    CHECK(envelope_exterior(256.0, 2.5, 3) < envelope_exterior(256.0, 2.1, 3));
    auto constant_at = [&](double lambda) {
        double c = 0.0;
        for (int l = 1; l <= 3; ++l) {
            const Window w = window_eta1_timepiece(l);
            for (double r : {0.3, 0.9, 1.3}) {
                const cplx v = bracket_kernel(w, lambda, {r, 0.0}, {0.0, 0.0});
                c = std::max(c, std::abs(v) / envelope_bl(l, 4, lambda, 3));
            }
        }
        return c;
    };
    const double c1 = constant_at(256.0), c2 = constant_at(512.0);
    CHECK(c2 <= 4.0 * c1);
    CHECK(c1 <= 4.0 * c2);
}

TEST_CASE("short-time tiles decay in the shift index") {
    const int ell = 3;
    const double lambda = 256.0, eps = 1e-4;
    const Point2 z{0.9, 0.1}, zp{0.2, -0.3};
    double prev = -1.0;
    std::vector<double> vals;
    for (int n : {0, 1, 2}) {
        const Window w = window_eta0_hatpsi(ell, 0.5, n);
        vals.push_back(std::abs(bracket_kernel(w, lambda, z, zp, eps)));
    }
    CHECK(vals[1] < vals[0]);
    CHECK(vals[2] < vals[1]);
    CHECK(vals[1] <= 0.2 * vals[0]);
    (void)prev;
}

TEST_CASE("tiling split is exact with eight neighbors") {
    const Grid2 g = Grid2::square(1.0, 10);
    const Window w = window_interior();
    const DiscreteOperator T = bracket_operator(w, 64.0, g);
    const TilingSplit ts = tiling_split(T, 0.5);
    CHECK(ts.neighbor_count == 8);
    CHECK((ts.near_part.A + ts.far_part.A - T.A).cwiseAbs().maxCoeff() == 0.0);
    // near part dominates for this smooth short-range window
    const double nn = ts.near_part.A.cwiseAbs().sum();
    const double ff = ts.far_part.A.cwiseAbs().sum();
    CHECK(nn + ff > 0.0);
}
