#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "twisted/errors.hpp"
#include "twisted/operator_lab.hpp"
#include "twisted/spectral.hpp"

using namespace twisted;

namespace {

SampledField ground_state(const Grid2& g) {
    return SampledField::sample(g, [](Point2 z) -> cplx {
        return std::exp(-0.25 * (z.x * z.x + z.y * z.y));
    });
}

double rel_l2(const SampledField& a, const Eigen::VectorXcd& b) {
    return lp_norm(Eigen::VectorXcd(a.values - b), 2.0, a.grid.weight()) /
           lp_norm(b, 2.0, a.grid.weight());
}

}  // namespace

TEST_CASE("ground state is fixed by the operator, both stencil routes") {
    const Grid2 g = Grid2::square(8.0, 64);
    const SampledField f = ground_state(g);
    const SampledField a = apply_twisted_laplacian(f);
    const SampledField b = apply_twisted_laplacian_twostage(f);
    CHECK(rel_l2(a, f.values) <= 1e-3);
    CHECK(rel_l2(b, f.values) <= 1e-3);
    CHECK_THROWS_AS(apply_twisted_laplacian(SampledField{Grid2::square(1.0, 4),
                                                         Eigen::VectorXcd::Zero(16)}),
                    GridTooCoarseError);
}

TEST_CASE("scaled Laguerre recurrence") {
    // L_2(x) = 1 - 2x + x^2/2
    const double x = 0.7;
    CHECK(laguerre_scaled(2, x) ==
          doctest::Approx((1.0 - 2.0 * x + 0.5 * x * x) * std::exp(-0.5 * x)));
    CHECK(laguerre_scaled(0, x) == doctest::Approx(std::exp(-0.5 * x)));
    // overflow-free at large degree and argument
    CHECK(std::isfinite(laguerre_scaled(400, 900.0)));
}

TEST_CASE("dual-route projection kernels agree") {
    Rng rng(31);
    for (int i = 0; i < 30; ++i) {
        const Point2 z{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
        const Point2 zp{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
        for (int mu : {1, 3})
            CHECK(std::abs(projection_fourier(mu, z, zp) -
                           projection_closed(mu, z, zp)) <= 1e-6);
    }
    CHECK_THROWS_AS(projection_fourier(2, {0, 0}, {0, 0}), OutOfRegimeError);
}

TEST_CASE("closed-form constant calibrates to 1/(2 pi)") {
    const cplx c = fit_projection_constant();
    CHECK(std::abs(c - cplx{1.0 / (2.0 * pi), 0.0}) <= 1e-5);
}

TEST_CASE("closed-form zeros and symmetry") {
    // mu = 3: L_1(1) = 0, attained at |z - z'|^2 = 2
    CHECK(std::abs(projection_closed(3, {std::sqrt(2.0), 0.0}, {0.0, 0.0})) <= 1e-15);
    // diagonal value of a positive projection
    const cplx d = projection_closed(1, {0.4, -0.7}, {0.4, -0.7});
    CHECK(d.real() > 0.0);
    CHECK(std::fabs(d.imag()) <= 1e-15);
    CHECK(d.real() == doctest::Approx(1.0 / (2.0 * pi)));
    // Hermitian symmetry
    const cplx a = projection_closed(5, {1.0, 0.2}, {-0.3, 0.8});
    const cplx b = std::conj(projection_closed(5, {-0.3, 0.8}, {1.0, 0.2}));
    CHECK(std::abs(a - b) <= 1e-15);
}

TEST_CASE("projection idempotence and orthogonality on a grid") {
    const Grid2 g = Grid2::square(7.0, 48);
    const SampledField f = SampledField::sample(g, [](Point2 z) -> cplx {
        return std::exp(-0.5 * (z.x * z.x + z.y * z.y)) * cplx{1.0, z.x};
    });
    const DiscreteOperator P1 = projection_operator(1, g, false);
    const DiscreteOperator P3 = projection_operator(3, g, false);
    const Eigen::VectorXcd p1f = P1.apply(f.values);
    const double n1 = lp_norm(p1f, 2.0, g.weight());
    CHECK(lp_norm(Eigen::VectorXcd(P1.apply(p1f) - p1f), 2.0, g.weight()) <=
          1e-4 * n1);
    CHECK(lp_norm(P3.apply(p1f), 2.0, g.weight()) <= 1e-4 * n1);
}

TEST_CASE("eigenrelation through the finite-difference operator") {
    const Grid2 g = Grid2::square(7.0, 56);
    const SampledField f = SampledField::sample(g, [](Point2 z) -> cplx {
        return std::exp(-0.45 * (z.x * z.x + z.y * z.y)) * cplx{z.x, -z.y};
    });
    const DiscreteOperator P3 = projection_operator(3, g, false);
    SampledField p3f{g, P3.apply(f.values)};
    const SampledField lp = apply_twisted_laplacian(p3f);
    const double rel = lp_norm(Eigen::VectorXcd(lp.values - 3.0 * p3f.values), 2.0,
                               g.weight()) /
                       lp_norm(p3f.values, 2.0, g.weight());
    CHECK(rel <= 1e-2);
}

TEST_CASE("Riesz mean on the ground state") {
    const Grid2 g = Grid2::square(8.0, 64);
    const SampledField f = ground_state(g);
    const SampledField s = riesz_apply({2.0, 0.5, 129}, f);
    CHECK(rel_l2(s, Eigen::VectorXcd(std::sqrt(0.5) * f.values)) <= 1e-4);
    const SampledField zero = riesz_apply({0.5, 0.5, 129}, f);
    CHECK(zero.lp_norm(2.0) <= 1e-12);
    CHECK_THROWS_AS(riesz_radial({300.0, 0.5, 129}, 1.0), CapExceededError);
}

TEST_CASE("spectral completeness for a Gaussian bump") {
    const Grid2 g = Grid2::square(7.0, 48);
    const SampledField f = SampledField::sample(g, [](Point2 z) -> cplx {
        return std::exp(-(z.x * z.x + z.y * z.y));
    });
    double prev = 1e9;
    for (double lam : {4.0, 16.0, 64.0}) {
        SampledField s = riesz_apply({lam, 0.0, 129}, f);
        s.values -= f.values;
        const double err = s.lp_norm(2.0) / f.lp_norm(2.0);
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev <= 1e-3);
}

TEST_CASE("convergence preconditions and critical index") {
    CHECK(delta_critical(4.0) == 0.0);
    CHECK(delta_critical(2.0) == 0.0);
    CHECK(delta_critical(std::numeric_limits<double>::infinity()) ==
          doctest::Approx(0.5));
    const Grid2 g = Grid2::square(4.0, 16);
    const SampledField f = ground_state(g);
    CHECK_THROWS_AS(convergence_experiment(f, 4.0, 0.0, {9.0, 17.0}),
                    OutOfRegimeError);
}
