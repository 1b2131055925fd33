#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "twisted/errors.hpp"
#include "twisted/operator_lab.hpp"
#include "twisted/oscillatory.hpp"
#include "twisted/quadrature.hpp"

using namespace twisted;

namespace {

DiscreteOperator gaussian_op(const Grid2& g) {
    return discretize(g, g, [](Point2 z, Point2 zp) -> cplx {
        const double r2 = dist(z, zp) * dist(z, zp);
        const double ph = 0.7 * cross_term(z, zp);
        return std::exp(-r2) * cplx{std::cos(ph), std::sin(ph)};
    });
}

}  // namespace

TEST_CASE("rng streams are deterministic and well scaled") {
    Rng a(99), b(99);
    for (int i = 0; i < 100; ++i) {
        CHECK(a.uniform() == b.uniform());
        CHECK(a.gaussian() == b.gaussian());
    }
    Rng c(7);
    double mean = 0.0;
    for (int i = 0; i < 20000; ++i) mean += c.gaussian();
    CHECK(std::fabs(mean / 20000.0) <= 0.05);
}

TEST_CASE("quadrature and fitting utilities") {
    const cplx I{0.0, 1.0};
    const QuadResult q =
        adaptive_integrate([&](double x) { return std::exp(I * x); }, 0.0, 1.0);
    CHECK(std::abs(q.value - (std::exp(I) - 1.0) / I) <= 1e-12);
    const LineFit f = fit_line({0.0, 1.0, 2.0, 3.0}, {1.0, 3.0, 5.0, 7.0});
    CHECK(f.slope == doctest::Approx(2.0));
    CHECK(f.intercept == doctest::Approx(1.0));
    CHECK(f.residual <= 1e-12);
    const ExtrapResult ex = neville_to_zero({0.4, 0.2, 0.1},
                                            {cplx{1.16, 0.0}, cplx{1.04, 0.0},
                                             cplx{1.01, 0.0}});  // 1 + x^2
    CHECK(std::abs(ex.value - 1.0) <= 1e-12);
}

TEST_CASE("lattice squares") {
    const Grid2 g = Grid2::square(1.0, 5);
    const std::vector<long> s = lattice_squares(g);
    auto has = [&](long v) {
        return std::find(s.begin(), s.end(), v) != s.end();
    };
    CHECK(has(0));
    CHECK(has(1));
    CHECK(has(2));
    CHECK(has(4));
    CHECK(!has(3));  // not a sum of two squares of lattice offsets
    CHECK_THROWS_AS(lattice_squares(Grid2::rect(0, 1, 0, 2, 4, 4)),
                    OutOfRegimeError);
}

TEST_CASE("radial assembly equals direct discretization") {
    const Grid2 g = Grid2::square(1.0, 9);
    auto radial = [](double r) -> cplx { return std::exp(-r * r) * cplx{1.0, 0.2}; };
    const DiscreteOperator a = assemble_radial(g, 0.7, radial);
    const DiscreteOperator b = discretize(g, g, [&](Point2 z, Point2 zp) -> cplx {
        const double ph = 0.7 * cross_term(z, zp);
        return radial(dist(z, zp)) * cplx{std::cos(ph), std::sin(ph)};
    });
    CHECK((a.A - b.A).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("norm brackets on exactly solvable operators") {
    const Grid2 g = Grid2::square(1.0, 8);
    // zero operator
    DiscreteOperator zero{g, g, Eigen::MatrixXcd::Zero(g.size(), g.size())};
    for (double p : {2.0, 4.0}) {
        const NormEstimate e = opnorm_bracket(zero, p, 2, 20, 5);
        CHECK(e.lower == 0.0);
        CHECK(*e.upper == 0.0);
    }
    // multiplication by 3 (kernel 3/weight * identity)
    DiscreteOperator scale{g, g,
                           (3.0 / g.weight()) *
                               Eigen::MatrixXcd::Identity(g.size(), g.size())};
    for (double p : {2.0, 4.0, std::numeric_limits<double>::infinity()}) {
        const NormEstimate e = opnorm_bracket(scale, p, 2, 40, 5);
        CHECK(e.lower == doctest::Approx(3.0).epsilon(1e-9));
        CHECK(*e.upper == doctest::Approx(3.0).epsilon(1e-9));
    }
}

TEST_CASE("p = 2 bracket closes on a smooth kernel operator") {
    const DiscreteOperator T = gaussian_op(Grid2::square(2.0, 16));
    const NormEstimate e = opnorm_bracket(T, 2.0, 4, 120, 7);
    CHECK(e.lower <= *e.upper);
    CHECK(*e.upper / e.lower <= 1.0 + 1e-6);
}

TEST_CASE("seeded reproducibility is bit exact") {
    const DiscreteOperator T = gaussian_op(Grid2::square(2.0, 12));
    const NormEstimate a = opnorm_bracket(T, 4.0, 3, 60, 12345);
    const NormEstimate b = opnorm_bracket(T, 4.0, 3, 60, 12345);
    CHECK(a.lower == b.lower);
    CHECK(opnorm_lower(T, 4.0, 3, 60, 12345) == a.lower);
}

TEST_CASE("duality: 4->4 matches 4/3->4/3 of the adjoint") {
    const DiscreteOperator T = gaussian_op(Grid2::square(2.0, 14));
    DiscreteOperator Tadj{T.src, T.tgt, T.A.adjoint()};
    const double a = opnorm_lower(T, 4.0, 4, 120, 31);
    const double b = opnorm_lower(Tadj, 4.0 / 3.0, 4, 120, 31);
    CHECK(std::fabs(a - b) <= 0.05 * a);
}

TEST_CASE("grid refinement stability of norm estimates") {
    const double a = opnorm_lower(gaussian_op(Grid2::square(2.0, 24)), 4.0, 4, 120, 9);
    const double b = opnorm_lower(gaussian_op(Grid2::square(2.0, 48)), 4.0, 4, 120, 9);
    CHECK(std::fabs(a - b) <= 0.05 * std::max(a, b));
}

TEST_CASE("mixed-norm lower bound on a rank-one operator") {
    // T f = phi <psi, f>: ||T||_{2->inf} = ||phi||_inf ||psi||_2
    const Grid2 g = Grid2::square(2.0, 16);
    Eigen::VectorXcd phi(g.size()), psi_v(g.size());
    for (int i = 0; i < g.size(); ++i) {
        const Point2 z = g.point(i);
        phi[i] = std::exp(-z.x * z.x - z.y * z.y);
        psi_v[i] = std::exp(-0.5 * (z.x * z.x + z.y * z.y)) * cplx{0.0, 1.0};
    }
    DiscreteOperator T{g, g, phi * psi_v.adjoint()};
    const double exact = lp_norm(phi, std::numeric_limits<double>::infinity(), 1.0) *
                         lp_norm(psi_v, 2.0, g.weight());
    const double lower = opnorm_2p_lower(
        T, std::numeric_limits<double>::infinity(), 3, 40, 17);
    CHECK(lower <= exact * (1.0 + 1e-9));
    CHECK(lower >= 0.98 * exact);
}

TEST_CASE("scan reports serialize deterministically") {
    ScanReport r;
    r.name = "demo";
    r.xlabel = "lambda";
    r.ylabel = "norm";
    r.x = {2.0, 4.0, 8.0};
    r.y = {1.0, 0.5, 0.25};
    r.target = -1.0;
    r.tolerance = 0.1;
    finish_loglog_scan(r, false);
    CHECK(r.slope == doctest::Approx(-1.0));
    CHECK(r.pass);
    const std::string csv = r.to_csv();
    CHECK(csv.find("\r\n") != std::string::npos);
    CHECK(csv == r.to_csv());
    const std::string js = r.to_json();
    CHECK(js.find("\"slope\":-1") != std::string::npos);
    CHECK(js == r.to_json());
}
