#include "twisted/spectral.hpp"

#include <cmath>

#include "twisted/errors.hpp"
#include "twisted/propagator.hpp"
#include "twisted/quadrature.hpp"

namespace twisted {

namespace {

// 4th-order first and second derivative stencils; out-of-range samples are 0.
inline cplx at(const Eigen::VectorXcd& v, const Grid2& g, int ix, int iy) {
    if (ix < 0 || iy < 0 || ix >= g.nx || iy >= g.ny) return {0.0, 0.0};
    return v[iy * g.nx + ix];
}

struct Stencil {
    cplx dx, dy, dxx, dyy;
};

Stencil stencil4(const Eigen::VectorXcd& v, const Grid2& g, int ix, int iy) {
    const double hx = g.hx(), hy = g.hy();
    const cplx xm2 = at(v, g, ix - 2, iy), xm1 = at(v, g, ix - 1, iy);
    const cplx xp1 = at(v, g, ix + 1, iy), xp2 = at(v, g, ix + 2, iy);
    const cplx ym2 = at(v, g, ix, iy - 2), ym1 = at(v, g, ix, iy - 1);
    const cplx yp1 = at(v, g, ix, iy + 1), yp2 = at(v, g, ix, iy + 2);
    const cplx c = at(v, g, ix, iy);
    Stencil s;
    s.dx = (-xp2 + 8.0 * xp1 - 8.0 * xm1 + xm2) / (12.0 * hx);
    s.dy = (-yp2 + 8.0 * yp1 - 8.0 * ym1 + ym2) / (12.0 * hy);
    s.dxx = (-xp2 + 16.0 * xp1 - 30.0 * c + 16.0 * xm1 - xm2) / (12.0 * hx * hx);
    s.dyy = (-yp2 + 16.0 * yp1 - 30.0 * c + 16.0 * ym1 - ym2) / (12.0 * hy * hy);
    return s;
}

void require_stencil(const Grid2& g) {
    if (g.nx < 5 || g.ny < 5)
        throw GridTooCoarseError("twisted laplacian: need at least 5 points per axis");
}

}  // namespace

SampledField apply_twisted_laplacian(const SampledField& f) {
    require_stencil(f.grid);
    const Grid2& g = f.grid;
    SampledField out{g, Eigen::VectorXcd(g.size())};
    const cplx I{0.0, 1.0};
    for (int i = 0; i < g.size(); ++i) {
        const int ix = i % g.nx, iy = i / g.nx;
        const Point2 z = g.point(i);
        const Stencil s = stencil4(f.values, g, ix, iy);
        const cplx c = f.values[i];
        out.values[i] = -(s.dxx + s.dyy) + 0.25 * (z.x * z.x + z.y * z.y) * c -
                        I * (z.y * s.dx - z.x * s.dy);
    }
    return out;
}

SampledField apply_twisted_laplacian_twostage(const SampledField& f) {
    require_stencil(f.grid);
    const Grid2& g = f.grid;
    const cplx I{0.0, 1.0};
    // Covariant factors Dx = d/dx + i y/2, Dy = d/dy - i x/2; L = -(Dx^2+Dy^2).
    // The orientation matches the e^{+i cross} convention of the kernels: the
    // ground-state column e^{-|z-w|^2/4} e^{i cross(z,w)} satisfies L u = u
    // only with these signs.
    auto dx_cov = [&](const Eigen::VectorXcd& v) {
        Eigen::VectorXcd out(g.size());
        for (int i = 0; i < g.size(); ++i) {
            const int ix = i % g.nx, iy = i / g.nx;
            out[i] = stencil4(v, g, ix, iy).dx + I * 0.5 * g.point(i).y * v[i];
        }
        return out;
    };
    auto dy_cov = [&](const Eigen::VectorXcd& v) {
        Eigen::VectorXcd out(g.size());
        for (int i = 0; i < g.size(); ++i) {
            const int ix = i % g.nx, iy = i / g.nx;
            out[i] = stencil4(v, g, ix, iy).dy - I * 0.5 * g.point(i).x * v[i];
        }
        return out;
    };
    SampledField out{g, -(dx_cov(dx_cov(f.values)) + dy_cov(dy_cov(f.values)))};
    return out;
}

namespace {

cplx projection_fourier_eps(int mu, Point2 z, Point2 zp, double eps) {
    QuadOptions opt;
    opt.abs_tol = 1e-11;
    opt.rel_tol = 1e-10;
    // refine near the regularized endpoints
    for (double c : {eps, 4.0 * eps, 16.0 * eps, 0.1, 0.5})
        if (c < pi / 2) {
            opt.breakpoints.push_back(c);
            opt.breakpoints.push_back(pi - c);
        }
    const cplx I{0.0, 1.0};
    auto f = [&](double t) {
        return std::exp(I * (mu * t)) * mehler_kernel(t, eps, z, zp);
    };
    return adaptive_integrate(f, 0.0, pi, opt).value / pi;
}

}  // namespace

cplx projection_fourier(int mu, Point2 z, Point2 zp,
                        const std::vector<double>& eps_schedule) {
    if (mu < 1 || mu % 2 == 0)
        throw OutOfRegimeError("projection_fourier: mu must be odd and >= 1");
    std::vector<cplx> vals;
    vals.reserve(eps_schedule.size());
    for (double e : eps_schedule) vals.push_back(projection_fourier_eps(mu, z, zp, e));
    const ExtrapResult ex = neville_to_zero(eps_schedule, vals);
    const double scale = std::max(1.0, std::abs(ex.value));
    if (ex.err_est > 1e-5 * scale)
        throw NonConvergenceError("projection_fourier: extrapolation residual too large");
    return ex.value;
}

double laguerre_scaled(int k, double x) {
    // l_k = L_k(x) e^{-x/2}; recurrence (k+1)L_{k+1} = (2k+1-x)L_k - kL_{k-1}
    double lm = 0.0, l = std::exp(-0.5 * x);
    for (int m = 0; m < k; ++m) {
        const double ln = ((2.0 * m + 1.0 - x) * l - m * lm) / (m + 1.0);
        lm = l;
        l = ln;
    }
    return l;
}

cplx projection_closed(int mu, Point2 z, Point2 zp) {
    if (mu < 1 || mu % 2 == 0)
        throw OutOfRegimeError("projection_closed: mu must be odd and >= 1");
    const int k = (mu - 1) / 2;
    const double r = dist(z, zp);
    const double radial = laguerre_scaled(k, 0.5 * r * r) / (2.0 * pi);
    const double ph = cross_term(z, zp);
    return radial * cplx{std::cos(ph), std::sin(ph)};
}

cplx fit_projection_constant(const std::vector<double>& eps_schedule) {
    // Least squares of route-A values against the unit-constant closed form.
    const std::vector<std::pair<Point2, Point2>> pts = {
        {{0.0, 0.0}, {0.0, 0.0}},  {{0.7, -0.3}, {0.1, 0.4}},
        {{1.2, 0.5}, {-0.6, 0.9}}, {{-1.0, 1.1}, {0.8, -0.2}},
        {{0.3, 2.0}, {-1.4, 0.5}},
    };
    cplx num{0.0, 0.0};
    double den = 0.0;
    for (const auto& [z, zp] : pts) {
        const cplx a = projection_fourier(1, z, zp, eps_schedule);
        const cplx b = projection_closed(1, z, zp) * (2.0 * pi);  // unit constant
        num += a * std::conj(b);
        den += std::norm(b);
    }
    return num / den;
}

double riesz_radial(const RieszSpec& spec, double r) {
    if (spec.lambda > spec.mu_cap)
        throw CapExceededError("riesz_radial: lambda exceeds the eigensum cap");
    const double x = 0.5 * r * r;
    double lm = 0.0, l = std::exp(-0.5 * x);
    double sum = 0.0;
    for (int k = 0;; ++k) {
        const double mu = 2.0 * k + 1.0;
        if (mu >= spec.lambda) break;
        sum += std::pow(1.0 - mu / spec.lambda, spec.delta) * l;
        const double ln = ((2.0 * k + 1.0 - x) * l - k * lm) / (k + 1.0);
        lm = l;
        l = ln;
    }
    return sum / (2.0 * pi);
}

SampledField riesz_apply(const RieszSpec& spec, const SampledField& f) {
    const Grid2& g = f.grid;
    const double h = g.hx();
    const long smax = static_cast<long>(g.nx - 1) * (g.nx - 1) +
                      static_cast<long>(g.ny - 1) * (g.ny - 1);
    std::vector<double> table(static_cast<size_t>(smax) + 1, 0.0);
    for (long s : lattice_squares(g))
        table[s] = riesz_radial(spec, h * std::sqrt(static_cast<double>(s)));
    SampledField out{g, Eigen::VectorXcd::Zero(g.size())};
    const double w = g.weight();
    for (int i = 0; i < g.size(); ++i) {
        const Point2 z = g.point(i);
        const int ixi = i % g.nx, iyi = i / g.nx;
        cplx acc{0.0, 0.0};
        for (int j = 0; j < g.size(); ++j) {
            const int jx = j % g.nx, jy = j / g.nx;
            const long dx = ixi - jx, dy = iyi - jy;
            const Point2 zp = g.point(j);
            const double ph = cross_term(z, zp);
            acc += table[dx * dx + dy * dy] * cplx{std::cos(ph), std::sin(ph)} *
                   f.values[j];
        }
        out.values[i] = w * acc;
    }
    return out;
}

DiscreteOperator projection_operator(int mu, const Grid2& g, bool fourier_route,
                                     const std::vector<double>& eps_schedule) {
    if (fourier_route) {
        return assemble_radial(g, 1.0, [&](double r) {
            // radial part of the Fourier-route kernel (cross term = 0)
            return projection_fourier(mu, {r, 0.0}, {0.0, 0.0}, eps_schedule);
        });
    }
    return assemble_radial(g, 1.0, [&](double r) {
        return projection_closed(mu, {r, 0.0}, {0.0, 0.0});
    });
}

ConvergenceResult convergence_experiment(const SampledField& f, double p,
                                         double delta,
                                         const std::vector<double>& lambda_grid,
                                         int mu_cap) {
    if (!(delta > delta_critical(p)))
        throw OutOfRegimeError(
            "convergence_experiment: delta must exceed the critical index");
    ConvergenceResult res;
    res.lambdas = lambda_grid;
    for (double lam : lambda_grid) {
        RieszSpec spec{lam, delta, mu_cap};
        SampledField sf = riesz_apply(spec, f);
        sf.values -= f.values;
        res.errors.push_back(sf.lp_norm(p));
    }
    res.strictly_decreasing = true;
    for (size_t i = 1; i < res.errors.size(); ++i)
        if (!(res.errors[i] < res.errors[i - 1])) res.strictly_decreasing = false;
    return res;
}

double delta_critical(double p) {
    if (p <= 0.0) throw OutOfRegimeError("delta_critical: p must be positive");
    const double inv = std::isinf(p) ? 0.0 : 1.0 / p;
    return std::max(0.0, 2.0 * std::fabs(0.5 - inv) - 0.5);
}

}  // namespace twisted
