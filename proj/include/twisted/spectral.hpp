#pragma once

#include <vector>

#include "twisted/grid.hpp"
#include "twisted/operator_lab.hpp"

namespace twisted {

// Twisted Laplacian in expanded form, -Lap + |z|^2/4 - i(y d/dx - x d/dy),
// applied by 4th-order centered differences; fields are taken to vanish
// outside the grid. Throws GridTooCoarseError below the stencil width.
SampledField apply_twisted_laplacian(const SampledField& f);

// Same operator assembled as two successive applications of the covariant
// first-order factors; used to validate the expanded stencil.
SampledField apply_twisted_laplacian_twostage(const SampledField& f);

inline const std::vector<double> kDefaultEpsSchedule{1e-2, 5e-3, 2.5e-3, 1.25e-3};

// Spectral projection kernel via the regularized Fourier route:
// (1/pi) int_0^pi exp(i mu t) K(t - i eps) dt, Richardson-extrapolated in eps.
cplx projection_fourier(int mu, Point2 z, Point2 zp,
                        const std::vector<double>& eps_schedule = kDefaultEpsSchedule);

// Closed Laguerre form (1/2pi) L_k(r^2/2) exp(-r^2/4) exp(i cross), mu = 2k+1.
cplx projection_closed(int mu, Point2 z, Point2 zp);

// Scaled Laguerre values L_k(x) exp(-x/2), overflow-free recurrence.
double laguerre_scaled(int k, double x);

// Fit of the closed-form constant against the Fourier route at mu=1 over a
// fixed point set; should agree with 1/(2 pi) (see tests).
cplx fit_projection_constant(const std::vector<double>& eps_schedule = kDefaultEpsSchedule);

struct RieszSpec {
    double lambda = 33.0;
    double delta = 0.5;
    int mu_cap = 129;  // eigensum route cap
};

// Radial profile of the Riesz mean kernel at separation r (without the
// cross-term phase): sum over mu < lambda of (1-mu/lambda)^delta Pi_mu.
double riesz_radial(const RieszSpec& spec, double r);

// Apply the Riesz mean to a field, matrix-free over the lattice table.
SampledField riesz_apply(const RieszSpec& spec, const SampledField& f);

// Pi_mu as a dense operator on the grid (route: "closed" or "fourier").
DiscreteOperator projection_operator(int mu, const Grid2& g, bool fourier_route,
                                     const std::vector<double>& eps_schedule = kDefaultEpsSchedule);

// Convergence experiment: errors ||S^delta_lambda f - f||_p over lambda_grid.
struct ConvergenceResult {
    std::vector<double> lambdas;
    std::vector<double> errors;
    bool strictly_decreasing = false;
};
ConvergenceResult convergence_experiment(const SampledField& f, double p,
                                         double delta,
                                         const std::vector<double>& lambda_grid,
                                         int mu_cap = 129);

// Critical Bochner-Riesz index for n=2: max(0, 2|1/2-1/p| - 1/2).
double delta_critical(double p);

}  // namespace twisted
