#pragma once

#include <functional>
#include <vector>

#include "twisted/geometry.hpp"

namespace twisted {

// 16-point Gauss-Legendre rule on [-1,1].
extern const double kGauss16Nodes[16];
extern const double kGauss16Weights[16];

struct QuadOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-9;
    int max_panels = 2000000;
    int max_depth = 60;
    // Optional interior breakpoints forced into the initial panelization.
    std::vector<double> breakpoints;
};

struct QuadResult {
    cplx value{0.0, 0.0};
    double err_est = 0.0;
    long panels = 0;
};

// Adaptive Gauss-16 bisection with a certified error estimate: a panel is
// accepted when the two-half refinement agrees with the single-panel value
// within its share of the tolerance; the refined value is kept.
QuadResult adaptive_integrate(const std::function<cplx(double)>& f, double a,
                              double b, const QuadOptions& opt = {});

// Least-squares line fit y ~ intercept + slope*x.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // rms residual
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Neville extrapolation of (x_i, y_i) to x = 0; err_est is the difference
// between the last two extrapolation orders.
struct ExtrapResult {
    cplx value{0.0, 0.0};
    double err_est = 0.0;
};
ExtrapResult neville_to_zero(const std::vector<double>& x,
                             const std::vector<cplx>& y);

}  // namespace twisted
