#pragma once

#include <string>
#include <vector>

#include "twisted/operator_lab.hpp"

namespace twisted {

// Temporal window entering an oscillatory kernel integral. `lo`/`hi` bound the
// support hull; `feature_scale` is the smallest length scale on which the
// window varies (used for panel sizing in the shared-node fast path).
struct Window {
    std::function<cplx(double)> eval;
    double lo = 0.0, hi = 0.0;
    double feature_scale = 0.02;
    std::string label;
    // Disjoint support intervals; defaults to the hull when empty.
    std::vector<std::pair<double, double>> segments;
    std::vector<std::pair<double, double>> support() const {
        if (!segments.empty()) return segments;
        return {{lo, hi}};
    }
};

// hat(psi_ell^delta)(t) = int psi_ell^delta(s) exp(-i s t) ds, computed by
// quadrature and cached on a uniform 1e-3 grid over |t| <= 24 (cubic local
// interpolation; the tail beyond is below 1e-12 for ell >= 1 and truncated).
cplx hat_psi_ell_delta(int ell, double delta, double t);

Window window_bump(double center, double halfwidth, const std::string& label = "bump");
Window window_eta_ring(double rho);
Window window_eta1();
Window window_interior();  // plateau on [pi/4, 3pi/4], 1 on the middle half
// eta0(t) * hat(psi_ell^delta)(t - n*pi): short-time tile window.
Window window_eta0_hatpsi(int ell, double delta, int n_shift);

// Oscillatory kernel [w]^lambda(z,z') = int w(t) (sin t)^-1 e^{i lambda P} dt.
// eps > 0 evaluates at complex time t - i*eps (required when the support
// meets a multiple of pi). The error estimate is certified against
// 1e-9 * (1 + |result|); BudgetExceededError otherwise.
cplx bracket_kernel(const Window& w, double lambda, Point2 z, Point2 zp,
                    double eps = 0.0);

// Radial table of [w]^lambda at the lattice separations of g (cross phase
// excluded), sharing quadrature nodes across all separations. table[s] is the
// value at r = h*sqrt(s).
std::vector<cplx> bracket_radial_table(const Window& w, double lambda,
                                       const Grid2& g, double eps = 0.0);

// Dense operator for [w]^lambda on g (kernel = e^{i lambda cross} * radial).
DiscreteOperator bracket_operator(const Window& w, double lambda,
                                  const Grid2& g, double eps = 0.0);

// Dyadic decomposition piece: time window eta1 * psi(2^l |pi/2 - t|),
// spatial factor chi piece j (or the ring/exterior complement).
Window window_eta1_timepiece(int l);

// Decay envelopes with empirical-constant-free shapes (checked up to a
// lambda-stable constant in the tests).
double envelope_bl(int l, int j, double lambda, int N);
double envelope_Kj(int l, int j, double lambda, double r, int N);
double envelope_exterior(double lambda, double r, int N);

// Near/far split of an assembled operator over the unit-scale tiling.
struct TilingSplit {
    DiscreteOperator near_part;
    DiscreteOperator far_part;
    int neighbor_count = 0;  // tiles adjacent to a fixed tile (excl. itself)
};
TilingSplit tiling_split(const DiscreteOperator& T, double tile_side = 0.5);

}  // namespace twisted
