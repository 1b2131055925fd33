#pragma once

#include <string>
#include <vector>

namespace twisted {

// Smooth step: 0 for x<=0, 1 for x>=1, C^inf monotone in between.
double smooth_step(double x);

// Even C_c^inf bump: 1 on [-inner,inner], supported in (-outer,outer).
double plateau_bump(double t, double inner, double outer);

// Seed bump exp(-1/((t-1/4)(1-t))) on (1/4,1), zero outside.
double seed_zeta(double t);

// psi in C_c^inf([1/4,1]): seed normalized so sum_l psi(2^l t) = 1 for t>0.
double psi(double t);

// sum over l in [lmin,lmax] of psi(2^l t); diagnostic for the partition test.
double psi_dyadic_sum(double t, int lmin, int lmax);

// psi_l^delta: for l>=1, (2^-l t)^delta psi(2^-l t); for l=0 the tail piece
// t_+^delta sum_{k>=0} psi(2^k t) supported in (0,1].
double psi_ell_delta(int ell, double delta, double t);

// Temporal partition near the conjugate times: eta0 even, supported in
// (-2^-5,2^-5), equal to 1 on [-2^-6,2^-6]; eta1 = 1 - eta0 - eta0(.-pi),
// restricted to [0,pi] so that it is supported in (2^-6, pi-2^-6).
double eta0(double t);
double eta1(double t);

// Telescoped unit bump: supp(theta) in (-1,1), sum_m theta(x-m) = 1.
double theta_unit(double x);

// rho: 1 on [-1,1], supported in (-2,2).
double rho_plateau(double t);

// Ring profile for the short-time windows: even, supported in
// [rho/4,rho] u [-rho,-rho/4], with m-th derivative O(rho^-m).
double eta_ring(double rho, double t);
double eta_ring_l1(double rho);  // integral of |eta_ring|

// j0 = floor(log2(lambda^(2/3))), the tangential cutoff index.
int j0_for_lambda(double lambda);

// chi_j(z,z') = psi(2^(j-2)(2-|z-z'|)) for 0<=j<=j_max, the over-j0 ring sum
// chi_ring, and the exact complement chi_ext.
struct ChiSplit {
    std::vector<double> chi;  // chi[j], j = 0..j_max
    double chi_ring = 0.0;
    double chi_ext = 0.0;
    double total() const;
};
ChiSplit chi_split(int j_max, double r);

// Refined tangential cutoff psi(2^(j-2)(2-r)) * theta((a-r)/(c*eps0*2^-j));
// the radial factor matches the chi_split piece of the same index, so the
// admissible centers satisfy 2-a in (2^-j, 2^(2-j)).
double chi_tilde(double a, int j, double eps0, double c, double r);

// Centers a_m = 2 - m*c*eps0*2^-j whose theta-translates cover the support of
// psi(2^(j-2)(2-.)); summing chi_tilde over them reproduces psi(2^(j-2)(2-r)).
std::vector<double> chi_tilde_centers(int j, double eps0, double c);

// Angular caps: equally spaced directions on the circle with spacing 2*pi/N,
// N = ceil(2*pi/(eps0*2^(-j/2))) so the spacing never exceeds eps0*2^(-j/2),
// and a telescoped partition of unity in the angle so that the caps sum to 1
// on the circle.
struct AngularCaps {
    int j = 0;
    double eps0 = 0.0;
    int count = 0;
    double spacing = 0.0;  // angular step, <= eps0*2^(-j/2)
    double angle(int idx) const;
};
AngularCaps make_angular_caps(int j, double eps0);
double angular_bump(const AngularCaps& caps, int idx, double omega_angle);

// 2D lattice bump in C_c^inf((-1,1)^2) with sum over integer translates 1.
double vartheta(double x, double y);

// Serializable description of one cutoff family instance.
struct CutoffDescription {
    std::string family;
    std::vector<std::pair<std::string, double>> params;
    std::string to_json() const;
};

}  // namespace twisted
