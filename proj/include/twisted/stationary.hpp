#pragma once

#include "twisted/oscillatory.hpp"

namespace twisted {

// Stationary time of the phase for separation r = |z-z'| < 2:
// sin(S_c) = r/2, S_c in (0, pi/2].
double stationary_time(double r);

struct StationaryData {
    double S_c = 0.0;      // stationary time
    double Phi = 0.0;      // P at the stationary time (S_c + sin S_c cos S_c + cross)
    double d2 = 0.0;       // d2P/dt2 at S_c  (= 2 cos S_c / sin S_c)
    double d2_scaled = 0.0;  // 2^{1+j/2} cos S_c / sin S_c, the zoomed second derivative
};
StationaryData make_stationary(int j, Point2 z, Point2 zp);

// Leading stationary-phase term of [w]^lambda * chi_tilde at (z,z'):
// chi_tilde * (w(S_c)/sin S_c) * sqrt(2 pi/(lambda d2)) * e^{i pi/4} * e^{i lambda Phi}.
cplx leading_term(const Window& w, double lambda, double a, int j, double eps0,
                  double c, Point2 z, Point2 zp);

// Scaled tangency geometry. frakP is the parabolic phase approximant; the
// residuals below are measured in the zoomed coordinates.
double frakP(int j, Point2 z, Point2 zp);

struct ScaledGeometry {
    double S_tilde = 0.0;    // 2^{j/2} (pi/2 - S_c o L_j)
    double frakP_val = 0.0;
    double resid_sqrt = 0.0;  // S_tilde - sqrt(frakP)
    double cubic_ratio = 0.0; // 2^{3j/2}(pi/2 - p o L_j) / frakP^{3/2}, -> 2/3
};
ScaledGeometry scaled_geometry(int j, Point2 z, Point2 zp);

// Reduced phase in zoomed coordinates with the known affine terms removed:
// 2^{3j/2}(p o L_j - pi/2) + cross(z,z'); equals -(2/3) frakP^{3/2} + cross
// up to an O(2^-j) residual.
double phi_star(int j, Point2 z, Point2 zp);

// Carleson-Sjolin model phase phi(z,s) (z in R^2 with z1 > 0, |s| small).
double cs_phase(double z1, double z2, double z1p, double s);

// det M(phi) where M stacks grad_z d_s phi and grad_z d_s^2 phi. The closed
// form is exactly 1/8, independent of the base point.
double cs_determinant_closed(double z1, double z2, double z1p, double s);
double cs_determinant_fd(double z1, double z2, double z1p, double s);

// Same check against the full scaled phase phi_star restricted per the
// Carleson-Sjolin slice (finite differences only); approaches 1/8 as j grows.
double cs_determinant_full_fd(int j, double z1, double z2, double z1p, double s);

}  // namespace twisted
