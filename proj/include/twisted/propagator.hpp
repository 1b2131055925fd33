#pragma once

#include "twisted/geometry.hpp"

namespace twisted {

// Normalization of the propagator kernel: the free-particle small-time limit
// fixes c = 1/(4*pi*i).
inline const cplx kMehlerC{0.0, -1.0 / (4.0 * pi)};
inline const char* kNormalizationTag = "c=1/(4*pi*i)";

// Phase P(t,z,z') = t + |z-z'|^2 cos t/(4 sin t) + (z2 z1' - z1 z2')/2.
double phase_P(double t, Point2 z, Point2 zp);
cplx phase_P(cplx t, Point2 z, Point2 zp);

// dP/dt = 1 - |z-z'|^2/(4 sin^2 t).
double dphase_dt(double t, Point2 z, Point2 zp);

// d2P/dt2 = |z-z'|^2 cos t/(2 sin^3 t).
double d2phase_dt2(double t, Point2 z, Point2 zp);

// |dP/dt| / |(2-r)(2+r) - 4 cos^2 t|; the two vanish together, and the ratio
// extends continuously as 1/(4 sin^2 t).
double comparability_ratio(double t, Point2 z, Point2 zp);

// Propagator kernel c (sin w)^-1 exp(i(P(w,z,z')-w)) at complex time
// w = t - i*eps; eps = 0 is allowed away from the singular times.
cplx mehler_kernel(double t, double eps, Point2 z, Point2 zp);

// Residual of the exact symmetry P(pi-t, Lz, Lz') + P(t,z,z') - pi.
double phase_symmetry_residual(double t, Point2 z, Point2 zp);

}  // namespace twisted
