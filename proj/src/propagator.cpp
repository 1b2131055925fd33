#include "twisted/propagator.hpp"

#include <cmath>

#include "twisted/errors.hpp"

namespace twisted {

namespace {
constexpr double kSinFloor = 1e-14;
}

double phase_P(double t, Point2 z, Point2 zp) {
    const double s = std::sin(t);
    if (std::fabs(s) < kSinFloor)
        throw SingularTimeError("phase_P: t too close to a multiple of pi");
    const double r = dist(z, zp);
    return t + r * r * std::cos(t) / (4.0 * s) + cross_term(z, zp);
}

cplx phase_P(cplx t, Point2 z, Point2 zp) {
    const cplx s = std::sin(t);
    if (std::abs(s) < kSinFloor)
        throw SingularTimeError("phase_P: complex t too close to a multiple of pi");
    const double r = dist(z, zp);
    return t + r * r * std::cos(t) / (4.0 * s) + cross_term(z, zp);
}

double dphase_dt(double t, Point2 z, Point2 zp) {
    const double s = std::sin(t);
    if (std::fabs(s) < kSinFloor)
        throw SingularTimeError("dphase_dt: t too close to a multiple of pi");
    const double r = dist(z, zp);
    return 1.0 - r * r / (4.0 * s * s);
}

double d2phase_dt2(double t, Point2 z, Point2 zp) {
    const double s = std::sin(t);
    if (std::fabs(s) < kSinFloor)
        throw SingularTimeError("d2phase_dt2: t too close to a multiple of pi");
    const double r = dist(z, zp);
    return r * r * std::cos(t) / (2.0 * s * s * s);
}

double comparability_ratio(double t, Point2 z, Point2 zp) {
    const double s = std::sin(t);
    if (std::fabs(s) < kSinFloor)
        throw SingularTimeError("comparability_ratio: singular time");
    const double r = dist(z, zp);
    const double num = std::fabs(1.0 - r * r / (4.0 * s * s));
    const double den = std::fabs((2.0 - r) * (2.0 + r) - 4.0 * std::cos(t) * std::cos(t));
    if (den < 1e-12) {
        // Both factors vanish on the stationary set; the ratio extends as
        // 1/(4 sin^2 t).
        return 1.0 / (4.0 * s * s);
    }
    return num / den;
}

cplx mehler_kernel(double t, double eps, Point2 z, Point2 zp) {
    const cplx w{t, -eps};
    const cplx s = std::sin(w);
    if (std::abs(s) < kSinFloor)
        throw SingularTimeError("mehler_kernel: singular time; pass eps > 0");
    const double r = dist(z, zp);
    // P(w) - w = r^2 cot(w)/4 + cross term, computed directly for stability.
    const cplx expo = cplx{0.0, 1.0} *
                      (r * r * std::cos(w) / (4.0 * s) + cross_term(z, zp));
    return kMehlerC / s * std::exp(expo);
}

double phase_symmetry_residual(double t, Point2 z, Point2 zp) {
    const double lhs = phase_P(pi - t, sym_rotate(z), sym_rotate(zp));
    return lhs + phase_P(t, z, zp) - pi;
}

}  // namespace twisted
