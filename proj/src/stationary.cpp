#include "twisted/stationary.hpp"

#include <cmath>

#include "twisted/bumps.hpp"
#include "twisted/errors.hpp"
#include "twisted/propagator.hpp"

namespace twisted {

double stationary_time(double r) {
    if (!(r > 0.0 && r <= 2.0))
        throw OutOfRegimeError("stationary_time: need 0 < r <= 2");
    return std::asin(0.5 * r);
}

StationaryData make_stationary(int j, Point2 z, Point2 zp) {
    const double r = dist(z, zp);
    StationaryData d;
    d.S_c = stationary_time(r);
    const double s = std::sin(d.S_c), c = std::cos(d.S_c);
    d.Phi = d.S_c + s * c + cross_term(z, zp);
    d.d2 = 2.0 * c / s;
    d.d2_scaled = std::ldexp(1.0, 1) * std::sqrt(std::ldexp(1.0, j)) * c / s;
    return d;
}

cplx leading_term(const Window& w, double lambda, double a, int j, double eps0,
                  double c, Point2 z, Point2 zp) {
    const double r = dist(z, zp);
    const double cut = chi_tilde(a, j, eps0, c, r);
    if (cut == 0.0) return {0.0, 0.0};
    const StationaryData sd = make_stationary(j, z, zp);
    const cplx amp = w.eval(sd.S_c) / std::sin(sd.S_c);
    const double gauss = std::sqrt(2.0 * pi / (lambda * sd.d2));
    const cplx I{0.0, 1.0};
    return cut * amp * gauss * std::exp(I * (lambda * sd.Phi + 0.25 * pi));
}

double frakP(int j, Point2 z, Point2 zp) {
    const double dy = z.y - zp.y;
    return zp.x - z.x - dy * dy / (2.0 * (2.0 + std::ldexp(z.x - zp.x, -j)));
}

ScaledGeometry scaled_geometry(int j, Point2 z, Point2 zp) {
    const ScaledPair sp = scale_map_Lj(j, z, zp);
    const double r = dist(sp.z, sp.zp);
    const double sc = stationary_time(r);
    const double half = std::sqrt(std::ldexp(1.0, j));  // 2^{j/2}
    ScaledGeometry g;
    g.S_tilde = half * (0.5 * pi - sc);
    g.frakP_val = frakP(j, z, zp);
    if (g.frakP_val <= 0.0)
        throw OutOfRegimeError("scaled_geometry: frakP must be positive on U");
    g.resid_sqrt = g.S_tilde - std::sqrt(g.frakP_val);
    const double p = sc + std::sin(sc) * std::cos(sc);
    g.cubic_ratio = half * half * half * (0.5 * pi - p) /
                    std::pow(g.frakP_val, 1.5);
    return g;
}

double phi_star(int j, Point2 z, Point2 zp) {
    const ScaledPair sp = scale_map_Lj(j, z, zp);
    const double r = dist(sp.z, sp.zp);
    const double sc = stationary_time(r);
    const double p = sc + std::sin(sc) * std::cos(sc);
    const double cube = std::pow(std::sqrt(std::ldexp(1.0, j)), 3);
    return cube * (p - 0.5 * pi) + cross_term(z, zp);
}

double cs_phase(double z1, double z2, double z1p, double s) {
    if (!(z1 > 0.0)) throw OutOfRegimeError("cs_phase: need z1 > 0");
    const double rt = std::sqrt(z1);
    return 0.25 * (-s * (2.0 * (z1p - z1) + 2.0 * rt * z2) + s * s * rt);
}

double cs_determinant_closed(double z1, double z2, double z1p, double s) {
    (void)z1p;
    const double rt = std::sqrt(z1);
    // rows of M: grad_z d_s phi and grad_z d_s^2 phi
    const double a = 0.25 * (2.0 - z2 / rt + s / rt);
    const double b = 0.25 * (-2.0 * rt);
    const double c = 0.25 / rt;
    const double d = 0.0;
    return a * d - b * c;
}

namespace {

template <typename F>
double mixed_fd_ds(F&& f, double h) {
    // d/ds via 4th-order central difference of a single-variable function
    return (-f(2.0 * h) + 8.0 * f(h) - 8.0 * f(-h) + f(-2.0 * h)) / (12.0 * h);
}

template <typename F>
double fd_ds2(F&& f, double h) {
    return (-f(2.0 * h) + 16.0 * f(h) - 30.0 * f(0.0) + 16.0 * f(-h) -
            f(-2.0 * h)) /
           (12.0 * h * h);
}

}  // namespace

double cs_determinant_fd(double z1, double z2, double z1p, double s) {
    // The phase is quadratic in s, so central s-differences with a wide step
    // are exact; nesting small-step differences would amplify rounding.
    const double k = 0.5;
    auto ds = [&](double a1, double a2) {
        return (cs_phase(a1, a2, z1p, s + k) - cs_phase(a1, a2, z1p, s - k)) /
               (2.0 * k);
    };
    auto ds2 = [&](double a1, double a2) {
        return (cs_phase(a1, a2, z1p, s + k) - 2.0 * cs_phase(a1, a2, z1p, s) +
                cs_phase(a1, a2, z1p, s - k)) /
               (k * k);
    };
    const double h = 2e-3;
    auto gradx = [&](auto&& g) {
        return (-g(z1 + 2.0 * h, z2) + 8.0 * g(z1 + h, z2) - 8.0 * g(z1 - h, z2) +
                g(z1 - 2.0 * h, z2)) /
               (12.0 * h);
    };
    auto grady = [&](auto&& g) {
        return (-g(z1, z2 + 2.0 * h) + 8.0 * g(z1, z2 + h) - 8.0 * g(z1, z2 - h) +
                g(z1, z2 - 2.0 * h)) /
               (12.0 * h);
    };
    const double a = gradx(ds), b = grady(ds);
    const double c = gradx(ds2), d = grady(ds2);
    return a * d - b * c;
}

double cs_determinant_full_fd(int j, double z1, double z2, double z1p, double s) {
    // Carleson-Sjolin slice of the scaled phase: F(z1,z2,s) =
    // phi_star at ((z1p - z1, z2), (z1p, s)).
    auto F = [&](double a1, double a2, double as) {
        return phi_star(j, {z1p - a1, a2}, {z1p, as});
    };
    const double h = 1e-3;
    auto ds = [&](double a1, double a2) {
        return mixed_fd_ds([&](double d_) { return F(a1, a2, s + d_); }, h);
    };
    auto ds2 = [&](double a1, double a2) {
        return fd_ds2([&](double d_) { return F(a1, a2, s + d_); }, h);
    };
    auto gradx = [&](auto&& g) {
        return (-g(z1 + 2.0 * h, z2) + 8.0 * g(z1 + h, z2) - 8.0 * g(z1 - h, z2) +
                g(z1 - 2.0 * h, z2)) /
               (12.0 * h);
    };
    auto grady = [&](auto&& g) {
        return (-g(z1, z2 + 2.0 * h) + 8.0 * g(z1, z2 + h) - 8.0 * g(z1, z2 - h) +
                g(z1, z2 - 2.0 * h)) /
               (12.0 * h);
    };
    const double a = gradx(ds), b = grady(ds);
    const double c = gradx(ds2), d = grady(ds2);
    return a * d - b * c;
}

}  // namespace twisted
