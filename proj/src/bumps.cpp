#include "twisted/bumps.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "twisted/errors.hpp"
#include "twisted/geometry.hpp"

namespace twisted {

double smooth_step(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / x);
    const double b = std::exp(-1.0 / (1.0 - x));
    return a / (a + b);
}

double plateau_bump(double t, double inner, double outer) {
    const double a = std::fabs(t);
    if (a >= outer) return 0.0;
    if (a <= inner) return 1.0;
    return smooth_step((outer - a) / (outer - inner));
}

double seed_zeta(double t) {
    if (t <= 0.25 || t >= 1.0) return 0.0;
    return std::exp(-1.0 / ((t - 0.25) * (1.0 - t)));
}

double psi(double t) {
    if (t <= 0.25 || t >= 1.0) return 0.0;
    // 2^k t can land in (1/4,1) only for k in {-1,0,1} when t is there itself.
    double denom = 0.0;
    for (int k = -1; k <= 1; ++k) denom += seed_zeta(std::ldexp(t, k));
    return seed_zeta(t) / denom;
}

double psi_dyadic_sum(double t, int lmin, int lmax) {
    double s = 0.0;
    for (int l = lmin; l <= lmax; ++l) s += psi(std::ldexp(t, l));
    return s;
}

double psi_ell_delta(int ell, double delta, double t) {
    if (ell < 0) throw OutOfRegimeError("psi_ell_delta: ell must be >= 0");
    if (ell >= 1) {
        const double s = std::ldexp(t, -ell);
        if (s <= 0.25 || s >= 1.0) return 0.0;
        return std::pow(s, delta) * psi(s);
    }
    if (t <= 0.0 || t >= 1.0) return 0.0;
    double tail = 0.0;
    for (int k = 0;; ++k) {
        const double s = std::ldexp(t, k);
        if (s >= 1.0) break;
        tail += psi(s);
    }
    return std::pow(t, delta) * tail;
}

namespace {
constexpr double kEtaInner = 0.015625;  // 2^-6
constexpr double kEtaOuter = 0.03125;   // 2^-5
}  // namespace

double eta0(double t) { return plateau_bump(t, kEtaInner, kEtaOuter); }

double eta1(double t) {
    if (t <= kEtaInner || t >= pi - kEtaInner) return 0.0;
    return 1.0 - eta0(t) - eta0(t - pi);
}

double theta_unit(double x) {
    return smooth_step(x + 1.0) - smooth_step(x);
}

double rho_plateau(double t) { return plateau_bump(t, 1.0, 2.0); }

double eta_ring(double rho, double t) {
    if (rho <= 0.0) throw OutOfRegimeError("eta_ring: rho must be positive");
    return psi(std::fabs(t) / rho);
}

double eta_ring_l1(double rho) {
    // Gauss-Legendre on the two rings; profile is psi(|t|/rho) >= 0.
    // 64 midpoint panels per ring is ample for a smooth bump.
    const int n = 512;
    const double lo = 0.25 * rho, hi = rho;
    const double h = (hi - lo) / n;
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += psi((lo + (i + 0.5) * h) / rho);
    return 2.0 * s * h;
}

int j0_for_lambda(double lambda) {
    if (lambda <= 0.0) throw OutOfRegimeError("j0_for_lambda: lambda must be positive");
    return static_cast<int>(std::floor((2.0 / 3.0) * std::log2(lambda)));
}

double ChiSplit::total() const {
    double s = chi_ring + chi_ext;
    for (double v : chi) s += v;
    return s;
}

ChiSplit chi_split(int j_max, double r) {
    ChiSplit out;
    out.chi.resize(static_cast<size_t>(j_max) + 1, 0.0);
    const double g = 2.0 - r;
    for (int j = 0; j <= j_max; ++j) out.chi[j] = psi(std::ldexp(g, j - 2));
    double ring = 0.0;
    if (g > 0.0) {
        for (int j = j_max + 1;; ++j) {
            const double arg = std::ldexp(g, j - 2);
            if (arg >= 1.0) break;
            ring += psi(arg);
            if (j > j_max + 4096) break;
        }
    }
    out.chi_ring = ring;
    out.chi_ext = 1.0 - ring;
    for (double v : out.chi) out.chi_ext -= v;
    return out;
}

double chi_tilde(double a, int j, double eps0, double c, double r) {
    const double gap = 2.0 - a;
    const double lo = std::ldexp(1.0, -j), hi = std::ldexp(1.0, 2 - j);
    if (!(gap > lo && gap < hi))
        throw OutOfRegimeError("chi_tilde: 2-a must lie in (2^-j, 2^(2-j))");
    const double s = c * eps0 * std::ldexp(1.0, -j);
    return psi(std::ldexp(2.0 - r, j - 2)) * theta_unit((a - r) / s);
}

std::vector<double> chi_tilde_centers(int j, double eps0, double c) {
    const double s = c * eps0 * std::ldexp(1.0, -j);
    const double lo = std::ldexp(1.0, -j), hi = std::ldexp(1.0, 2 - j);
    // Cover r in [2-hi, 2-lo] by a_m = 2 - m*s with one extra translate on
    // each side so the theta telescope closes over the whole annulus.
    const int m0 = static_cast<int>(std::floor(lo / s)) - 1;
    const int m1 = static_cast<int>(std::ceil(hi / s)) + 1;
    std::vector<double> centers;
    centers.reserve(m1 - m0 + 1);
    for (int m = m0; m <= m1; ++m) centers.push_back(2.0 - m * s);
    return centers;
}

double AngularCaps::angle(int idx) const { return spacing * idx; }

AngularCaps make_angular_caps(int j, double eps0) {
    AngularCaps caps;
    caps.j = j;
    caps.eps0 = eps0;
    const double sep = eps0 * std::sqrt(std::ldexp(1.0, -j));
    caps.count = std::max(4, static_cast<int>(std::ceil(2.0 * pi / sep)));
    caps.spacing = 2.0 * pi / caps.count;
    return caps;
}

double angular_bump(const AngularCaps& caps, int idx, double omega_angle) {
    double d = omega_angle - caps.angle(idx);
    d -= 2.0 * pi * std::round(d / (2.0 * pi));
    return theta_unit(d / caps.spacing);
}

double vartheta(double x, double y) { return theta_unit(x) * theta_unit(y); }

std::string CutoffDescription::to_json() const {
    std::ostringstream os;
    os.precision(17);
    os << "{\"family\":\"" << family << "\"";
    for (const auto& [k, v] : params) os << ",\"" << k << "\":" << v;
    os << "}";
    return os.str();
}

}  // namespace twisted
