#include "twisted/oscillatory.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "twisted/bumps.hpp"
#include "twisted/errors.hpp"
#include "twisted/propagator.hpp"
#include "twisted/quadrature.hpp"

namespace twisted {

namespace {

constexpr double kHatPsiRange = 24.0;
constexpr double kHatPsiStep = 1e-3;

struct HatPsiTable {
    std::vector<cplx> v;  // values on [-range, range] with step kHatPsiStep
    cplx at(double t) const {
        const double x = (t + kHatPsiRange) / kHatPsiStep;
        if (x < 1.0 || x > static_cast<double>(v.size() - 3)) return {0.0, 0.0};
        const long i = static_cast<long>(std::floor(x));
        const double f = x - i;
        // 4-point cubic (Lagrange) interpolation
        const cplx a = v[i - 1], b = v[i], c = v[i + 1], d = v[i + 2];
        return b + f * ((c - a) / 2.0 +
                        f * ((a - 2.0 * b + c) / 2.0 +
                             f * ((d - a) / 6.0 + (b - c) / 2.0)));
    }
};

const HatPsiTable& hat_psi_table(int ell, double delta) {
    static std::map<std::pair<int, long long>, HatPsiTable> cache;
    const auto key = std::make_pair(ell, static_cast<long long>(delta * (1 << 24)));
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    HatPsiTable tab;
    const long n = 2 * static_cast<long>(kHatPsiRange / kHatPsiStep) + 1;
    tab.v.resize(n);
    const double s_lo = (ell >= 1) ? std::ldexp(1.0, ell - 2) : 0.0;
    const double s_hi = std::ldexp(1.0, std::max(ell, 0));
    QuadOptions opt;
    opt.abs_tol = 1e-13;
    opt.rel_tol = 1e-12;
    const cplx I{0.0, 1.0};
    for (long k = 0; k < n; ++k) {
        const double t = -kHatPsiRange + k * kHatPsiStep;
        auto f = [&](double s) {
            return psi_ell_delta(ell, delta, s) * std::exp(-I * (s * t));
        };
        tab.v[k] = adaptive_integrate(f, s_lo, s_hi, opt).value;
    }
    return cache.emplace(key, std::move(tab)).first->second;
}

}  // namespace

cplx hat_psi_ell_delta(int ell, double delta, double t) {
    return hat_psi_table(ell, delta).at(t);
}

Window window_bump(double center, double halfwidth, const std::string& label) {
    Window w;
    w.eval = [=](double t) -> cplx {
        return plateau_bump(t - center, 0.5 * halfwidth, halfwidth);
    };
    w.lo = center - halfwidth;
    w.hi = center + halfwidth;
    w.feature_scale = 0.25 * halfwidth;
    w.label = label;
    return w;
}

Window window_eta_ring(double rho) {
    Window w;
    w.eval = [=](double t) -> cplx { return eta_ring(rho, t); };
    w.lo = -rho;
    w.hi = rho;
    w.feature_scale = 0.05 * rho;
    w.label = "eta_ring";
    w.segments = {{-rho, -0.25 * rho}, {0.25 * rho, rho}};
    return w;
}

Window window_eta1() {
    Window w;
    w.eval = [](double t) -> cplx { return eta1(t); };
    w.lo = 0.015;
    w.hi = pi - 0.015;
    w.feature_scale = 0.003;
    w.label = "eta1";
    return w;
}

Window window_interior() {
    Window w;
    w.eval = [](double t) -> cplx {
        return plateau_bump(t - 0.5 * pi, 0.125 * pi, 0.25 * pi);
    };
    w.lo = 0.25 * pi;
    w.hi = 0.75 * pi;
    w.feature_scale = 0.05;
    w.label = "interior";
    return w;
}

Window window_eta0_hatpsi(int ell, double delta, int n_shift) {
    Window w;
    const double shift = n_shift * pi;
    w.eval = [=](double t) -> cplx {
        const double e = eta0(t);
        if (e == 0.0) return {0.0, 0.0};
        return e * hat_psi_ell_delta(ell, delta, t - shift);
    };
    w.lo = -0.03125;
    w.hi = 0.03125;
    w.feature_scale = std::min(0.004, 0.5 * std::ldexp(1.0, -ell));
    w.label = "eta0_hatpsi";
    return w;
}

Window window_eta1_timepiece(int l) {
    Window w;
    w.eval = [=](double t) -> cplx {
        return eta1(t) * psi(std::ldexp(std::fabs(0.5 * pi - t), l));
    };
    w.lo = 0.015;
    w.hi = pi - 0.015;
    w.feature_scale = std::min(0.003, 0.1 * std::ldexp(1.0, -l));
    w.label = "eta1_timepiece";
    return w;
}

namespace {

// Integrand of [w]^lambda at complex time t - i*eps, cross term excluded
// (it is a t-independent unimodular factor handled by the caller).
cplx bracket_integrand(const Window& w, double lambda, double r2, double t,
                       double eps) {
    const cplx val = w.eval(t);
    if (val == cplx{0.0, 0.0}) return {0.0, 0.0};
    const cplx wt{t, -eps};
    const cplx s = std::sin(wt);
    const cplx I{0.0, 1.0};
    const cplx phase = I * lambda * (wt + r2 * std::cos(wt) / (4.0 * s));
    return val / s * std::exp(phase);
}

bool meets_singularity(const Window& w, double eps) {
    if (eps > 0.0) return false;
    for (const auto& [a, b] : w.support()) {
        const int k0 = static_cast<int>(std::floor(a / pi)) - 1;
        const int k1 = static_cast<int>(std::ceil(b / pi)) + 1;
        for (int k = k0; k <= k1; ++k) {
            const double s = k * pi;
            if (s > a - 1e-9 && s < b + 1e-9) return true;
        }
    }
    return false;
}

}  // namespace

cplx bracket_kernel(const Window& w, double lambda, Point2 z, Point2 zp,
                    double eps) {
    if (meets_singularity(w, eps))
        throw SingularTimeError(
            "bracket_kernel: window meets a multiple of pi; pass eps > 0");
    const double r = dist(z, zp);
    const double r2 = r * r;
    QuadOptions opt;
    opt.abs_tol = 1e-12;
    opt.rel_tol = 1e-10;
    // Pre-split: window features and a dyadic refinement toward any nearby
    // singular time so the first error estimates are already trustworthy.
    const int k0 = static_cast<int>(std::floor(w.lo / pi));
    const int k1 = static_cast<int>(std::ceil(w.hi / pi));
    for (int k = k0; k <= k1; ++k) {
        const double s = k * pi;
        for (double d = 1.0; d >= std::max(eps * 0.5, 1e-8); d *= 0.25) {
            opt.breakpoints.push_back(s - d);
            opt.breakpoints.push_back(s + d);
        }
    }
    const double step = std::max(w.feature_scale,
                                 (w.hi - w.lo) / 4096.0);
    for (double t = w.lo; t < w.hi; t += step) opt.breakpoints.push_back(t);
    auto f = [&](double t) { return bracket_integrand(w, lambda, r2, t, eps); };
    QuadResult q;
    for (const auto& [a, b] : w.support()) {
        const QuadResult part = adaptive_integrate(f, a, b, opt);
        q.value += part.value;
        q.err_est += part.err_est;
        q.panels += part.panels;
    }
    if (q.err_est > 1e-9 * (1.0 + std::abs(q.value)))
        throw BudgetExceededError("bracket_kernel: certified tolerance not met");
    const double ph = lambda * cross_term(z, zp);
    return q.value * cplx{std::cos(ph), std::sin(ph)};
}

namespace {

struct PanelNode {
    double t;
    cplx amp;  // weight * window(t) / sin(t-i eps) * e^{i lambda (t-i eps)}
    cplx u;    // cot(t - i eps)
};

// Recursive panel construction sized for the worst separation r_max, with the
// phase budget relaxed inside regions where the complex-time damping already
// kills every separation above a negligible radius.
void build_panels(const Window& w, double lambda, double r_max2, double eps,
                  double a, double b, int depth, std::vector<PanelNode>& nodes) {
    const double mid = 0.5 * (a + b);
    double rate = 1.0;
    for (double t : {a, mid, b}) {
        const cplx u = std::cos(cplx{t, -eps}) / std::sin(cplx{t, -eps});
        const double im = std::max(0.0, std::imag(u));  // damping rate per r^2
        double reff2 = r_max2;
        if (eps > 0.0 && im > 0.0)
            reff2 = std::min(r_max2, 140.0 / (0.25 * lambda * im));
        rate = std::max(rate, 1.0 + 0.25 * reff2 * std::abs(1.0 + u * u));
    }
    const double width = b - a;
    const bool ok = lambda * rate * width <= 6.0 && width <= 0.5 * w.feature_scale;
    if (!ok && depth < 48 && width > 1e-12) {
        build_panels(w, lambda, r_max2, eps, a, mid, depth + 1, nodes);
        build_panels(w, lambda, r_max2, eps, mid, b, depth + 1, nodes);
        return;
    }
    const double half = 0.5 * width;
    const cplx I{0.0, 1.0};
    for (int i = 0; i < 16; ++i) {
        const double t = mid + half * kGauss16Nodes[i];
        const cplx val = w.eval(t);
        if (val == cplx{0.0, 0.0}) continue;
        const cplx wt{t, -eps};
        const cplx s = std::sin(wt);
        if (std::abs(s) < 1e-14) continue;
        PanelNode nd;
        nd.t = t;
        nd.amp = half * kGauss16Weights[i] * val / s * std::exp(I * (lambda * wt));
        nd.u = std::cos(wt) / s;
        nodes.push_back(nd);
    }
}

}  // namespace

std::vector<cplx> bracket_radial_table(const Window& w, double lambda,
                                       const Grid2& g, double eps) {
    if (meets_singularity(w, eps))
        throw SingularTimeError(
            "bracket_radial_table: window meets a multiple of pi; pass eps > 0");
    const double h = g.hx();
    const long smax = static_cast<long>(g.nx - 1) * (g.nx - 1) +
                      static_cast<long>(g.ny - 1) * (g.ny - 1);
    const double r_max2 = h * h * static_cast<double>(smax);
    std::vector<PanelNode> nodes;
    for (const auto& [a, b] : w.support())
        build_panels(w, lambda, r_max2, eps, a, b, 0, nodes);
    std::vector<cplx> table(static_cast<size_t>(smax) + 1, cplx{0.0, 0.0});
    const double c = 0.25 * lambda * h * h;  // phase step per unit s
    const cplx I{0.0, 1.0};
    for (const PanelNode& nd : nodes) {
        const cplx W = std::exp(I * (c * nd.u));
        cplx cur{1.0, 0.0};
        const cplx amp = nd.amp;
        for (long s = 0; s <= smax; ++s) {
            table[s] += amp * cur;
            cur *= W;
            if ((s & 1023) == 1023 && eps == 0.0) cur /= std::abs(cur);
        }
    }
    return table;
}

DiscreteOperator bracket_operator(const Window& w, double lambda,
                                  const Grid2& g, double eps) {
    return assemble_radial_table(g, lambda, bracket_radial_table(w, lambda, g, eps));
}

double envelope_bl(int l, int j, double lambda, int N) {
    const double tl = std::ldexp(1.0, -l);
    const double base = 1.0 + lambda * tl * std::max(std::ldexp(1.0, -j), tl * tl);
    return tl * std::pow(base, -N);
}

double envelope_Kj(int l, int j, double lambda, double r, int N) {
    const double pre = std::ldexp(1.0, l - j);
    return pre * std::pow(1.0 + lambda * std::ldexp(1.0, j) * r * r, -N);
}

double envelope_exterior(double lambda, double r, int N) {
    return std::pow(1.0 + lambda * std::max(0.0, r * r - 4.0), -N);
}

TilingSplit tiling_split(const DiscreteOperator& T, double tile_side) {
    TilingSplit out{T, T, 8};
    auto tile = [&](Point2 z) {
        return std::pair<long, long>{
            static_cast<long>(std::floor(z.x / tile_side)),
            static_cast<long>(std::floor(z.y / tile_side))};
    };
    for (int i = 0; i < T.tgt.size(); ++i) {
        const auto qi = tile(T.tgt.point(i));
        for (int j = 0; j < T.src.size(); ++j) {
            const auto qj = tile(T.src.point(j));
            const bool near = std::labs(qi.first - qj.first) <= 1 &&
                              std::labs(qi.second - qj.second) <= 1;
            if (near)
                out.far_part.A(i, j) = {0.0, 0.0};
            else
                out.near_part.A(i, j) = {0.0, 0.0};
        }
    }
    return out;
}

}  // namespace twisted
