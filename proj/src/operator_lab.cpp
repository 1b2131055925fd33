#include "twisted/operator_lab.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "twisted/errors.hpp"
#include "twisted/quadrature.hpp"

namespace twisted {

double Rng::uniform() {
    // 53-bit uniform in (0,1)
    const uint64_t u = eng();
    return (static_cast<double>(u >> 11) + 0.5) * (1.0 / 9007199254740992.0);
}

double Rng::uniform(double a, double b) { return a + (b - a) * uniform(); }

double Rng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u1 = uniform(), u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    have_spare_ = true;
    spare_ = r * std::sin(2.0 * pi * u2);
    return r * std::cos(2.0 * pi * u2);
}

cplx Rng::cgauss() {
    const double re = gaussian();
    return {re, gaussian()};
}

DiscreteOperator discretize(const Grid2& tgt, const Grid2& src,
                            const std::function<cplx(Point2, Point2)>& kernel) {
    DiscreteOperator op{tgt, src, Eigen::MatrixXcd(tgt.size(), src.size())};
    for (int j = 0; j < src.size(); ++j) {
        const Point2 zp = src.point(j);
        for (int i = 0; i < tgt.size(); ++i) op.A(i, j) = kernel(tgt.point(i), zp);
    }
    return op;
}

std::vector<long> lattice_squares(const Grid2& g) {
    std::vector<char> seen(static_cast<size_t>((g.nx - 1) * (g.nx - 1) +
                                               (g.ny - 1) * (g.ny - 1) + 1),
                           0);
    if (std::fabs(g.hx() - g.hy()) > 1e-15 * std::fabs(g.hx()))
        throw OutOfRegimeError("lattice_squares: requires hx == hy");
    for (int dx = 0; dx < g.nx; ++dx)
        for (int dy = 0; dy < g.ny; ++dy)
            seen[static_cast<size_t>(dx) * dx + static_cast<size_t>(dy) * dy] = 1;
    std::vector<long> out;
    for (size_t s = 0; s < seen.size(); ++s)
        if (seen[s]) out.push_back(static_cast<long>(s));
    return out;
}

DiscreteOperator assemble_radial(const Grid2& g, double phase_scale,
                                 const std::function<cplx(double)>& radial) {
    const double h = g.hx();
    const long smax = static_cast<long>(g.nx - 1) * (g.nx - 1) +
                      static_cast<long>(g.ny - 1) * (g.ny - 1);
    std::vector<cplx> table(static_cast<size_t>(smax) + 1, cplx{0.0, 0.0});
    for (long s : lattice_squares(g))
        table[s] = radial(h * std::sqrt(static_cast<double>(s)));
    return assemble_radial_table(g, phase_scale, table);
}

DiscreteOperator assemble_radial_table(const Grid2& g, double phase_scale,
                                       const std::vector<cplx>& table) {
    DiscreteOperator op{g, g, Eigen::MatrixXcd(g.size(), g.size())};
    for (int j = 0; j < g.size(); ++j) {
        const Point2 zp = g.point(j);
        const int jx = j % g.nx, jy = j / g.nx;
        for (int i = 0; i < g.size(); ++i) {
            const int ix = i % g.nx, iy = i / g.nx;
            const long dx = ix - jx, dy = iy - jy;
            const long s = dx * dx + dy * dy;
            const Point2 z = g.point(i);
            const double ph = phase_scale * cross_term(z, zp);
            op.A(i, j) = table[s] * cplx{std::cos(ph), std::sin(ph)};
        }
    }
    return op;
}

namespace {

// Elementwise duality map for the l^p norm: |v|^(p-1) sign(v), then
// normalized in l^q. Returns the mapped vector (unnormalized).
Eigen::VectorXcd duality_map(const Eigen::VectorXcd& v, double p) {
    Eigen::VectorXcd out(v.size());
    for (int i = 0; i < v.size(); ++i) {
        const double a = std::abs(v[i]);
        out[i] = (a > 0.0) ? std::pow(a, p - 1.0) * (v[i] / a) : cplx{0.0, 0.0};
    }
    return out;
}

double ascent_pp(const DiscreteOperator& T, double p, int restarts,
                 int iterations, uint64_t seed, int* iters_used) {
    const double q = p / (p - 1.0);
    double best = 0.0;
    int used = 0;
    for (int r = 0; r < restarts; ++r) {
        Rng rng(seed + 1000003ULL * static_cast<uint64_t>(r));
        Eigen::VectorXcd f(T.src.size());
        for (int i = 0; i < f.size(); ++i) f[i] = rng.cgauss();
        f /= lp_norm(f, p, T.src.weight());
        double prev = 0.0;
        for (int it = 0; it < iterations; ++it) {
            ++used;
            Eigen::VectorXcd g = T.apply(f);
            const double val = lp_norm(g, p, T.tgt.weight());
            best = std::max(best, val);
            if (val <= 1e-300) break;
            // dual element of g in L^q, then pull back and map to L^p sphere
            Eigen::VectorXcd u = duality_map(g, p);
            Eigen::VectorXcd v = T.apply_adjoint(u);
            Eigen::VectorXcd fn = duality_map(v, q);
            const double n = lp_norm(fn, p, T.src.weight());
            if (n <= 1e-300) break;
            f = fn / n;
            if (std::fabs(val - prev) <= 1e-12 * val && it > 4) break;
            prev = val;
        }
    }
    if (iters_used) *iters_used = used;
    return best;
}

double upper_2(const DiscreteOperator& T, uint64_t seed, int max_iters = 500) {
    // power iteration on T*T
    Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
    Eigen::VectorXcd f(T.src.size());
    for (int i = 0; i < f.size(); ++i) f[i] = rng.cgauss();
    f /= lp_norm(f, 2.0, T.src.weight());
    double val = 0.0, prev = -1.0;
    for (int it = 0; it < max_iters; ++it) {
        Eigen::VectorXcd g = T.apply_adjoint(T.apply(f));
        const double n = lp_norm(g, 2.0, T.src.weight());
        if (n <= 1e-300) return 0.0;
        val = std::sqrt(n);
        f = g / n;
        if (prev > 0.0 && std::fabs(val - prev) <= 1e-10 * val) break;
        prev = val;
    }
    return val;
}

double upper_inf(const DiscreteOperator& T) {
    double m = 0.0;
    for (int i = 0; i < T.A.rows(); ++i) {
        double s = 0.0;
        for (int j = 0; j < T.A.cols(); ++j) s += std::abs(T.A(i, j));
        m = std::max(m, s * T.src.weight());
    }
    return m;
}

}  // namespace

double opnorm_upper2(const DiscreteOperator& T, int max_iters, uint64_t seed) {
    return upper_2(T, seed, max_iters);
}

NormEstimate opnorm_bracket(const DiscreteOperator& T, double p, int restarts,
                            int iterations, uint64_t seed) {
    if (!(p > 1.0))
        throw OutOfRegimeError("opnorm_bracket: need p in (1, inf]");
    NormEstimate est;
    est.p = p;
    est.restarts = restarts;
    est.seed = seed;
    if (std::isinf(p)) {
        est.upper = upper_inf(T);
        est.lower = *est.upper;  // row-sum bound is attained in l^inf
        return est;
    }
    est.lower = ascent_pp(T, p, restarts, iterations, seed, &est.iterations);
    if (p == 2.0) {
        est.upper = std::max(upper_2(T, seed), est.lower);
    } else if (p == 4.0) {
        est.upper = std::sqrt(upper_2(T, seed) * upper_inf(T));
    }
    return est;
}

double opnorm_lower(const DiscreteOperator& T, double p, int restarts,
                    int iterations, uint64_t seed) {
    if (std::isinf(p)) return upper_inf(T);
    return ascent_pp(T, p, restarts, iterations, seed, nullptr);
}

double opnorm_2p_lower(const DiscreteOperator& T, double p, int restarts,
                       int iterations, uint64_t seed) {
    double best = 0.0;
    for (int r = 0; r < restarts; ++r) {
        Rng rng(seed + 7919ULL * static_cast<uint64_t>(r));
        Eigen::VectorXcd f(T.src.size());
        for (int i = 0; i < f.size(); ++i) f[i] = rng.cgauss();
        f /= lp_norm(f, 2.0, T.src.weight());
        for (int it = 0; it < iterations; ++it) {
            Eigen::VectorXcd g = T.apply(f);
            double val;
            Eigen::VectorXcd u;
            if (std::isinf(p)) {
                val = lp_norm(g, p, T.tgt.weight());
                // dual of L^inf maximum: point mass at the maximizing node
                int imax = 0;
                double m = 0.0;
                for (int i = 0; i < g.size(); ++i)
                    if (std::abs(g[i]) > m) m = std::abs(g[i]), imax = i;
                u = Eigen::VectorXcd::Zero(g.size());
                if (m > 0.0) u[imax] = g[imax] / m / T.tgt.weight();
            } else {
                val = lp_norm(g, p, T.tgt.weight());
                u = duality_map(g, p);
            }
            best = std::max(best, val);
            if (val <= 1e-300) break;
            Eigen::VectorXcd v = T.apply_adjoint(u);
            const double n = lp_norm(v, 2.0, T.src.weight());
            if (n <= 1e-300) break;
            f = v / n;
        }
    }
    return best;
}

std::string ScanReport::to_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << xlabel << "," << ylabel << "\r\n";
    for (size_t i = 0; i < x.size(); ++i) os << x[i] << "," << y[i] << "\r\n";
    return os.str();
}

std::string ScanReport::to_json() const {
    std::ostringstream os;
    os.precision(17);
    os << "{\"name\":\"" << name << "\",\"xlabel\":\"" << xlabel
       << "\",\"ylabel\":\"" << ylabel << "\",\"x\":[";
    for (size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
    os << "],\"y\":[";
    for (size_t i = 0; i < y.size(); ++i) os << (i ? "," : "") << y[i];
    os << "],\"slope\":" << slope << ",\"intercept\":" << intercept
       << ",\"residual\":" << residual << ",\"target\":" << target
       << ",\"tolerance\":" << tolerance
       << ",\"gating\":" << (gating ? "true" : "false")
       << ",\"pass\":" << (pass ? "true" : "false") << ",\"seed\":" << seed;
    for (const auto& [k, v] : extra) os << ",\"" << k << "\":" << v;
    os << "}";
    return os.str();
}

void finish_loglog_scan(ScanReport& rep, bool require_upper_bound_slope) {
    std::vector<double> lx, ly;
    for (size_t i = 0; i < rep.x.size(); ++i) {
        lx.push_back(std::log2(rep.x[i]));
        ly.push_back(std::log2(std::max(rep.y[i], 1e-300)));
    }
    const LineFit fit = fit_line(lx, ly);
    rep.slope = fit.slope;
    rep.intercept = fit.intercept;
    rep.residual = fit.residual;
    if (require_upper_bound_slope)
        rep.pass = rep.slope <= rep.target + rep.tolerance;
    else
        rep.pass = std::fabs(rep.slope - rep.target) <= rep.tolerance;
}

}  // namespace twisted
