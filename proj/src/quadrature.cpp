#include "twisted/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "twisted/errors.hpp"

namespace twisted {

const double kGauss16Nodes[16] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318,
    -0.7554044083550030, -0.6178762444026438, -0.4580167776572274,
    -0.2816035507792589, -0.0950125098376374, 0.0950125098376374,
    0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,
    0.9894009349916499};

const double kGauss16Weights[16] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928,
    0.1246289712555339, 0.1495959888165767, 0.1691565193950025,
    0.1826034150449236, 0.1894506104550685, 0.1894506104550685,
    0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479,
    0.0271524594117541};

namespace {

cplx gauss16(const std::function<cplx(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    cplx s{0.0, 0.0};
    for (int i = 0; i < 16; ++i)
        s += kGauss16Weights[i] * f(mid + half * kGauss16Nodes[i]);
    return half * s;
}

struct AdaptiveState {
    const std::function<cplx(double)>* f;
    const QuadOptions* opt;
    double total_len;
    long panels = 0;
    double err = 0.0;
};

cplx adapt(AdaptiveState& st, double a, double b, cplx coarse, int depth) {
    if (st.panels > st.opt->max_panels)
        throw BudgetExceededError("adaptive_integrate: panel budget exhausted");
    const double mid = 0.5 * (a + b);
    const cplx left = gauss16(*st.f, a, mid);
    const cplx right = gauss16(*st.f, mid, b);
    st.panels += 2;
    const cplx fine = left + right;
    const double diff = std::abs(fine - coarse);
    const double share =
        st.opt->abs_tol * ((b - a) / st.total_len) + st.opt->rel_tol * std::abs(fine);
    if (diff <= std::max(share, 1e-300) || depth >= st.opt->max_depth) {
        st.err += diff;
        return fine;
    }
    return adapt(st, a, mid, left, depth + 1) + adapt(st, mid, b, right, depth + 1);
}

}  // namespace

QuadResult adaptive_integrate(const std::function<cplx(double)>& f, double a,
                              double b, const QuadOptions& opt) {
    QuadResult out;
    if (a == b) return out;
    std::vector<double> cuts;
    cuts.push_back(a);
    for (double c : opt.breakpoints)
        if (c > a && c < b) cuts.push_back(c);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    AdaptiveState st{&f, &opt, b - a};
    cplx total{0.0, 0.0};
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        const cplx coarse = gauss16(f, cuts[i], cuts[i + 1]);
        ++st.panels;
        total += adapt(st, cuts[i], cuts[i + 1], coarse, 0);
    }
    out.value = total;
    out.err_est = st.err;
    out.panels = st.panels;
    return out;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw OutOfRegimeError("fit_line: need at least two points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    LineFit fit;
    const double det = n * sxx - sx * sx;
    fit.slope = (n * sxy - sx * sy) / det;
    fit.intercept = (sy * sxx - sx * sxy) / det;
    double rss = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - fit.intercept - fit.slope * x[i];
        rss += r * r;
    }
    fit.residual = std::sqrt(rss / n);
    return fit;
}

ExtrapResult neville_to_zero(const std::vector<double>& x,
                             const std::vector<cplx>& y) {
    if (x.size() != y.size() || x.empty())
        throw OutOfRegimeError("neville_to_zero: bad input");
    auto extrapolate = [](const std::vector<double>& xs,
                          const std::vector<cplx>& ys) {
        std::vector<cplx> t = ys;
        for (size_t m = 1; m < t.size(); ++m)
            for (size_t i = 0; i + m < xs.size(); ++i)
                t[i] = (-xs[i + m] * t[i] + xs[i] * t[i + 1]) /
                       (xs[i] - xs[i + m]);
        return t[0];
    };
    ExtrapResult out;
    out.value = extrapolate(x, y);
    if (x.size() >= 2) {
        std::vector<double> xs(x.begin(), x.end() - 1);
        std::vector<cplx> ys(y.begin(), y.end() - 1);
        out.err_est = std::abs(out.value - extrapolate(xs, ys));
    }
    return out;
}

}  // namespace twisted
