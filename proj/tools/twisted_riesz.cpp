// Command-line front end: experiment orchestration with seeded
// reproducibility and plot-ready reports. Reports are deterministic for a
// fixed config (no timestamps); every report embeds the resolved config, the
// library version, and the kernel normalization convention.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "twisted/acceptance.hpp"
#include "twisted/bumps.hpp"
#include "twisted/errors.hpp"
#include "twisted/grid.hpp"
#include "twisted/operator_lab.hpp"
#include "twisted/oscillatory.hpp"
#include "twisted/propagator.hpp"
#include "twisted/spectral.hpp"
#include "twisted/stationary.hpp"

namespace {

using nlohmann::json;
constexpr const char* kVersion = "twisted-riesz 1.0.0";

struct Options {
    double lambda = 256.0;
    double delta = 0.5;
    int ell = 2;
    int j = 3;
    int n = 0;
    double p = 4.0;
    double eps0 = 1.0 / 16.0;
    double grid_extent = 2.0;
    int grid_n = 32;
    int mu = 1;
    int mu_max = 129;
    int samples = 1000;
    std::uint64_t seed = 1234;
    std::string out;
    std::string format = "json";
};

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--lambda", o.lambda, "spectral parameter");
    cmd->add_option("--delta", o.delta, "Riesz smoothing exponent");
    cmd->add_option("--ell", o.ell, "dyadic spectral index");
    cmd->add_option("--j", o.j, "dyadic distance-to-sphere index");
    cmd->add_option("--n", o.n, "time-tile shift index");
    cmd->add_option("--p", o.p, "Lebesgue exponent");
    cmd->add_option("--eps0", o.eps0, "cap/slab width parameter");
    cmd->add_option("--grid-extent", o.grid_extent, "grid half extent");
    cmd->add_option("--grid-n", o.grid_n, "grid points per axis");
    cmd->add_option("--mu", o.mu, "eigenvalue (odd)");
    cmd->add_option("--mu-max", o.mu_max, "eigensum cap");
    cmd->add_option("--samples", o.samples, "sample count");
    cmd->add_option("--seed", o.seed, "RNG seed");
    cmd->add_option("--out", o.out, "output path (default: stdout)");
    cmd->add_option("--format", o.format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
}

json config_json(const Options& o, const std::string& subcommand) {
    const char* threads = std::getenv("TWISTED_RIESZ_THREADS");
    return json{{"subcommand", subcommand}, {"lambda", o.lambda},
                {"delta", o.delta},         {"ell", o.ell},
                {"j", o.j},                 {"n", o.n},
                {"p", o.p},                 {"eps0", o.eps0},
                {"grid_extent", o.grid_extent}, {"grid_n", o.grid_n},
                {"mu", o.mu},               {"mu_max", o.mu_max},
                {"samples", o.samples},     {"seed", o.seed},
                {"threads", threads ? std::atoi(threads) : 1}};
}

void emit(const Options& o, const json& report) {
    std::ostringstream body;
    if (o.format == "csv") {
        for (auto it = report.begin(); it != report.end(); ++it) {
            if (it.value().is_structured()) continue;
            body << it.key() << "," << it.value().dump() << "\r\n";
        }
        if (report.contains("x")) {
            body << "x,y\r\n";
            const auto& x = report["x"];
            const auto& y = report["y"];
            for (size_t i = 0; i < x.size(); ++i)
                body << x[i].dump() << "," << y[i].dump() << "\r\n";
        }
    } else {
        body << report.dump(2) << "\n";
    }
    if (o.out.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream f(o.out, std::ios::binary);
        if (!f) throw twisted::Error("cannot write output path: " + o.out);
        f << body.str();
    }
}

json base_report(const Options& o, const std::string& subcommand) {
    return json{{"version", kVersion},
                {"normalization", twisted::kNormalizationTag},
                {"config", config_json(o, subcommand)}};
}

// ---- subcommand bodies; each returns pass/fail ----------------------------

bool run_verify_cutoffs(const Options& o, json& rep) {
    twisted::Rng rng(o.seed);
    double e_psi = 0, e_rec = 0, e_eta = 0, e_chi = 0, e_cap = 0;
    const twisted::AngularCaps caps = twisted::make_angular_caps(o.j, o.eps0);
    for (int i = 0; i < o.samples; ++i) {
        const double t = std::exp(rng.uniform(std::log(1e-3), std::log(8.0)));
        e_psi = std::max(e_psi, std::fabs(twisted::psi_dyadic_sum(t, -8, 14) - 1.0));
        double rec = 0.0;
        for (int l = 0; l <= 6; ++l)
            rec += std::pow(2.0, o.delta * l) * twisted::psi_ell_delta(l, o.delta, t);
        e_rec = std::max(e_rec, std::fabs(rec - std::pow(t, o.delta)));
        const double u = rng.uniform(0.0, twisted::pi);
        e_eta = std::max(e_eta, std::fabs(twisted::eta0(u) + twisted::eta1(u) +
                                          twisted::eta0(u - twisted::pi) - 1.0));
        const double r = rng.uniform(1e-3, 2.5);
        e_chi = std::max(e_chi, std::fabs(twisted::chi_split(8, r).total() - 1.0));
        const double ang = rng.uniform(0.0, 2.0 * twisted::pi);
        double s = 0.0;
        for (int k = 0; k < caps.count; ++k) s += twisted::angular_bump(caps, k, ang);
        e_cap = std::max(e_cap, std::fabs(s - 1.0));
    }
    const double worst = std::max({e_psi, e_rec, e_eta, e_chi, e_cap});
    rep["psi_partition_err"] = e_psi;
    rep["weighted_reconstruction_err"] = e_rec;
    rep["eta_triple_err"] = e_eta;
    rep["chi_total_err"] = e_chi;
    rep["angular_cap_err"] = e_cap;
    rep["max_err"] = worst;
    return worst <= 1e-12;
}

bool run_kernel_eval(const Options& o, json& rep) {
    const twisted::Window w = twisted::window_interior();
    const twisted::Point2 z{1.2, 0.4}, zp{-0.3, 0.2};
    const twisted::cplx v = twisted::bracket_kernel(w, o.lambda, z, zp);
    rep["window"] = w.label;
    rep["z"] = {z.x, z.y};
    rep["zp"] = {zp.x, zp.y};
    rep["value_re"] = v.real();
    rep["value_im"] = v.imag();
    rep["abs"] = std::abs(v);
    return true;
}

bool run_projection(const Options& o, json& rep) {
    if (o.mu < 1 || o.mu % 2 == 0)
        throw twisted::OutOfRegimeError("projection: --mu must be odd and >= 1");
    twisted::Rng rng(o.seed);
    double worst = 0.0;
    for (int i = 0; i < std::max(1, o.samples / 5); ++i) {
        const twisted::Point2 z{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
        const twisted::Point2 zp{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
        worst = std::max(worst, std::abs(twisted::projection_fourier(o.mu, z, zp) -
                                         twisted::projection_closed(o.mu, z, zp)));
    }
    rep["route_gap"] = worst;
    return worst <= 1e-6;
}

bool run_riesz_apply(const Options& o, json& rep) {
    if (o.lambda > o.mu_max)
        throw twisted::CapExceededError("riesz-apply: lambda exceeds --mu-max");
    const twisted::Grid2 g = twisted::Grid2::square(o.grid_extent, o.grid_n);
    const twisted::SampledField f =
        twisted::SampledField::sample(g, [](twisted::Point2 z) -> twisted::cplx {
            return std::exp(-(z.x * z.x + z.y * z.y));
        });
    const twisted::RieszSpec spec{o.lambda, o.delta, o.mu_max};
    twisted::SampledField out = twisted::riesz_apply(spec, f);
    rep["input_l2"] = f.lp_norm(2.0);
    rep["output_l2"] = out.lp_norm(2.0);
    out.values -= f.values;
    rep["error_lp"] = out.lp_norm(o.p);
    return true;
}

bool run_stationary_compare(const Options& o, json& rep) {
    const double a = 2.0 - std::ldexp(1.0, 1 - o.j);
    const twisted::Point2 z{a, 0.0}, zp{0.0, 0.0};
    const double t0 = twisted::stationary_time(a);
    const double halfwidth =
        o.eps0 * 2.0 * std::sqrt(std::ldexp(1.0, -o.j));
    const twisted::Window w = twisted::window_bump(t0, halfwidth);
    const double cut = twisted::chi_tilde(a, o.j, o.eps0, 1.0 / 16.0, a);
    const twisted::cplx full = cut * twisted::bracket_kernel(w, o.lambda, z, zp);
    const twisted::cplx lead =
        twisted::leading_term(w, o.lambda, a, o.j, o.eps0, 1.0 / 16.0, z, zp);
    rep["a"] = a;
    rep["quadrature_abs"] = std::abs(full);
    rep["leading_abs"] = std::abs(lead);
    rep["error_abs"] = std::abs(full - lead);
    return std::abs(full - lead) <= std::abs(lead);
}

bool run_det_check(const Options& o, json& rep) {
    twisted::Rng rng(o.seed);
    double worst_closed = 0.0, worst_fd = 0.0;
    for (int i = 0; i < o.samples; ++i) {
        const double z1 = rng.uniform(0.5, 3.0), z2 = rng.uniform(-2.0, 2.0);
        const double z1p = rng.uniform(-2.0, 2.0), s = rng.uniform(-0.3, 0.3);
        worst_closed = std::max(worst_closed,
            std::fabs(twisted::cs_determinant_closed(z1, z2, z1p, s) - 0.125));
        worst_fd = std::max(worst_fd,
            std::fabs(twisted::cs_determinant_fd(z1, z2, z1p, s) - 0.125));
    }
    rep["max_dev_closed"] = worst_closed;
    rep["max_dev_fd"] = worst_fd;
    return worst_closed <= 1e-15 && worst_fd <= 1e-9;
}

bool run_envelope_scan(const Options& o, json& rep) {
    // Stability of the envelope constant across a lambda doubling.
    auto constant_at = [&](double lambda) {
        double c = 0.0;
        for (int l = 1; l <= 4; ++l) {
            const twisted::Window w = twisted::window_eta1_timepiece(l);
            for (double r : {0.2, 0.6, 1.0, 1.4}) {
                const twisted::cplx v =
                    twisted::bracket_kernel(w, lambda, {r, 0.0}, {0.0, 0.0});
                c = std::max(c, std::abs(v) /
                                    twisted::envelope_bl(l, o.j, lambda, 3));
            }
        }
        return c;
    };
    const double c1 = constant_at(o.lambda);
    const double c2 = constant_at(2.0 * o.lambda);
    rep["constant_lo"] = c1;
    rep["constant_hi"] = c2;
    rep["stability"] = c2 / c1;
    return c2 <= 4.0 * c1 && c1 <= 4.0 * c2;
}

bool run_opnorm_scan(const Options& o, json& rep) {
    const twisted::Grid2 g = twisted::Grid2::square(o.grid_extent, o.grid_n);
    const twisted::Window w = twisted::window_interior();
    twisted::ScanReport scan;
    for (double lam = 64.0; lam <= o.lambda; lam *= 2.0) {
        const twisted::DiscreteOperator T = twisted::bracket_operator(w, lam, g);
        scan.x.push_back(lam);
        scan.y.push_back(twisted::opnorm_lower(T, o.p, 4, 80, o.seed));
    }
    scan.target = -0.85;
    scan.tolerance = 0.0;
    twisted::finish_loglog_scan(scan, true);
    rep["x"] = scan.x;
    rep["y"] = scan.y;
    rep["slope"] = scan.slope;
    rep["target"] = scan.target;
    return scan.pass;
}

bool run_convergence(const Options& o, json& rep) {
    if (!(o.delta > twisted::delta_critical(o.p)))
        throw twisted::OutOfRegimeError(
            "convergence: --delta must exceed the critical index for --p");
    const twisted::Grid2 g = twisted::Grid2::square(o.grid_extent, o.grid_n);
    const twisted::SampledField f =
        twisted::SampledField::sample(g, [](twisted::Point2 z) -> twisted::cplx {
            return std::exp(-(z.x * z.x + z.y * z.y));
        });
    std::vector<double> lambdas;
    for (double lam = 9.0; lam <= o.mu_max; lam = 2.0 * lam - 1.0)
        lambdas.push_back(lam);
    const twisted::ConvergenceResult res =
        twisted::convergence_experiment(f, o.p, o.delta, lambdas, o.mu_max);
    rep["x"] = res.lambdas;
    rep["y"] = res.errors;
    rep["strictly_decreasing"] = res.strictly_decreasing;
    return res.strictly_decreasing;
}

bool run_all_acceptance(const Options& o, json& rep) {
    twisted::AcceptanceConfig cfg;
    cfg.seed = o.seed;
    bool ok = true;
    json lines = json::array();
    for (int id = 1; id <= 10; ++id) {
        const twisted::CriterionResult r = twisted::run_criterion(id, cfg);
        lines.push_back(json{{"id", r.id},
                             {"name", r.name},
                             {"gating", r.gating},
                             {"pass", r.pass},
                             {"measured", r.measured},
                             {"detail", r.detail}});
        std::cerr << twisted::format_result_line(r) << "\n";
        if (r.gating && !r.pass) ok = false;
    }
    rep["criteria"] = lines;
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical laboratory for twisted-Laplacian spectral means"};
    app.set_config("--config");
    app.require_subcommand(1);
    Options o;

    struct Entry {
        const char* name;
        const char* help;
        bool (*fn)(const Options&, json&);
    };
    const Entry entries[] = {
        {"verify-cutoffs", "partition-of-unity identities", run_verify_cutoffs},
        {"kernel-eval", "evaluate an oscillatory kernel", run_kernel_eval},
        {"projection", "dual-route projection kernels", run_projection},
        {"riesz-apply", "apply a Riesz mean to a Gaussian", run_riesz_apply},
        {"stationary-compare", "quadrature vs stationary-phase leading term",
         run_stationary_compare},
        {"det-check", "phase-determinant identity", run_det_check},
        {"envelope-scan", "kernel-envelope constant stability", run_envelope_scan},
        {"opnorm-scan", "operator-norm scaling scan", run_opnorm_scan},
        {"convergence", "Riesz-mean convergence experiment", run_convergence},
        {"all-acceptance", "run every acceptance criterion", run_all_acceptance},
    };
    for (const Entry& e : entries) add_common(app.add_subcommand(e.name, e.help), o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 1;
    }

    try {
        for (const Entry& e : entries) {
            if (!app.get_subcommand(e.name)->parsed()) continue;
            json rep = base_report(o, e.name);
            const bool pass = e.fn(o, rep);
            rep["pass"] = pass;
            emit(o, rep);
            return pass ? 0 : 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
