#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <random>
#include <optional>
#include <string>
#include <vector>

#include "twisted/grid.hpp"

namespace twisted {

// Deterministic RNG. Gaussian variates are produced by an explicit
// Box-Muller transform so that streams are identical across standard
// library implementations.
struct Rng {
    explicit Rng(uint64_t seed) : eng(seed) {}
    double uniform();            // (0,1)
    double uniform(double a, double b);
    double gaussian();
    cplx cgauss();
    std::mt19937_64 eng;

  private:
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Dense discretization of an integral operator: entry (i,j) is the kernel at
// (tgt.point(i), src.point(j)); application multiplies by the source cell
// weight (midpoint rule).
struct DiscreteOperator {
    Grid2 tgt, src;
    Eigen::MatrixXcd A;

    Eigen::VectorXcd apply(const Eigen::VectorXcd& f) const {
        return src.weight() * (A * f);
    }
    Eigen::VectorXcd apply_adjoint(const Eigen::VectorXcd& g) const {
        return tgt.weight() * (A.adjoint() * g);
    }
};

DiscreteOperator discretize(const Grid2& tgt, const Grid2& src,
                            const std::function<cplx(Point2, Point2)>& kernel);

// Lattice-difference radial assembly: kernel(z,z') = exp(i*phase_scale*
// cross_term(z,z')) * radial(|z-z'|). On a square grid |z-z'|^2 = s*h^2 with
// integer s, so the radial factor is tabulated once per distinct s.
DiscreteOperator assemble_radial(const Grid2& g, double phase_scale,
                                 const std::function<cplx(double)>& radial);

// Same, with the radial factor pretabulated: table[s] is the kernel value at
// |z-z'| = h*sqrt(s).
DiscreteOperator assemble_radial_table(const Grid2& g, double phase_scale,
                                       const std::vector<cplx>& table);

// Distinct squared-distance integers s = dx^2+dy^2 present on the grid.
std::vector<long> lattice_squares(const Grid2& g);

struct NormEstimate {
    double p = 2.0;
    double lower = 0.0;           // certified by an explicit witness
    std::optional<double> upper;  // p in {2, 4, inf} only
    int restarts = 0;
    int iterations = 0;
    uint64_t seed = 0;
};

// Lower bound for the p->p operator norm by the nonlinear power method
// (iterated duality maps), with random restarts; upper bounds: exact row-sum
// bound for p=inf, power iteration on T*T for p=2, interpolation for p=4.
NormEstimate opnorm_bracket(const DiscreteOperator& T, double p,
                            int restarts = 8, int iterations = 200,
                            uint64_t seed = 1234);

// Ascent lower bound only (no upper bracket); cheaper for slope scans.
double opnorm_lower(const DiscreteOperator& T, double p, int restarts = 8,
                    int iterations = 200, uint64_t seed = 1234);

// Capped power iteration on T*T for the 2->2 norm; converges from below, so
// callers checking one-sided bounds should add a small inflation margin.
double opnorm_upper2(const DiscreteOperator& T, int max_iters = 500,
                     uint64_t seed = 1234);

// Lower bound for the L2 -> Lp norm (mixed ascent), p in (2, inf].
double opnorm_2p_lower(const DiscreteOperator& T, double p, int restarts = 4,
                       int iterations = 80, uint64_t seed = 1234);

struct ScanReport {
    std::string name;
    std::string xlabel, ylabel;
    std::vector<double> x;             // scan parameter (e.g. lambda)
    std::vector<double> y;             // measured value
    double slope = 0.0, intercept = 0.0, residual = 0.0;
    double target = 0.0, tolerance = 0.0;
    bool gating = true;
    bool pass = false;
    uint64_t seed = 0;
    std::vector<std::pair<std::string, std::string>> extra;

    std::string to_csv() const;
    std::string to_json() const;
};

// Fits log2(y) against log2(x) and fills in slope/verdict fields.
void finish_loglog_scan(ScanReport& rep, bool require_upper_bound_slope);

}  // namespace twisted
