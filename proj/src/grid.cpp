#include "twisted/grid.hpp"

#include <cmath>
#include <limits>

namespace twisted {

double lp_norm(const Eigen::VectorXcd& v, double p, double cell_weight) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (int i = 0; i < v.size(); ++i) m = std::max(m, std::abs(v[i]));
        return m;
    }
    double s = 0.0;
    for (int i = 0; i < v.size(); ++i) s += std::pow(std::abs(v[i]), p);
    return std::pow(cell_weight * s, 1.0 / p);
}

double SampledField::lp_norm(double p) const {
    return twisted::lp_norm(values, p, grid.weight());
}

double SampledField::boundary_mass_fraction() const {
    double total = 0.0, edge = 0.0;
    for (int i = 0; i < grid.size(); ++i) {
        const int iy = i / grid.nx, ix = i % grid.nx;
        const double a = std::abs(values[i]);
        total += a;
        if (ix < 2 || iy < 2 || ix >= grid.nx - 2 || iy >= grid.ny - 2) edge += a;
    }
    return total > 0.0 ? edge / total : 0.0;
}

}  // namespace twisted
