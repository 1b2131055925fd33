#pragma once

#include <Eigen/Dense>
#include <functional>

#include "twisted/geometry.hpp"

namespace twisted {

// Uniform cell-centered rectangular grid; midpoint quadrature weight hx*hy.
struct Grid2 {
    double x0 = -8.0, x1 = 8.0, y0 = -8.0, y1 = 8.0;
    int nx = 96, ny = 96;

    static Grid2 square(double half_extent, int n) {
        return {-half_extent, half_extent, -half_extent, half_extent, n, n};
    }
    static Grid2 rect(double ax, double bx, double ay, double by, int nx, int ny) {
        return {ax, bx, ay, by, nx, ny};
    }
    double hx() const { return (x1 - x0) / nx; }
    double hy() const { return (y1 - y0) / ny; }
    double weight() const { return hx() * hy(); }
    int size() const { return nx * ny; }
    Point2 point(int idx) const {
        const int iy = idx / nx, ix = idx % nx;
        return {x0 + (ix + 0.5) * hx(), y0 + (iy + 0.5) * hy()};
    }
    bool operator==(const Grid2&) const = default;
};

struct SampledField {
    Grid2 grid;
    Eigen::VectorXcd values;

    static SampledField sample(const Grid2& g,
                               const std::function<cplx(Point2)>& f) {
        SampledField out{g, Eigen::VectorXcd(g.size())};
        for (int i = 0; i < g.size(); ++i) out.values[i] = f(g.point(i));
        return out;
    }
    // Weighted l^p norm approximating the continuum L^p norm.
    double lp_norm(double p) const;
    // Fraction of |f| mass within two cells of the boundary.
    double boundary_mass_fraction() const;
};

double lp_norm(const Eigen::VectorXcd& v, double p, double cell_weight);

}  // namespace twisted
