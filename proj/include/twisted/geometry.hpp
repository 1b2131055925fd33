#pragma once

#include <cmath>
#include <complex>

namespace twisted {

using cplx = std::complex<double>;
inline constexpr double pi = 3.14159265358979323846264338327950288;

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }

inline double dist(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

// Symplectic cross term (z2 z1' - z1 z2')/2 appearing in the propagator phase.
inline double cross_term(Point2 z, Point2 zp) {
    return 0.5 * (z.y * zp.x - z.x * zp.y);
}

// Orientation-reversing rotation-reflection (z1+z2, z1-z2)/sqrt(2).
inline Point2 sym_rotate(Point2 z) {
    const double s = 1.0 / std::sqrt(2.0);
    return {s * (z.x + z.y), s * (z.x - z.y)};
}

// Anisotropic zoom onto the tangency point (first slot shifted to 2).
struct ScaledPair {
    Point2 z;
    Point2 zp;
};

inline ScaledPair scale_map_Lj(int j, Point2 z, Point2 zp) {
    const double a = std::ldexp(1.0, -j);  // 2^-j
    const double b = std::sqrt(a);         // 2^-j/2
    return {{a * z.x + 2.0, b * z.y}, {a * zp.x, b * zp.y}};
}

}  // namespace twisted
