#pragma once

#include <array>
#include <cmath>

namespace sisr {

// Increment dimension is 1 or 2 everywhere in this library; a fixed-size
// pair with an explicit dim argument avoids heap traffic in the hot loops.
using Vec = std::array<double, 2>;
using Mat = std::array<double, 4>;  // row-major 2x2

inline double dot(const Vec& a, const Vec& b, int d) {
    double s = a[0] * b[0];
    if (d > 1) s += a[1] * b[1];
    return s;
}

inline Vec add(const Vec& a, const Vec& b) { return {a[0] + b[0], a[1] + b[1]}; }
inline Vec sub(const Vec& a, const Vec& b) { return {a[0] - b[0], a[1] - b[1]}; }
inline Vec scale(const Vec& a, double c) { return {a[0] * c, a[1] * c}; }

inline double norm(const Vec& a, int d) { return std::sqrt(dot(a, a, d)); }

inline Vec matvec(const Mat& m, const Vec& v, int d) {
    if (d == 1) return {m[0] * v[0], 0.0};
    return {m[0] * v[0] + m[1] * v[1], m[2] * v[0] + m[3] * v[1]};
}

// Solve A x = b for symmetric A (d = 1 or 2). Returns false if singular.
inline bool solve_sym(const Mat& a, const Vec& b, int d, Vec& x) {
    if (d == 1) {
        if (a[0] == 0.0) return false;
        x = {b[0] / a[0], 0.0};
        return true;
    }
    const double det = a[0] * a[3] - a[1] * a[2];
    if (det == 0.0) return false;
    x = {(a[3] * b[0] - a[1] * b[1]) / det, (a[0] * b[1] - a[2] * b[0]) / det};
    return true;
}

// Cholesky-based SPD check for 1x1 / 2x2 symmetric matrices.
inline bool is_spd(const Mat& a, int d) {
    if (!(a[0] > 0.0)) return false;
    if (d == 1) return true;
    const double l11 = std::sqrt(a[0]);
    const double l21 = a[2] / l11;
    return a[3] - l21 * l21 > 0.0;
}

}  // namespace sisr
