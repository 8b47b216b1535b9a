#pragma once

#include <cmath>
#include <functional>

#include "sisr/errors.hpp"

namespace sisr {

// Brent's method on a bracketing interval [a,b] with f(a)*f(b) <= 0.
double brent_root(const std::function<double(double)>& f, double a, double b,
                  double fa, double fb, double xtol, int max_iter = 100);

// Bisection for a monotone-increasing f with f(lo) <= 0 <= f(hi).
double bisect_increasing(const std::function<double(double)>& f, double lo, double hi,
                         double ftol, int max_iter = 200);

inline double log_sum_exp2(double a, double b) {
    const double m = a > b ? a : b;
    if (m == -INFINITY) return -INFINITY;
    return m + std::log(std::exp(a - m) + std::exp(b - m));
}

}  // namespace sisr
