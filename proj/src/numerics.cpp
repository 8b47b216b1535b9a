#include "sisr/numerics.hpp"

#include <cmath>
#include <sstream>

namespace sisr {

double brent_root(const std::function<double(double)>& f, double a, double b,
                  double fa, double fb, double xtol, int max_iter) {
    constexpr double eps = 1e-16;
    if (fa * fb > 0.0) {
        std::ostringstream msg;
        msg << "brent_root: interval does not bracket a root: f(" << a << ")=" << fa
            << ", f(" << b << ")=" << fb;
        throw BracketError(msg.str());
    }
    double c = b, fc = fb, d = b - a, e = d;
    for (int iter = 0; iter < max_iter; ++iter) {
        if (fb * fc > 0.0) {
            c = a;
            fc = fa;
            e = d = b - a;
        }
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol1 = 2.0 * eps * std::fabs(b) + 0.5 * xtol;
        const double xm = 0.5 * (c - b);
        if (std::fabs(xm) <= tol1 || fb == 0.0) return b;
        if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
            double p, q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                q = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::fabs(p);
            const double min1 = 3.0 * xm * q - std::fabs(tol1 * q);
            const double min2 = std::fabs(e * q);
            if (2.0 * p < (min1 < min2 ? min1 : min2)) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        if (std::fabs(d) > tol1)
            b += d;
        else
            b += (xm > 0.0 ? std::fabs(tol1) : -std::fabs(tol1));
        fb = f(b);
    }
    return b;
}

double bisect_increasing(const std::function<double(double)>& f, double lo, double hi,
                         double ftol, int max_iter) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo > 0.0 || fhi < 0.0) {
        std::ostringstream msg;
        msg << "bisect_increasing: f(" << lo << ")=" << flo << ", f(" << hi << ")=" << fhi
            << " does not bracket";
        throw BracketError(msg.str());
    }
    double mid = 0.5 * (lo + hi);
    for (int i = 0; i < max_iter; ++i) {
        mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (std::fabs(fm) <= ftol) return mid;
        if (fm < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return mid;
}

}  // namespace sisr
