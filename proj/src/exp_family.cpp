#include "sisr/exp_family.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sisr/errors.hpp"
#include "sisr/numerics.hpp"
#include "sisr/tolerances.hpp"

namespace sisr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.14159265358979323846;

// log(e^u + e^-u) without overflow.
double log_two_cosh(double u) {
    const double a = std::fabs(u);
    return a + std::log1p(std::exp(-2.0 * a));
}

bool lex_less(const Vec& a, const Vec& b, int d) {
    if (a[0] != b[0]) return a[0] < b[0];
    return d > 1 && a[1] < b[1];
}

}  // namespace

Vec CumulantModel::grad(const Vec& theta) const {
    if (grad_psi) return grad_psi(theta);
    const double h = tol::fd_step * (1.0 + norm(theta, dim));
    Vec g{0.0, 0.0};
    for (int i = 0; i < dim; ++i) {
        Vec tp = theta, tm = theta;
        tp[i] += h;
        tm[i] -= h;
        g[i] = (psi(tp) - psi(tm)) / (2.0 * h);
    }
    return g;
}

Mat CumulantModel::hess(const Vec& theta) const {
    if (hess_psi) return hess_psi(theta);
    const double h = tol::fd_step * (1.0 + norm(theta, dim));
    Mat out{0.0, 0.0, 0.0, 0.0};
    if (grad_psi) {
        for (int j = 0; j < dim; ++j) {
            Vec tp = theta, tm = theta;
            tp[j] += h;
            tm[j] -= h;
            const Vec gp = grad_psi(tp), gm = grad_psi(tm);
            for (int i = 0; i < dim; ++i) out[2 * i + j] = (gp[i] - gm[i]) / (2.0 * h);
        }
        // symmetrize
        if (dim == 2) {
            const double off = 0.5 * (out[1] + out[2]);
            out[1] = out[2] = off;
        }
        return out;
    }
    const double f0 = psi(theta);
    for (int i = 0; i < dim; ++i) {
        Vec tp = theta, tm = theta;
        tp[i] += h;
        tm[i] -= h;
        out[2 * i + i] = (psi(tp) - 2.0 * f0 + psi(tm)) / (h * h);
    }
    if (dim == 2) {
        Vec pp = theta, pm = theta, mp = theta, mm = theta;
        pp[0] += h; pp[1] += h;
        pm[0] += h; pm[1] -= h;
        mp[0] -= h; mp[1] += h;
        mm[0] -= h; mm[1] -= h;
        const double off = (psi(pp) - psi(pm) - psi(mp) + psi(mm)) / (4.0 * h * h);
        out[1] = out[2] = off;
    }
    return out;
}

CumulantModel gaussian_cumulant(double mean, double sd) {
    CumulantModel m;
    m.dim = 1;
    const double v = sd * sd;
    m.psi = [mean, v](const Vec& t) { return mean * t[0] + 0.5 * v * t[0] * t[0]; };
    m.grad_psi = [mean, v](const Vec& t) { return Vec{mean + v * t[0], 0.0}; };
    m.hess_psi = [v](const Vec&) { return Mat{v, 0.0, 0.0, 0.0}; };
    m.mu0 = {mean, 0.0};
    return m;
}

CumulantModel bernoulli_cumulant(double p) {
    CumulantModel m;
    m.dim = 1;
    m.psi = [p](const Vec& t) {
        const double s = std::max(0.0, t[0]);
        return s + std::log((1.0 - p) * std::exp(-s) + p * std::exp(t[0] - s));
    };
    m.grad_psi = [p](const Vec& t) {
        const double g = 1.0 / (1.0 + ((1.0 - p) / p) * std::exp(-t[0]));
        return Vec{g, 0.0};
    };
    m.hess_psi = [p](const Vec& t) {
        const double g = 1.0 / (1.0 + ((1.0 - p) / p) * std::exp(-t[0]));
        return Mat{g * (1.0 - g), 0.0, 0.0, 0.0};
    };
    m.mu0 = {p, 0.0};
    return m;
}

CumulantModel two_point_cumulant(double p_up) {
    CumulantModel m;
    m.dim = 1;
    const double q = 1.0 - p_up;
    m.psi = [p_up, q](const Vec& t) {
        const double s = std::fabs(t[0]);
        return s + std::log(p_up * std::exp(t[0] - s) + q * std::exp(-t[0] - s));
    };
    m.grad_psi = [p_up, q](const Vec& t) {
        const double ep = p_up * std::exp(t[0]), em = q * std::exp(-t[0]);
        return Vec{(ep - em) / (ep + em), 0.0};
    };
    m.hess_psi = [p_up, q](const Vec& t) {
        const double ep = p_up * std::exp(t[0]), em = q * std::exp(-t[0]);
        const double g = (ep - em) / (ep + em);
        return Mat{1.0 - g * g, 0.0, 0.0, 0.0};
    };
    m.mu0 = {2.0 * p_up - 1.0, 0.0};
    return m;
}

CumulantModel mixture_normal_cumulant() {
    // xi = (X, X^2), X ~ (1/2)N(1,1) + (1/2)N(-1,1).
    // psi(t1,t2) = log(1/2) - 1/2 + (t1^2+1)/(2a) - log(a)/2 + log(e^{t1/a}+e^{-t1/a}),
    // a = 1 - 2 t2, on Theta = {t2 < 1/2}.
    CumulantModel m;
    m.dim = 2;
    m.theta_domain = [](const Vec& t) { return t[1] < 0.5; };
    m.psi = [](const Vec& t) {
        const double a = 1.0 - 2.0 * t[1];
        return std::log(0.5) - 0.5 + (t[0] * t[0] + 1.0) / (2.0 * a) - 0.5 * std::log(a) +
               log_two_cosh(t[0] / a);
    };
    m.grad_psi = [](const Vec& t) {
        const double a = 1.0 - 2.0 * t[1];
        const double T = std::tanh(t[0] / a);
        const double g1 = (t[0] + T) / a;
        const double g2 = (t[0] * t[0] + 1.0) / (a * a) + 1.0 / a + 2.0 * t[0] * T / (a * a);
        return Vec{g1, g2};
    };
    m.hess_psi = [](const Vec& t) {
        const double a = 1.0 - 2.0 * t[1];
        const double T = std::tanh(t[0] / a);
        const double sech2 = 1.0 - T * T;
        const double a2 = a * a, a3 = a2 * a, a4 = a2 * a2;
        const double h11 = 1.0 / a + sech2 / a2;
        const double h12 = 2.0 * sech2 * t[0] / a3 + 2.0 * (t[0] + T) / a2;
        const double h22 = 4.0 * (t[0] * t[0] + 1.0) / a3 + 2.0 / a2 +
                           4.0 * t[0] * t[0] * sech2 / a4 + 8.0 * t[0] * T / a3;
        return Mat{h11, h12, h12, h22};
    };
    m.mu0 = {0.0, 2.0};
    return m;
}

CumulantModel numeric_cumulant(int dim, std::function<double(const Vec&)> psi,
                               std::function<bool(const Vec&)> domain) {
    CumulantModel m;
    m.dim = dim;
    m.psi = std::move(psi);
    m.theta_domain = std::move(domain);
    m.mu0 = m.grad({0.0, 0.0});
    return m;
}

namespace {

// d=1 fallback: grad_psi is increasing, so bracket and bisect.
Vec theta_of_mu_bisect(const CumulantModel& model, double mu) {
    auto g = [&](double t) { return model.grad({t, 0.0})[0] - mu; };
    double lo = 0.0, hi = 0.0;
    const double g0 = g(0.0);
    if (std::fabs(g0) <= tol::mean_param * (1.0 + std::fabs(mu))) return {0.0, 0.0};
    double step = 1.0;
    if (g0 < 0.0) {
        // expand to the right, shrinking when the step exits Theta
        double t = 0.0;
        for (int i = 0; i < 200; ++i) {
            double cand = t + step;
            if (!model.in_domain({cand, 0.0})) {
                step *= 0.5;
                if (step < 1e-14)
                    throw NonConvergence("theta_of_mu: mean outside the range of grad_psi");
                continue;
            }
            if (g(cand) >= 0.0) {
                lo = t;
                hi = cand;
                break;
            }
            t = cand;
            step *= 2.0;
            if (i == 199) throw NonConvergence("theta_of_mu: no bracket for grad_psi = mu");
        }
    } else {
        double t = 0.0;
        for (int i = 0; i < 200; ++i) {
            double cand = t - step;
            if (!model.in_domain({cand, 0.0})) {
                step *= 0.5;
                if (step < 1e-14)
                    throw NonConvergence("theta_of_mu: mean outside the range of grad_psi");
                continue;
            }
            if (g(cand) <= 0.0) {
                lo = cand;
                hi = t;
                break;
            }
            t = cand;
            step *= 2.0;
            if (i == 199) throw NonConvergence("theta_of_mu: no bracket for grad_psi = mu");
        }
    }
    const double root =
        bisect_increasing(g, lo, hi, tol::mean_param * (1.0 + std::fabs(mu)), 200);
    return {root, 0.0};
}

}  // namespace

Vec theta_of_mu(const CumulantModel& model, const Vec& mu, const Vec* hint) {
    const int d = model.dim;
    Vec theta{0.0, 0.0};
    if (hint && model.in_domain(*hint)) theta = *hint;
    const double target = tol::mean_param * (1.0 + norm(mu, d));
    Vec r = sub(model.grad(theta), mu);
    double rn = norm(r, d);
    for (int iter = 0; iter < tol::newton_max_iter; ++iter) {
        if (rn <= target) return theta;
        const Mat h = model.hess(theta);
        Vec delta;
        if (!solve_sym(h, r, d, delta)) break;
        delta = scale(delta, -1.0);
        double step = 1.0;
        bool moved = false;
        for (int bt = 0; bt <= tol::backtrack_max; ++bt) {
            const Vec cand = add(theta, scale(delta, step));
            if (model.in_domain(cand)) {
                const Vec rc = sub(model.grad(cand), mu);
                const double rcn = norm(rc, d);
                if (rcn < rn || rcn <= target) {
                    theta = cand;
                    r = rc;
                    rn = rcn;
                    moved = true;
                    break;
                }
            } else if (bt == tol::backtrack_max) {
                throw DomainError("theta_of_mu: Newton iterates pushed out of Theta");
            }
            step *= 0.5;
        }
        if (!moved) break;
    }
    if (rn <= target) return theta;
    if (d == 1) return theta_of_mu_bisect(model, mu[0]);
    std::ostringstream msg;
    msg << "theta_of_mu: Newton did not converge (residual " << rn << ")";
    throw NonConvergence(msg.str());
}

double rate(const CumulantModel& model, const Vec& mu) {
    const Vec theta = theta_of_mu(model, mu);
    double phi = dot(theta, mu, model.dim) - model.psi(theta);
    if (phi < 0.0 && phi > -1e-12) phi = 0.0;
    return phi;
}

double rate_at_theta(const CumulantModel& model, const Vec& theta) {
    if (!model.in_domain(theta)) return kInf;
    const Vec g = model.grad(theta);
    return dot(theta, g, model.dim) - model.psi(theta);
}

double theta_star(const CumulantModel& model) {
    if (model.dim != 1) throw DomainError("theta_star: requires a scalar model");
    if (!(model.mu0[0] < 0.0))
        throw DomainError("theta_star: increments must have negative mean");
    auto f = [&](double t) { return model.psi({t, 0.0}); };
    const double theta_max = 64.0;
    double lo = 0.0, hi = 0.0, fhi = 0.0;
    double step = 1e-4;
    double t = 0.0;
    for (;;) {
        double cand = t + step;
        if (cand > theta_max || !model.in_domain({cand, 0.0})) {
            step *= 0.5;
            if (step < 1e-15)
                throw BracketError("theta_star: no sign change of psi on (0, theta_max]");
            continue;
        }
        const double fc = f(cand);
        if (fc > 0.0) {
            if (t == 0.0) {
                // keep the left end strictly between 0 and the root, away from
                // the trivial root of psi at 0
                step *= 0.5;
                if (step < 1e-15)
                    throw BracketError("theta_star: no negative stretch of psi above 0");
                continue;
            }
            lo = t;
            hi = cand;
            fhi = fc;
            break;
        }
        t = cand;
        step *= 2.0;
    }
    double root = brent_root([&](double x) { return f(x); }, lo, hi, f(lo), fhi, 1e-13);
    // polish with Newton so |psi(root)| meets the residual tolerance
    for (int i = 0; i < 4 && std::fabs(f(root)) > tol::root_residual; ++i) {
        const double d = model.grad({root, 0.0})[0];
        if (d == 0.0) break;
        root -= f(root) / d;
    }
    return root;
}

double GFunction::operator()(const Vec& mu, int dim) const {
    switch (kind) {
        case Kind::identity:
            return mu[0];
        case Kind::self_normalized: {
            if (!(mu[1] > 0.0)) return -kInf;
            return mu[0] / std::sqrt(mu[1]);
        }
        case Kind::custom:
            return fn(mu, dim);
    }
    return 0.0;
}

namespace {

Vec grad_g_fd(const GFunction& g, const Vec& mu, int d) {
    const double h = 1e-6 * (1.0 + norm(mu, d));
    Vec out{0.0, 0.0};
    for (int i = 0; i < d; ++i) {
        Vec p = mu, m = mu;
        p[i] += h;
        m[i] -= h;
        out[i] = (g(p, d) - g(m, d)) / (2.0 * h);
    }
    return out;
}

Mat hess_g_fd(const GFunction& g, const Vec& mu, int d) {
    const double h = 1e-4 * (1.0 + norm(mu, d));
    Mat out{0.0, 0.0, 0.0, 0.0};
    const double f0 = g(mu, d);
    for (int i = 0; i < d; ++i) {
        Vec p = mu, m = mu;
        p[i] += h;
        m[i] -= h;
        out[2 * i + i] = (g(p, d) - 2.0 * f0 + g(m, d)) / (h * h);
    }
    if (d == 2) {
        Vec pp = mu, pm = mu, mp = mu, mm = mu;
        pp[0] += h; pp[1] += h;
        pm[0] += h; pm[1] -= h;
        mp[0] -= h; mp[1] += h;
        mm[0] -= h; mm[1] -= h;
        const double off = (g(pp, d) - g(pm, d) - g(mp, d) + g(mm, d)) / (4.0 * h * h);
        out[1] = out[2] = off;
    }
    return out;
}

bool solve3(double a[3][3], double b[3], double x[3]) {
    int piv[3] = {0, 1, 2};
    for (int k = 0; k < 3; ++k) {
        int p = k;
        for (int i = k + 1; i < 3; ++i)
            if (std::fabs(a[piv[i]][k]) > std::fabs(a[piv[p]][k])) p = i;
        std::swap(piv[k], piv[p]);
        if (a[piv[k]][k] == 0.0) return false;
        for (int i = k + 1; i < 3; ++i) {
            const double f = a[piv[i]][k] / a[piv[k]][k];
            for (int j = k; j < 3; ++j) a[piv[i]][j] -= f * a[piv[k]][j];
            b[piv[i]] -= f * b[piv[k]];
        }
    }
    for (int k = 2; k >= 0; --k) {
        double s = b[piv[k]];
        for (int j = k + 1; j < 3; ++j) s -= a[piv[k]][j] * x[j];
        x[k] = s / a[piv[k]][k];
    }
    return true;
}

struct KktPoint {
    Vec mu;
    double lambda;
    double residual;
};

// Newton on [theta_mu - lambda*grad_g; g - b] = 0 for the constrained rate minimum.
bool refine_kkt(const CumulantModel& model, const GFunction& g, double b, Vec mu,
                KktPoint& out) {
    const int d = model.dim;
    Vec theta;
    try {
        theta = theta_of_mu(model, mu);
    } catch (const NumericalError&) {
        return false;
    }
    const Vec gg0 = grad_g_fd(g, mu, d);
    double lambda = norm(theta, d) / std::max(norm(gg0, d), 1e-12);
    auto residual = [&](const Vec& m, double lam, Vec& th, double F[3]) -> bool {
        try {
            th = theta_of_mu(model, m, &th);
        } catch (const NumericalError&) {
            return false;
        }
        const Vec gg = grad_g_fd(g, m, d);
        F[0] = th[0] - lam * gg[0];
        F[1] = d > 1 ? th[1] - lam * gg[1] : 0.0;
        F[2] = g(m, d) - b;
        return true;
    };
    Vec th = theta;
    double F[3];
    if (!residual(mu, lambda, th, F)) return false;
    double fn = std::sqrt(F[0] * F[0] + F[1] * F[1] + F[2] * F[2]);
    for (int iter = 0; iter < 80; ++iter) {
        if (fn <= 1e-11 * (1.0 + std::fabs(b))) break;
        Mat h = model.hess(th);
        Mat hinv;
        const double det = d == 1 ? h[0] : h[0] * h[3] - h[1] * h[2];
        if (det == 0.0) return false;
        if (d == 1)
            hinv = {1.0 / h[0], 0.0, 0.0, 0.0};
        else
            hinv = {h[3] / det, -h[1] / det, -h[2] / det, h[0] / det};
        const Vec gg = grad_g_fd(g, mu, d);
        const Mat hg = hess_g_fd(g, mu, d);
        double J[3][3] = {{hinv[0] - lambda * hg[0], hinv[1] - lambda * hg[1], -gg[0]},
                          {hinv[2] - lambda * hg[2], hinv[3] - lambda * hg[3], -gg[1]},
                          {gg[0], gg[1], 0.0}};
        if (d == 1) {
            J[0][1] = 0.0;
            J[1][0] = 0.0;
            J[1][1] = 1.0;
            J[1][2] = 0.0;
            J[2][1] = 0.0;
        }
        double rhs[3] = {-F[0], -F[1], -F[2]};
        double dz[3];
        if (!solve3(J, rhs, dz)) return false;
        double step = 1.0;
        bool moved = false;
        for (int bt = 0; bt <= tol::backtrack_max; ++bt) {
            Vec mc = {mu[0] + step * dz[0], mu[1] + (d > 1 ? step * dz[1] : 0.0)};
            double lc = lambda + step * dz[2];
            Vec thc = th;
            double Fc[3];
            if (residual(mc, lc, thc, Fc)) {
                const double fcn = std::sqrt(Fc[0] * Fc[0] + Fc[1] * Fc[1] + Fc[2] * Fc[2]);
                if (fcn < fn) {
                    mu = mc;
                    lambda = lc;
                    th = thc;
                    F[0] = Fc[0];
                    F[1] = Fc[1];
                    F[2] = Fc[2];
                    fn = fcn;
                    moved = true;
                    break;
                }
            }
            step *= 0.5;
        }
        if (!moved) break;
    }
    if (!(fn <= 1e-8 * (1.0 + std::fabs(b)))) return false;
    out = {mu, lambda, fn};
    return true;
}

}  // namespace

RateMin compute_I(const CumulantModel& model, const GFunction& g, double b) {
    const int d = model.dim;
    if (!(g(model.mu0, d) < b))
        throw DomainError("compute_I: b must exceed g(mu0) for a rare event");

    if (d == 1 && g.kind == GFunction::Kind::identity) {
        RateMin out;
        out.mu_star = {b, 0.0};
        out.I = rate(model, out.mu_star);
        return out;
    }

    // coarse feasible scan around mu0, scaled by the increment covariance
    const Mat h0 = model.hess({0.0, 0.0});
    const double s0 = std::sqrt(std::max(h0[0], 1e-12));
    const double s1 = d > 1 ? std::sqrt(std::max(h0[3], 1e-12)) : 0.0;
    const int n0 = 81, n1 = d > 1 ? 81 : 1;
    const double w = 8.0;
    bool found = false;
    double best = kInf;
    Vec best_mu{0.0, 0.0};
    for (int i = 0; i < n0; ++i) {
        for (int j = 0; j < n1; ++j) {
            Vec mu = model.mu0;
            mu[0] += w * s0 * (2.0 * i / (n0 - 1.0) - 1.0);
            if (d > 1) mu[1] += w * s1 * (2.0 * j / (n1 - 1.0) - 1.0);
            if (!(g(mu, d) >= b)) continue;
            double phi;
            try {
                phi = rate(model, mu);
            } catch (const NumericalError&) {
                continue;
            }
            found = true;
            if (phi < best) {
                best = phi;
                best_mu = mu;
            }
        }
    }
    if (!found)
        throw InfeasibleEvent("compute_I: no feasible mean with g(mu) >= b in the search region");

    KktPoint kkt;
    if (refine_kkt(model, g, b, best_mu, kkt)) {
        double phi;
        try {
            phi = rate(model, kkt.mu);
            if (phi <= best + 1e-9 && g(kkt.mu, d) >= b - 1e-7 * (1.0 + std::fabs(b))) {
                best = phi;
                best_mu = kkt.mu;
            }
        } catch (const NumericalError&) {
        }
    } else {
        // shrink the grid around the best cell a few times
        double w0 = w * s0 * 2.0 / (n0 - 1.0);
        double w1 = d > 1 ? w * s1 * 2.0 / (n1 - 1.0) : 0.0;
        for (int round = 0; round < 6; ++round) {
            Vec center = best_mu;
            for (int i = -8; i <= 8; ++i) {
                for (int j = (d > 1 ? -8 : 0); j <= (d > 1 ? 8 : 0); ++j) {
                    Vec mu = center;
                    mu[0] += w0 * i / 8.0;
                    if (d > 1) mu[1] += w1 * j / 8.0;
                    if (!(g(mu, d) >= b)) continue;
                    double phi;
                    try {
                        phi = rate(model, mu);
                    } catch (const NumericalError&) {
                        continue;
                    }
                    if (phi < best) {
                        best = phi;
                        best_mu = mu;
                    }
                }
            }
            w0 /= 8.0;
            w1 /= 8.0;
        }
    }
    return {best, best_mu};
}

// ---------------------------------------------------------------------------
// LevelSet

namespace {

// Largest step along `dir` that stays in Theta, starting from r_ok.
double domain_edge(const CumulantModel& model, const Vec& dir, double r_ok, double r_bad) {
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (r_ok + r_bad);
        if (model.in_domain(scale(dir, mid)))
            r_ok = mid;
        else
            r_bad = mid;
    }
    return r_ok;
}

// Radius r with phi(mu_{r*dir}) = I; phi is increasing along rays from 0.
// Returns a capped radius if the ray exits Theta before reaching level I.
double ray_radius(const CumulantModel& model, const Vec& dir, double level) {
    auto f = [&](double r) { return rate_at_theta(model, scale(dir, r)) - level; };
    double lo = 0.0, hi = 0.0;
    double r = 0.0, step = 0.125;
    for (int i = 0; i < 400; ++i) {
        double cand = r + step;
        if (!model.in_domain(scale(dir, cand))) {
            const double edge = domain_edge(model, dir, r, cand);
            if (f(edge) < 0.0) return edge;  // M reaches the domain boundary
            lo = r;
            hi = edge;
            break;
        }
        const double fc = f(cand);
        if (fc >= 0.0) {
            lo = r;
            hi = cand;
            break;
        }
        r = cand;
        step *= 2.0;
        if (cand > 1e7) return cand;  // degenerate flat rate; cap
    }
    if (hi == 0.0) return r;
    for (int i = 0; i < 100; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (std::fabs(fm) <= 1e-12) return mid;
        if (fm < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

constexpr int kBoundaryTable = 512;

}  // namespace

LevelSet::LevelSet(CumulantModel model, double rate_bound)
    : model_(std::move(model)), rate_bound_(rate_bound) {
    if (std::isinf(rate_bound_)) {
        unbounded_ = true;
        kappa_ = kInf;
        return;
    }
    if (!(rate_bound_ >= 0.0)) throw DomainError("LevelSet: rate bound must be nonnegative");
    if (model_.dim == 1) {
        thi_ = ray_radius(model_, {1.0, 0.0}, rate_bound_);
        tlo_ = -ray_radius(model_, {-1.0, 0.0}, rate_bound_);
        kappa_ = std::max(std::fabs(tlo_), thi_);
    } else {
        bnd_radius_.resize(kBoundaryTable);
        for (int k = 0; k < kBoundaryTable; ++k) {
            const double omega = 2.0 * kPi * k / kBoundaryTable;
            bnd_radius_[k] = ray_radius(model_, {std::cos(omega), std::sin(omega)}, rate_bound_);
            kappa_ = std::max(kappa_, bnd_radius_[k]);
        }
    }
}

bool LevelSet::member(const Vec& theta) const {
    if (!model_.in_domain(theta)) return false;
    if (unbounded_) return true;
    return rate_at_theta(model_, theta) <= rate_bound_ + tol::membership_slack;
}

double LevelSet::boundary_radius(double omega) const {
    return ray_radius(model_, {std::cos(omega), std::sin(omega)}, rate_bound_);
}

double LevelSet::boundary_radius_interp(double omega) const {
    const double u = omega / (2.0 * kPi) * kBoundaryTable;
    int k = static_cast<int>(std::floor(u));
    const double frac = u - k;
    k = ((k % kBoundaryTable) + kBoundaryTable) % kBoundaryTable;
    const int k1 = (k + 1) % kBoundaryTable;
    return (1.0 - frac) * bnd_radius_[k] + frac * bnd_radius_[k1];
}

Vec LevelSet::boundary_point(double omega) const {
    const double r = boundary_radius_interp(omega);
    return {r * std::cos(omega), r * std::sin(omega)};
}

Vec LevelSet::argmax(const Vec& x, int t, const Vec* hint) const {
    const int d = model_.dim;
    const Vec mu = scale(x, 1.0 / t);
    auto objective = [&](const Vec& th) { return dot(th, mu, d) - model_.psi(th); };

    if (unbounded_) return theta_of_mu(model_, mu, hint);

    if (d == 1) {
        // concave objective on the interval [tlo, thi]
        auto slope = [&](double th) { return mu[0] - model_.grad({th, 0.0})[0]; };
        if (slope(thi_) >= 0.0) return {thi_, 0.0};
        if (slope(tlo_) <= 0.0) return {tlo_, 0.0};
        try {
            const Vec th = theta_of_mu(model_, mu, hint);
            return {std::clamp(th[0], tlo_, thi_), 0.0};
        } catch (const NumericalError&) {
            double lo = tlo_, hi = thi_;
            for (int i = 0; i < 200; ++i) {
                const double mid = 0.5 * (lo + hi);
                if (slope(mid) > 0.0)
                    lo = mid;
                else
                    hi = mid;
            }
            return {0.5 * (lo + hi), 0.0};
        }
    }

    // interior fast path
    try {
        const Vec th = theta_of_mu(model_, mu, hint);
        if (member(th)) return th;
    } catch (const NumericalError&) {
        // fall through to the boundary search
    }

    // The unconstrained maximizer lies outside M, so the constrained one is
    // on the boundary. Scan the precomputed radial table, then refine the
    // boundary angle by golden-section, then polish the radius exactly.
    constexpr int stride = 8;
    const int coarse = kBoundaryTable / stride;
    int best_k = 0;
    double best_val = -kInf;
    Vec best_theta{0.0, 0.0};
    for (int k = 0; k < coarse; ++k) {
        const int idx = k * stride;
        const double omega = 2.0 * kPi * idx / kBoundaryTable;
        const double r = bnd_radius_[idx];
        const Vec th = {r * std::cos(omega), r * std::sin(omega)};
        const double v = objective(th);
        if (v > best_val + 1e-12 ||
            (std::fabs(v - best_val) <= 1e-12 && lex_less(th, best_theta, d))) {
            best_val = v;
            best_k = k;
            best_theta = th;
        }
    }
    const double width = 2.0 * kPi * stride / kBoundaryTable;
    double a = 2.0 * kPi * best_k * stride / kBoundaryTable - width;
    double b = a + 2.0 * width;
    constexpr double gr = 0.6180339887498949;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = objective(boundary_point(x1)), f2 = objective(boundary_point(x2));
    for (int i = 0; i < 60 && (b - a) > 1e-7; ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = objective(boundary_point(x2));
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = objective(boundary_point(x1));
        }
    }
    const double omega = 0.5 * (a + b);
    const double r = boundary_radius(omega);
    return {r * std::cos(omega), r * std::sin(omega)};
}

}  // namespace sisr
