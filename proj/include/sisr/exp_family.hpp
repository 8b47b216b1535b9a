#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "sisr/vec.hpp"

namespace sisr {

// Evaluator bundle for a cumulant generating function psi(theta) = log E e^{theta'xi}
// over its natural-parameter domain Theta. grad/hess fall back to central
// finite differences when no closed form is supplied.
struct CumulantModel {
    int dim = 1;
    std::function<double(const Vec&)> psi;
    std::function<Vec(const Vec&)> grad_psi;        // may be empty
    std::function<Mat(const Vec&)> hess_psi;        // may be empty
    std::function<bool(const Vec&)> theta_domain;   // may be empty (= all of R^d)
    Vec mu0{0.0, 0.0};                              // increment mean, grad_psi(0)

    bool in_domain(const Vec& theta) const { return !theta_domain || theta_domain(theta); }
    Vec grad(const Vec& theta) const;
    Mat hess(const Vec& theta) const;
};

CumulantModel gaussian_cumulant(double mean, double sd);
CumulantModel bernoulli_cumulant(double p);
// xi in {-1,+1} with P{+1} = p_up.
CumulantModel two_point_cumulant(double p_up);
// xi = (X, X^2) with X an equal mixture of N(1,1) and N(-1,1).
CumulantModel mixture_normal_cumulant();
// Finite-difference derivatives throughout.
CumulantModel numeric_cumulant(int dim, std::function<double(const Vec&)> psi,
                               std::function<bool(const Vec&)> domain = nullptr);

// theta with grad_psi(theta) = mu (Newton, damped; bisection fallback in d=1).
Vec theta_of_mu(const CumulantModel& model, const Vec& mu, const Vec* hint = nullptr);

// Legendre transform phi(mu) = theta_mu'mu - psi(theta_mu).
double rate(const CumulantModel& model, const Vec& mu);

// phi(mu_theta) evaluated directly as theta'grad_psi(theta) - psi(theta).
double rate_at_theta(const CumulantModel& model, const Vec& theta);

// Unique positive root of psi (requires d=1, negative-drift increments).
double theta_star(const CumulantModel& model);

// Terminal functional g applied to S_n/n.
struct GFunction {
    enum class Kind { identity, self_normalized, custom };
    Kind kind = Kind::identity;
    std::function<double(const Vec&, int)> fn;  // used for Kind::custom

    // self_normalized: g(y,v) = y/sqrt(v), -inf when v <= 0.
    double operator()(const Vec& mu, int dim) const;
};

struct RateMin {
    double I = 0.0;
    Vec mu_star{0.0, 0.0};
};

// I = inf{ phi(mu) : g(mu) >= b }, with the minimizing mean.
RateMin compute_I(const CumulantModel& model, const GFunction& g, double b);

// The tilt-parameter level set M = { theta : phi(mu_theta) <= I } together
// with the constrained argmax used by the adaptive weight schedules.
class LevelSet {
  public:
    LevelSet(CumulantModel model, double rate_bound);

    const CumulantModel& model() const { return model_; }
    double rate_bound() const { return rate_bound_; }
    int dim() const { return model_.dim; }
    bool unbounded() const { return unbounded_; }

    bool member(const Vec& theta) const;
    // sup ||theta|| over M; diagnostic only.
    double kappa() const { return kappa_; }
    // d=1 interval endpoints of M.
    double lo() const { return tlo_; }
    double hi() const { return thi_; }

    // argmax over M of theta'x/t - psi(theta). hint = previous stage's argmax.
    Vec argmax(const Vec& x, int t, const Vec* hint = nullptr) const;

  private:
    double boundary_radius(double omega) const;        // exact, by bisection
    double boundary_radius_interp(double omega) const;  // from precomputed table
    Vec boundary_point(double omega) const;

    CumulantModel model_;
    double rate_bound_;
    bool unbounded_ = false;
    double tlo_ = 0.0, thi_ = 0.0;       // d=1
    std::vector<double> bnd_radius_;     // d=2: radius at angle 2*pi*k/N
    double kappa_ = 0.0;
};

}  // namespace sisr
