#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "sisr/exp_family.hpp"
#include "sisr/rng.hpp"
#include "sisr/vec.hpp"

namespace sisr {

// Increment sampler plus model-state transition. The i.i.d. models carry a
// unit token as state so both kinds share one engine interface.
class Model {
  public:
    virtual ~Model() = default;
    virtual int dim() const = 0;
    virtual bool iid() const = 0;
    virtual double initial_state() const { return 0.0; }
    // (new_state, xi) given the current state and the particle's stream.
    virtual std::pair<double, Vec> step(double state, Stream& rng) const = 0;
    virtual const CumulantModel* closed_form_cumulant() const { return nullptr; }
    virtual std::string name() const = 0;
};

class GaussianWalk final : public Model {
  public:
    GaussianWalk(double mean, double sd);
    int dim() const override { return 1; }
    bool iid() const override { return true; }
    std::pair<double, Vec> step(double, Stream& rng) const override;
    const CumulantModel* closed_form_cumulant() const override { return &cumulant_; }
    std::string name() const override { return "gaussian"; }

  private:
    double mean_, sd_;
    CumulantModel cumulant_;
};

class BernoulliWalk final : public Model {
  public:
    explicit BernoulliWalk(double p);
    int dim() const override { return 1; }
    bool iid() const override { return true; }
    std::pair<double, Vec> step(double, Stream& rng) const override;
    const CumulantModel* closed_form_cumulant() const override { return &cumulant_; }
    std::string name() const override { return "bernoulli"; }

  private:
    double p_;
    CumulantModel cumulant_;
};

// xi in {-1,+1} with P{+1} = p_up.
class TwoPointWalk final : public Model {
  public:
    explicit TwoPointWalk(double p_up);
    int dim() const override { return 1; }
    bool iid() const override { return true; }
    std::pair<double, Vec> step(double, Stream& rng) const override;
    const CumulantModel* closed_form_cumulant() const override { return &cumulant_; }
    std::string name() const override { return "two_point"; }

  private:
    double p_up_;
    CumulantModel cumulant_;
};

class PointMassWalk final : public Model {
  public:
    explicit PointMassWalk(double value) : value_(value) {}
    int dim() const override { return 1; }
    bool iid() const override { return true; }
    std::pair<double, Vec> step(double, Stream&) const override { return {0.0, {value_, 0.0}}; }
    std::string name() const override { return "point_mass"; }

  private:
    double value_;
};

// xi = (X, X^2) with X an equal mixture of N(1,1) and N(-1,1); feeds the
// self-normalized-sum tail study.
class MixtureNormalWalk final : public Model {
  public:
    MixtureNormalWalk();
    int dim() const override { return 2; }
    bool iid() const override { return true; }
    std::pair<double, Vec> step(double, Stream& rng) const override;
    const CumulantModel* closed_form_cumulant() const override { return &cumulant_; }
    std::string name() const override { return "mixture_normal"; }

  private:
    CumulantModel cumulant_;
};

// X_{t} = lambda(X_{t-1}) + zeta_t, xi_t = X_t + gamma_t with standard normal
// zeta, gamma. The cumulant has no closed form; the spectral module supplies
// a numerical proxy.
class NonlinearArWalk final : public Model {
  public:
    explicit NonlinearArWalk(double x0) : x0_(x0) {}
    int dim() const override { return 1; }
    bool iid() const override { return false; }
    double initial_state() const override { return x0_; }
    std::pair<double, Vec> step(double state, Stream& rng) const override;
    std::string name() const override { return "nonlinear_ar"; }

  private:
    double x0_;
};

// Piecewise-linear state map: identity on [-1,1], slope 1/2 outside.
double lambda_pw(double x);

// Drift function u(x) = exp(2.1 * theta * max(x,0)) >= 1.
double u_drift(double x, double theta);
double log_u_drift(double x, double theta);

// Terminal event: fixed-horizon { g(S_n/n) >= b } or boundary-crossing
// { T_c <= n1 } with T_c = inf{ n >= n0 : n*g(S_n/n) >= c } ^ n1.
struct EventSpec {
    enum class Kind { fixed_horizon, boundary_crossing };
    Kind kind = Kind::fixed_horizon;
    GFunction g;
    double b = 0.0;      // fixed horizon threshold
    int n = 0;           // fixed horizon length
    double c = 0.0;      // boundary level
    int n0 = 1, n1 = 0;  // boundary window

    int horizon() const { return kind == Kind::fixed_horizon ? n : n1; }
};

struct TrajectorySummary {
    Vec terminal_sum{0.0, 0.0};
    int length = 0;
    int dim = 1;
    bool crossed = false;  // boundary-crossing record
};

bool event_holds(const EventSpec& event, const TrajectorySummary& summary);

// Monte Carlo spot check of the drift conditions for the nonlinear AR model:
// per grid point, the ratios E_x[e^{theta xi - psi} u(X1)] / u(x) and
// E_x[e^{2 theta xi - 2 psi} u^2(X1)] / u^2(x), with standard errors.
struct DriftCheckRow {
    double x = 0.0;
    double ratio = 0.0;     // (U2)/(U3) quantity
    double se = 0.0;
    double ratio_sq = 0.0;  // (U4) quantity
    double se_sq = 0.0;
    bool flagged = false;   // x > rho and ratio exceeds 1 by more than 3*se
};

std::vector<DriftCheckRow> check_drift_numeric(const NonlinearArWalk& model, double theta,
                                               double psi_theta, double rho,
                                               const std::vector<double>& grid, int inner_samples,
                                               std::uint64_t seed);

}  // namespace sisr
