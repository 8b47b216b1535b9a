#pragma once

#include <memory>
#include <string>

#include "sisr/exp_family.hpp"
#include "sisr/models.hpp"
#include "sisr/particle.hpp"

namespace sisr {

// Resampling-weight strategy w_t. Weights are evaluated in log space; the
// engine normalizes with a max shift. Immutable after construction.
class WeightSchedule {
  public:
    enum class Kind {
        uniform,
        fixed_tilt,
        adaptive_tilt,
        stopped_fixed,
        stopped_adaptive,
        drift_weighted,
    };

    WeightSchedule() = default;  // uniform

    static WeightSchedule uniform();
    // w_t = exp(theta'xi_t - psi(theta))
    static WeightSchedule fixed_tilt(Vec theta, double psi_theta, int dim);
    // w_t = exp(exponent_t - exponent_{t-1}), exponent_t = theta_t'S_t - t psi(theta_t),
    // theta_t the argmax over the level set M
    static WeightSchedule adaptive_tilt(std::shared_ptr<const LevelSet> levelset);
    // boundary-crossing variant: tilted up to T_c, unit weight afterwards
    static WeightSchedule stopped_fixed(double theta, double psi_theta, EventSpec stop);
    static WeightSchedule stopped_adaptive(std::shared_ptr<const LevelSet> levelset,
                                           EventSpec stop);
    // w_t = exp(theta xi_t - psi(theta)) u(X_t)/u(X_{t-1}), u(x)=e^{2.1 u_theta x+}
    static WeightSchedule drift_weighted(double theta, double psi_theta, double u_theta);

    Kind kind() const { return kind_; }
    bool stopped_kind() const {
        return kind_ == Kind::stopped_fixed || kind_ == Kind::stopped_adaptive;
    }
    bool adaptive_kind() const {
        return kind_ == Kind::adaptive_tilt || kind_ == Kind::stopped_adaptive;
    }
    const Vec& theta() const { return theta_; }
    double psi_theta() const { return psi_theta_; }
    const LevelSet* levelset() const { return levelset_.get(); }
    std::string kind_name() const;

    // Update the particle's stopping status from S_t at stage t (stopped kinds).
    void advance_stop(Particle& p, int t) const;

    // Raw log w_t for the particle's freshly mutated stage t; updates the
    // particle's schedule cache for the adaptive kinds.
    double log_weight(Particle& p, int t) const;

  private:
    Kind kind_ = Kind::uniform;
    int dim_ = 1;
    Vec theta_{0.0, 0.0};
    double psi_theta_ = 0.0;
    double u_theta_ = 0.0;
    std::shared_ptr<const LevelSet> levelset_;
    EventSpec stop_;
};

}  // namespace sisr
