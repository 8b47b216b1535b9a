#include "sisr/schedules.hpp"

#include <utility>

namespace sisr {

WeightSchedule WeightSchedule::uniform() {
    WeightSchedule s;
    s.kind_ = Kind::uniform;
    return s;
}

WeightSchedule WeightSchedule::fixed_tilt(Vec theta, double psi_theta, int dim) {
    WeightSchedule s;
    s.kind_ = Kind::fixed_tilt;
    s.theta_ = theta;
    s.psi_theta_ = psi_theta;
    s.dim_ = dim;
    return s;
}

WeightSchedule WeightSchedule::adaptive_tilt(std::shared_ptr<const LevelSet> levelset) {
    WeightSchedule s;
    s.kind_ = Kind::adaptive_tilt;
    s.dim_ = levelset->dim();
    s.levelset_ = std::move(levelset);
    return s;
}

WeightSchedule WeightSchedule::stopped_fixed(double theta, double psi_theta, EventSpec stop) {
    WeightSchedule s;
    s.kind_ = Kind::stopped_fixed;
    s.theta_ = {theta, 0.0};
    s.psi_theta_ = psi_theta;
    s.dim_ = 1;
    s.stop_ = std::move(stop);
    return s;
}

WeightSchedule WeightSchedule::stopped_adaptive(std::shared_ptr<const LevelSet> levelset,
                                                EventSpec stop) {
    WeightSchedule s;
    s.kind_ = Kind::stopped_adaptive;
    s.dim_ = levelset->dim();
    s.levelset_ = std::move(levelset);
    s.stop_ = std::move(stop);
    return s;
}

WeightSchedule WeightSchedule::drift_weighted(double theta, double psi_theta, double u_theta) {
    WeightSchedule s;
    s.kind_ = Kind::drift_weighted;
    s.theta_ = {theta, 0.0};
    s.psi_theta_ = psi_theta;
    s.u_theta_ = u_theta;
    s.dim_ = 1;
    return s;
}

std::string WeightSchedule::kind_name() const {
    switch (kind_) {
        case Kind::uniform: return "uniform";
        case Kind::fixed_tilt: return "fixed_tilt";
        case Kind::adaptive_tilt: return "adaptive_tilt";
        case Kind::stopped_fixed: return "stopped_fixed";
        case Kind::stopped_adaptive: return "stopped_adaptive";
        case Kind::drift_weighted: return "drift_weighted";
    }
    return "?";
}

void WeightSchedule::advance_stop(Particle& p, int t) const {
    if (!stopped_kind() || p.stop_stage != kNoStop) return;
    if (t >= stop_.n0) {
        const Vec mean = scale(p.sum, 1.0 / t);
        if (t * stop_.g(mean, dim_) >= stop_.c) {
            p.stop_stage = t;
            p.crossed = true;
            return;
        }
    }
    if (t >= stop_.n1) p.stop_stage = stop_.n1;  // window clamp, no crossing
}

double WeightSchedule::log_weight(Particle& p, int t) const {
    switch (kind_) {
        case Kind::uniform:
            return 0.0;
        case Kind::fixed_tilt:
            return dot(theta_, p.xi, dim_) - psi_theta_;
        case Kind::stopped_fixed:
            if (t > p.stop_stage) return 0.0;
            return dot(theta_, p.xi, dim_) - psi_theta_;
        case Kind::drift_weighted:
            return theta_[0] * p.xi[0] - psi_theta_ + log_u_drift(p.state, u_theta_) -
                   log_u_drift(p.prev_state, u_theta_);
        case Kind::adaptive_tilt:
        case Kind::stopped_adaptive: {
            if (kind_ == Kind::stopped_adaptive && t > p.stop_stage) return 0.0;
            const Vec hint = p.cache.theta_prev;
            const Vec theta_t = levelset_->argmax(p.sum, t, &hint);
            const double exponent =
                dot(theta_t, p.sum, dim_) - t * levelset_->model().psi(theta_t);
            const double lw = exponent - p.cache.exponent_prev;
            p.cache.theta_prev = theta_t;
            p.cache.exponent_prev = exponent;
            return lw;
        }
    }
    return 0.0;
}

}  // namespace sisr
