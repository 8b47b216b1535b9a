#pragma once

#include <cstdint>
#include <vector>

#include "sisr/models.hpp"
#include "sisr/particle.hpp"
#include "sisr/schedules.hpp"

namespace sisr {

enum class Resampler { bootstrap, residual };

// gamma(x) = (x - floor(x)) * (1 - x + floor(x)) / x, x > 0; vanishes at integers.
double resampling_gamma(double x);

// One interacting particle population. Mutation extends every trajectory by
// one increment, selection resamples the population from the schedule's
// weights. No resampling happens at the terminal stage: the estimator reads
// the freshly mutated population with the h factors of stage n-1.
class ParticleSystem {
  public:
    ParticleSystem(int m, const Model& model, const WeightSchedule& schedule,
                   Resampler resampler, std::uint64_t seed, std::uint64_t lane);

    void mutate(int t);    // stage t = 1, 2, ...
    void resample(int t);  // after mutate(t), t < n

    double estimate(const EventSpec& event) const;
    double variance_estimate(const EventSpec& event, double alpha_hat) const;

    int stage() const { return stage_; }
    int population() const { return static_cast<int>(particles_.size()); }
    int initial_population() const { return m0_; }
    const std::vector<Particle>& particles() const { return particles_; }
    const std::vector<double>& log_wbar_history() const { return log_wbar_; }
    const std::vector<double>& origin_corrections() const { return corrections_; }
    const std::vector<int>& last_offspring_counts() const { return offspring_; }

  private:
    const Model& model_;
    const WeightSchedule& schedule_;
    Resampler resampler_;
    std::uint64_t seed_;
    std::uint64_t lane_;
    int m0_;
    int stage_ = 0;
    std::vector<Particle> particles_;
    std::vector<double> log_wbar_;     // stage-indexed, log of mean raw weight
    std::vector<double> corrections_;  // per origin: sum_t sum_i (#_t - m_t w_t)
    std::vector<int> offspring_;       // scratch from the last resample
};

struct EngineResult {
    double alpha = 0.0;
    double sigma_sq = 0.0;  // martingale variance estimate (per-particle scale)
    int terminal_population = 0;
};

// Full run: mutate(1..n) with resample(1..n-1), then both estimators.
EngineResult run_engine(int m, const Model& model, const WeightSchedule& schedule,
                        const EventSpec& event, Resampler resampler, std::uint64_t seed,
                        std::uint64_t lane);

}  // namespace sisr
