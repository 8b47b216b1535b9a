#include "sisr/engine.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sisr/errors.hpp"
#include "sisr/rng.hpp"
#include "sisr/tolerances.hpp"

namespace sisr {

double resampling_gamma(double x) {
    if (!(x > 0.0)) throw DomainError("resampling_gamma: x must be positive");
    const double frac = x - std::floor(x);
    return frac * (1.0 - frac) / x;
}

ParticleSystem::ParticleSystem(int m, const Model& model, const WeightSchedule& schedule,
                               Resampler resampler, std::uint64_t seed, std::uint64_t lane)
    : model_(model),
      schedule_(schedule),
      resampler_(resampler),
      seed_(seed),
      lane_(lane),
      m0_(m) {
    if (m < 2) throw ConfigError("ParticleSystem: population must be at least 2");
    particles_.resize(m);
    for (int i = 0; i < m; ++i) {
        particles_[i].state = model.initial_state();
        particles_[i].origin = i;
    }
    corrections_.assign(m, 0.0);
    log_wbar_.push_back(0.0);  // stage 0 placeholder, h_0 = 1
}

void ParticleSystem::mutate(int t) {
    if (t != stage_ + 1)
        throw ConfigError("ParticleSystem::mutate: stages must advance one at a time");
    const int mt = population();
    for (int i = 0; i < mt; ++i) {
        Particle& p = particles_[i];
        Stream rng(seed_, lane_, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(t));
        p.prev_state = p.state;
        p.prev_sum = p.sum;
        auto [next_state, xi] = model_.step(p.state, rng);
        p.state = next_state;
        p.xi = xi;
        p.sum = add(p.prev_sum, xi);
        schedule_.advance_stop(p, t);
        p.log_w = schedule_.log_weight(p, t);
    }
    // log of the mean raw weight, max-shifted
    double shift = particles_[0].log_w;
    for (int i = 1; i < mt; ++i) shift = std::max(shift, particles_[i].log_w);
    double acc = 0.0;
    for (int i = 0; i < mt; ++i) acc += std::exp(particles_[i].log_w - shift);
    if (!(acc > 0.0) || shift + std::log(acc) < tol::log_weight_floor) {
        std::ostringstream msg;
        msg << "mutate: resampling weights degenerate at stage " << t
            << " (log sum = " << shift + std::log(acc) << ")";
        throw DegenerateWeights(msg.str());
    }
    log_wbar_.push_back(shift + std::log(acc / mt));
    stage_ = t;
}

void ParticleSystem::resample(int t) {
    if (t != stage_) throw ConfigError("ParticleSystem::resample: mutate stage t first");
    const int mt = population();
    const double log_wbar = log_wbar_[t];

    // normalized weights (max-shifted) and their cumulative sums; dividing by
    // the shifted sum keeps the uniform case exact
    std::vector<double> norm(mt), cum(mt);
    double shift = particles_[0].log_w;
    for (int i = 1; i < mt; ++i) shift = std::max(shift, particles_[i].log_w);
    double total = 0.0;
    for (int i = 0; i < mt; ++i) {
        norm[i] = std::exp(particles_[i].log_w - shift);
        total += norm[i];
    }
    double acc = 0.0;
    for (int i = 0; i < mt; ++i) {
        norm[i] /= total;
        acc += norm[i];
        cum[i] = acc;
    }
    cum[mt - 1] = 1.0;

    Stream rng(seed_, lane_, unit_resample, static_cast<std::uint64_t>(t));
    offspring_.assign(mt, 0);
    int next_pop = 0;
    if (resampler_ == Resampler::bootstrap) {
        for (int j = 0; j < mt; ++j) {
            const double u = rng.uniform();
            const int idx = static_cast<int>(
                std::lower_bound(cum.begin(), cum.end(), u) - cum.begin());
            ++offspring_[idx];
        }
        next_pop = mt;
    } else {
        for (int i = 0; i < mt; ++i) {
            const double scaled = mt * norm[i];
            const double frac = scaled - std::floor(scaled);
            const double u = rng.uniform();  // one uniform per particle, always
            offspring_[i] = static_cast<int>(std::floor(scaled)) + (u < frac ? 1 : 0);
            next_pop += offspring_[i];
        }
        if (next_pop == 0)
            throw PopulationCollapse("resample: residual scheme produced an empty population");
    }

    for (int i = 0; i < mt; ++i)
        corrections_[particles_[i].origin] += offspring_[i] - mt * norm[i];

    std::vector<Particle> next;
    next.reserve(next_pop);
    for (int i = 0; i < mt; ++i) {
        if (offspring_[i] == 0) continue;
        Particle child = particles_[i];
        if (resampler_ == Resampler::bootstrap)
            child.log_h += log_wbar - child.log_w;
        else
            child.log_h -= std::log(static_cast<double>(mt) * norm[i]);
        for (int k = 0; k < offspring_[i]; ++k) next.push_back(child);
    }
    particles_ = std::move(next);
}

double ParticleSystem::estimate(const EventSpec& event) const {
    const int mn = population();
    TrajectorySummary summary;
    summary.length = stage_;
    summary.dim = model_.dim();
    double acc = 0.0;
    for (const Particle& p : particles_) {
        summary.terminal_sum = p.sum;
        summary.crossed = p.crossed;
        if (event_holds(event, summary)) acc += std::exp(p.log_l + p.log_h);
    }
    return acc / mn;
}

double ParticleSystem::variance_estimate(const EventSpec& event, double alpha_hat) const {
    TrajectorySummary summary;
    summary.length = stage_;
    summary.dim = model_.dim();
    std::vector<double> origin_sum(m0_, 0.0);
    for (const Particle& p : particles_) {
        summary.terminal_sum = p.sum;
        summary.crossed = p.crossed;
        if (event_holds(event, summary))
            origin_sum[p.origin] += std::exp(p.log_l + p.log_h);
    }
    double acc = 0.0;
    for (int j = 0; j < m0_; ++j) {
        const double dev = origin_sum[j] - (1.0 + corrections_[j]) * alpha_hat;
        acc += dev * dev;
    }
    return acc / m0_;
}

EngineResult run_engine(int m, const Model& model, const WeightSchedule& schedule,
                        const EventSpec& event, Resampler resampler, std::uint64_t seed,
                        std::uint64_t lane) {
    const int n = event.horizon();
    if (n < 1) throw ConfigError("run_engine: event horizon must be at least 1");
    ParticleSystem system(m, model, schedule, resampler, seed, lane);
    for (int t = 1; t <= n; ++t) {
        system.mutate(t);
        if (t < n) system.resample(t);
    }
    EngineResult out;
    out.alpha = system.estimate(event);
    out.sigma_sq = system.variance_estimate(event, out.alpha);
    out.terminal_population = system.population();
    return out;
}

}  // namespace sisr
