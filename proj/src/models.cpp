#include "sisr/models.hpp"

#include <cmath>

namespace sisr {

GaussianWalk::GaussianWalk(double mean, double sd)
    : mean_(mean), sd_(sd), cumulant_(gaussian_cumulant(mean, sd)) {}

std::pair<double, Vec> GaussianWalk::step(double, Stream& rng) const {
    const double z = rng.normal();
    return {0.0, {mean_ + sd_ * z, 0.0}};
}

BernoulliWalk::BernoulliWalk(double p) : p_(p), cumulant_(bernoulli_cumulant(p)) {}

std::pair<double, Vec> BernoulliWalk::step(double, Stream& rng) const {
    return {0.0, {rng.uniform() < p_ ? 1.0 : 0.0, 0.0}};
}

TwoPointWalk::TwoPointWalk(double p_up) : p_up_(p_up), cumulant_(two_point_cumulant(p_up)) {}

std::pair<double, Vec> TwoPointWalk::step(double, Stream& rng) const {
    return {0.0, {rng.uniform() < p_up_ ? 1.0 : -1.0, 0.0}};
}

MixtureNormalWalk::MixtureNormalWalk() : cumulant_(mixture_normal_cumulant()) {}

std::pair<double, Vec> MixtureNormalWalk::step(double, Stream& rng) const {
    const double sign = rng.uniform() < 0.5 ? 1.0 : -1.0;
    const double x = sign + rng.normal();
    return {0.0, {x, x * x}};
}

std::pair<double, Vec> NonlinearArWalk::step(double state, Stream& rng) const {
    const auto [zeta, gamma] = rng.normal_pair();
    const double next = lambda_pw(state) + zeta;
    return {next, {next + gamma, 0.0}};
}

double lambda_pw(double x) {
    if (x > 1.0) return 0.5 * (x + 1.0);
    if (x < -1.0) return 0.5 * (x - 1.0);
    return x;
}

double log_u_drift(double x, double theta) { return 2.1 * theta * std::max(x, 0.0); }

double u_drift(double x, double theta) { return std::exp(log_u_drift(x, theta)); }

bool event_holds(const EventSpec& event, const TrajectorySummary& summary) {
    if (event.kind == EventSpec::Kind::boundary_crossing) return summary.crossed;
    const Vec mean = scale(summary.terminal_sum, 1.0 / summary.length);
    return event.g(mean, summary.dim) >= event.b;
}

std::vector<DriftCheckRow> check_drift_numeric(const NonlinearArWalk& model, double theta,
                                               double psi_theta, double rho,
                                               const std::vector<double>& grid, int inner_samples,
                                               std::uint64_t seed) {
    std::vector<DriftCheckRow> rows;
    rows.reserve(grid.size());
    std::uint64_t unit = 0;
    for (double x : grid) {
        double s1 = 0.0, s1sq = 0.0, s2 = 0.0, s2sq = 0.0;
        const double lu_x = log_u_drift(x, theta);
        for (int k = 0; k < inner_samples; ++k) {
            Stream rng(seed, lane_direct_mc ^ 0x5u, unit, static_cast<std::uint64_t>(k));
            const auto [x1, xi] = model.step(x, rng);
            const double lw = theta * xi[0] - psi_theta + log_u_drift(x1, theta) - lu_x;
            const double v1 = std::exp(lw);
            const double v2 = std::exp(2.0 * lw);
            s1 += v1;
            s1sq += v1 * v1;
            s2 += v2;
            s2sq += v2 * v2;
        }
        ++unit;
        DriftCheckRow row;
        row.x = x;
        const double n = inner_samples;
        row.ratio = s1 / n;
        row.se = std::sqrt(std::max(0.0, s1sq / n - row.ratio * row.ratio) / n);
        row.ratio_sq = s2 / n;
        row.se_sq = std::sqrt(std::max(0.0, s2sq / n - row.ratio_sq * row.ratio_sq) / n);
        row.flagged = x > rho && row.ratio > 1.0 + 3.0 * row.se;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace sisr
