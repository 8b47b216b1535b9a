#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sisr/engine.hpp"

namespace sisr {

struct ModelConfig {
    std::string kind;  // gaussian | bernoulli | two_point | point_mass | mixture_normal | nonlinear_ar
    double mean = 0.0, sd = 1.0;  // gaussian
    double p = 0.5;               // bernoulli
    double p_up = 0.5;            // two_point
    double value = 1.0;           // point_mass
    double x0 = 0.0;              // nonlinear_ar
};

struct EventConfig {
    std::string kind;  // fixed_horizon | boundary_crossing
    std::string g = "identity";
    double b = 0.0;
    int n = 0;
    double c = 0.0;
    int n0 = 1, n1 = 0;
};

struct ScheduleConfig {
    std::string kind;  // uniform | fixed_tilt | adaptive_tilt | stopped_fixed |
                       // stopped_adaptive | drift_weighted
    std::optional<std::vector<double>> theta;
    std::optional<double> rate_bound;  // adaptive kinds; computed when absent
    std::optional<double> u_theta;     // drift kind; defaults to theta
};

struct DirectConfig {
    bool enabled = false;
    int m = 10000;
};

struct ExperimentConfig {
    int version = 1;
    std::uint64_t seed = 0;
    ModelConfig model;
    EventConfig event;
    ScheduleConfig schedule;
    std::string resampler = "bootstrap";
    int k = 100;  // subgroup size
    int r = 100;  // subgroup count; m_total = k*r
    DirectConfig direct;
    int threads = 1;
    std::string out_dir;
};

ExperimentConfig parse_config_json(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);
std::string config_to_json(const ExperimentConfig& config);

// Config materialized into model/event/schedule objects.
struct ResolvedSetup {
    std::shared_ptr<const Model> model;
    EventSpec event;
    WeightSchedule schedule;
    Resampler resampler = Resampler::bootstrap;
    std::optional<double> theta_scalar;  // resolved tilt, when the kind has one
    std::optional<double> rate_bound;    // resolved level-set bound, adaptive kinds
};

ResolvedSetup resolve(const ExperimentConfig& config);

struct DirectResult {
    double alpha = 0.0;
    double se = 0.0;
    int m = 0;
};

DirectResult direct_mc(const Model& model, const EventSpec& event, int m, std::uint64_t seed);

struct RunReport {
    double alpha_bar = 0.0;
    double se = 0.0;
    std::vector<double> subgroup_estimates;
    std::optional<DirectResult> direct;
    std::optional<double> variance_reduction;  // (se_direct/se)^2; absent when direct failed
    std::optional<double> theta_used;
    std::optional<double> rate_bound_used;
    std::string schedule_kind;
    double seconds = 0.0;
    std::uint64_t seed = 0;
    ExperimentConfig config;
};

// r independent SISR runs of k particles each (resampling confined to the
// subgroup), aggregated in subgroup order; plus the direct-MC companion when
// configured. Deterministic given (seed, config), whatever the thread count.
RunReport run_subgroups(const ExperimentConfig& config);

// run_subgroups + files + console line. Returns the report.
RunReport run_experiment(const ExperimentConfig& config);

void write_report_json(const RunReport& report, const std::string& path);
void append_report_csv(const RunReport& report, const std::string& path);

// "(1.10 ± 0.07) x 10^-3"
std::string format_mean_se(double mean, double se);

int run_preset(const std::string& name, std::uint64_t seed, const std::string& out_dir,
               int threads);
int run_oracle(const std::string& name, std::uint64_t seed, const std::string& out_dir,
               int threads);

}  // namespace sisr
