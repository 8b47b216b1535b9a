// Acceptance checklist: one pass/fail line per criterion, exit code = #failures.
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "sisr/engine.hpp"
#include "sisr/harness.hpp"
#include "sisr/spectral.hpp"

using namespace sisr;

namespace {

int failures = 0;

void report(int criterion, const std::string& name, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %2d: %-34s %s\n", ok ? "PASS" : "FAIL", criterion, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

constexpr std::uint64_t kSeed = 20110901ull;

ExperimentConfig table1_config(int n) {
    ExperimentConfig cfg;
    cfg.seed = splitmix64(kSeed ^ (0x1111ull + n));
    cfg.model.kind = "mixture_normal";
    cfg.event = {"fixed_horizon", "self_normalized", 1.0 / std::sqrt(2.0), n, 0.0, 1, 0};
    cfg.schedule.kind = "adaptive_tilt";
    cfg.resampler = "bootstrap";
    cfg.k = 100;
    cfg.r = 100;
    cfg.direct.enabled = true;
    cfg.direct.m = 10000;
    cfg.threads = 4;
    return cfg;
}

ExperimentConfig table2_config(int n) {
    ExperimentConfig cfg;
    cfg.seed = splitmix64(kSeed ^ (0x2222ull + n));
    cfg.model.kind = "nonlinear_ar";
    cfg.model.x0 = 0.0;
    cfg.event = {"fixed_horizon", "identity", 2.5, n, 0.0, 1, 0};
    cfg.schedule.kind = "drift_weighted";
    cfg.schedule.theta = std::vector<double>{0.273};
    cfg.resampler = "bootstrap";
    cfg.k = 100;
    cfg.r = 100;
    cfg.threads = 4;
    return cfg;
}

ExperimentConfig bernoulli_config() {
    ExperimentConfig cfg;
    cfg.seed = splitmix64(kSeed ^ 0x6666ull);
    cfg.model.kind = "bernoulli";
    cfg.model.p = 0.3;
    cfg.event = {"fixed_horizon", "identity", 7.0 / 8.0, 8, 0.0, 1, 0};
    cfg.schedule.kind = "fixed_tilt";
    cfg.resampler = "bootstrap";
    cfg.k = 100;
    cfg.r = 100;
    cfg.direct.enabled = true;
    cfg.direct.m = 10000;
    cfg.threads = 4;
    return cfg;
}

std::string fmt(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
}

// ---- criterion bodies -----------------------------------------------------

RunReport criterion_1_and_10() {
    const double ref[3] = {1.10e-3, 1.9e-4, 4.0e-5};
    const double ref_se[3] = {0.07e-3, 0.2e-4, 0.7e-5};
    const int horizons[3] = {15, 20, 25};
    RunReport n15_report;
    for (int idx = 0; idx < 3; ++idx) {
        const RunReport rep = run_subgroups(table1_config(horizons[idx]));
        if (idx == 0) n15_report = rep;
        const double tol = 3.0 * std::sqrt(ref_se[idx] * ref_se[idx] + rep.se * rep.se);
        const double dev = std::fabs(rep.alpha_bar - ref[idx]);
        report(1, "table-1 estimate, n=" + std::to_string(horizons[idx]), dev <= tol,
               "alpha=" + fmt(rep.alpha_bar) + " ref=" + fmt(ref[idx]) + " |dev|=" + fmt(dev) +
                   " tol=" + fmt(tol));
    }
    return n15_report;
}

void criterion_2() {
    const double ref[3] = {8.31e-4, 2.42e-4, 6.33e-5};
    const double ref_se[3] = {0.48e-4, 0.19e-4, 0.44e-5};
    const int horizons[3] = {15, 20, 25};
    for (int idx = 0; idx < 3; ++idx) {
        const RunReport rep = run_subgroups(table2_config(horizons[idx]));
        const double tol = 3.0 * std::sqrt(ref_se[idx] * ref_se[idx] + rep.se * rep.se);
        const double dev = std::fabs(rep.alpha_bar - ref[idx]);
        report(2, "table-2 estimate, n=" + std::to_string(horizons[idx]), dev <= tol,
               "alpha=" + fmt(rep.alpha_bar) + " ref=" + fmt(ref[idx]) + " |dev|=" + fmt(dev) +
                   " tol=" + fmt(tol));
    }
}

void criterion_3() {
    const DiscreteChain chain = discretize_example5(1000, -2.505, 0.01);
    const double root = solve_tilt(chain, 2.5);
    report(3, "spectral tilt root", std::fabs(root - 0.273) <= 1e-3,
           "solve_tilt=" + fmt(root) + " ref=0.273 tol=0.001");
}

void criterion_4() {
    const CumulantModel mix = mixture_normal_cumulant();
    GFunction g;
    g.kind = GFunction::Kind::self_normalized;
    const RateMin rm = compute_I(mix, g, 1.0 / std::sqrt(2.0));
    const bool ok = std::fabs(rm.I - 0.324) <= 0.002 && std::fabs(rm.mu_star[0] - 1.0) <= 0.01 &&
                    std::fabs(rm.mu_star[1] - 2.0) <= 0.01;
    report(4, "rate minimum", ok,
           "I=" + fmt(rm.I) + " mu*=(" + fmt(rm.mu_star[0]) + "," + fmt(rm.mu_star[1]) +
               ") ref I=0.324 at (1,2)");
}

void criterion_5() {
    ExperimentConfig cfg;
    cfg.seed = splitmix64(kSeed ^ 0x5555ull);
    cfg.model.kind = "gaussian";
    cfg.event = {"fixed_horizon", "identity", 0.8, 25, 0.0, 1, 0};
    cfg.schedule.kind = "fixed_tilt";
    cfg.resampler = "bootstrap";
    cfg.k = 100;
    cfg.r = 100;
    cfg.threads = 4;
    const RunReport rep = run_subgroups(cfg);
    const double exact = 0.5 * std::erfc(4.0 / std::sqrt(2.0));
    const double dev = std::fabs(rep.alpha_bar - exact);
    report(5, "exact Gaussian tail oracle", dev <= 3.0 * rep.se,
           "alpha=" + fmt(rep.alpha_bar) + " exact=" + fmt(exact) + " |dev|=" + fmt(dev) +
               " tol=" + fmt(3.0 * rep.se));
}

double binomial_exact() {
    const double p = 0.3;
    return 8.0 * std::pow(p, 7) * (1.0 - p) + std::pow(p, 8);
}

void criterion_6() {
    const double exact = binomial_exact();
    const RunReport rep = run_subgroups(bernoulli_config());
    const double dev = std::fabs(rep.alpha_bar - exact);
    report(6, "binomial oracle, SISR", dev <= 3.0 * rep.se,
           "alpha=" + fmt(rep.alpha_bar) + " exact=" + fmt(exact) + " tol=" + fmt(3.0 * rep.se));
    const double se_direct =
        std::max(rep.direct->se, std::sqrt(exact * (1.0 - exact) / rep.direct->m));
    const double dev_direct = std::fabs(rep.direct->alpha - exact);
    report(6, "binomial oracle, direct MC", dev_direct <= 3.0 * se_direct,
           "alpha=" + fmt(rep.direct->alpha) + " tol=" + fmt(3.0 * se_direct));

    // unbiasedness of the bootstrap estimator over replicates
    const BernoulliWalk model(0.3);
    const CumulantModel cum = bernoulli_cumulant(0.3);
    const Vec theta = theta_of_mu(cum, {7.0 / 8.0, 0.0});
    const auto sched = WeightSchedule::fixed_tilt(theta, cum.psi(theta), 1);
    EventSpec event;
    event.kind = EventSpec::Kind::fixed_horizon;
    event.b = 7.0 / 8.0;
    event.n = 8;
    const int reps = 500, m = 200;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < reps; ++i) {
        const EngineResult res = run_engine(m, model, sched, event, Resampler::bootstrap,
                                            splitmix64(kSeed ^ 0x66AAull), 1000 + i);
        sum += res.alpha;
        sumsq += res.alpha * res.alpha;
    }
    const double mean = sum / reps;
    const double se = std::sqrt(std::max(0.0, sumsq / reps - mean * mean) / reps);
    report(6, "unbiasedness over 500 replicates", std::fabs(mean - exact) <= 3.0 * se,
           "mean=" + fmt(mean) + " exact=" + fmt(exact) + " tol=" + fmt(3.0 * se));
}

void criterion_7() {
    const BernoulliWalk model(0.3);
    const CumulantModel cum = bernoulli_cumulant(0.3);
    const Vec theta = theta_of_mu(cum, {7.0 / 8.0, 0.0});
    const auto sched = WeightSchedule::fixed_tilt(theta, cum.psi(theta), 1);
    EventSpec event;
    event.kind = EventSpec::Kind::fixed_horizon;
    event.b = 7.0 / 8.0;
    event.n = 8;
    const int reps = 200, m = 1000;
    for (Resampler res : {Resampler::bootstrap, Resampler::residual}) {
        double sum = 0.0, sumsq = 0.0, var_est = 0.0;
        for (int i = 0; i < reps; ++i) {
            const EngineResult r = run_engine(m, model, sched, event, res,
                                              splitmix64(kSeed ^ 0x7777ull), 2000 + i);
            sum += r.alpha;
            sumsq += r.alpha * r.alpha;
            var_est += r.sigma_sq / m;
        }
        const double mean = sum / reps;
        const double var_emp = sumsq / reps - mean * mean;
        var_est /= reps;
        const double rel = std::fabs(var_est - var_emp) / var_emp;
        report(7,
               std::string("variance estimator, ") +
                   (res == Resampler::bootstrap ? "bootstrap" : "residual"),
               rel <= 0.25,
               "mean sigma^2/m=" + fmt(var_est) + " replicate var=" + fmt(var_emp) +
                   " rel err=" + fmt(rel));
    }
}

void criterion_8() {
    const GaussianWalk model(0.0, 1.0);
    const auto sched = WeightSchedule::fixed_tilt({0.8, 0.0}, 0.32, 1);
    EventSpec event;
    event.kind = EventSpec::Kind::fixed_horizon;
    event.b = 0.8;
    event.n = 15;
    const int reps = 300, m = 400;
    double var[2];
    for (Resampler res : {Resampler::bootstrap, Resampler::residual}) {
        double sum = 0.0, sumsq = 0.0;
        for (int i = 0; i < reps; ++i) {
            const EngineResult r = run_engine(m, model, sched, event, res,
                                              splitmix64(kSeed ^ 0x8888ull), 3000 + i);
            sum += r.alpha;
            sumsq += r.alpha * r.alpha;
        }
        const double mean = sum / reps;
        var[res == Resampler::residual] = sumsq / reps - mean * mean;
    }
    report(8, "variance ordering R vs B", var[1] <= 1.15 * var[0],
           "var_R=" + fmt(var[1]) + " var_B=" + fmt(var[0]) + " ratio=" + fmt(var[1] / var[0]));
}

void criterion_9() {
    bool ok = true;
    std::string why;

    // multinomial offspring total
    {
        const GaussianWalk model(0.0, 1.0);
        const auto sched = WeightSchedule::fixed_tilt({0.5, 0.0}, 0.125, 1);
        ParticleSystem sys(128, model, sched, Resampler::bootstrap, 5, 0);
        sys.mutate(1);
        sys.resample(1);
        int total = 0;
        for (int c : sys.last_offspring_counts()) total += c;
        if (total != 128 || sys.population() != 128) {
            ok = false;
            why += "offspring-total ";
        }
    }
    // residual no-op under uniform weights, bitwise
    {
        const GaussianWalk model(0.0, 1.0);
        const auto sched = WeightSchedule::uniform();
        ParticleSystem sys(64, model, sched, Resampler::residual, 6, 0);
        sys.mutate(1);
        const auto before = sys.particles();
        sys.resample(1);
        for (int i = 0; i < 64; ++i) {
            if (sys.particles()[i].sum[0] != before[i].sum[0] ||
                sys.particles()[i].log_h != before[i].log_h ||
                sys.particles()[i].origin != before[i].origin) {
                ok = false;
                why += "residual-noop ";
                break;
            }
        }
    }
    // h/w bookkeeping identity per stage
    {
        const GaussianWalk model(0.0, 1.0);
        const auto sched = WeightSchedule::fixed_tilt({0.8, 0.0}, 0.32, 1);
        for (Resampler res : {Resampler::bootstrap, Resampler::residual}) {
            ParticleSystem sys(50, model, sched, res, 7, 0);
            for (int t = 1; t <= 5; ++t) {
                sys.mutate(t);
                if (t == 5) break;
                const int mt = sys.population();
                std::vector<double> lh(mt), lw(mt);
                for (int i = 0; i < mt; ++i) {
                    lh[i] = sys.particles()[i].log_h;
                    lw[i] = sys.particles()[i].log_w;
                }
                const double log_wbar = sys.log_wbar_history()[t];
                sys.resample(t);
                const auto& counts = sys.last_offspring_counts();
                int child = 0;
                for (int i = 0; i < mt; ++i)
                    for (int c = 0; c < counts[i]; ++c, ++child) {
                        const double lhs = lw[i] - log_wbar;  // log(m_t w_t)
                        const double rhs = lh[i] - sys.particles()[child].log_h;
                        if (std::fabs(lhs - rhs) > 1e-10) {
                            ok = false;
                            why += "bookkeeping ";
                            i = mt;
                            break;
                        }
                    }
            }
        }
    }
    // adaptive telescoping
    {
        auto ls = std::make_shared<const LevelSet>(mixture_normal_cumulant(), 0.33);
        const auto sched = WeightSchedule::adaptive_tilt(ls);
        const MixtureNormalWalk model;
        Particle p;
        double log_sum = 0.0;
        const int k = 10;
        for (int t = 1; t <= k; ++t) {
            Stream rng(99, 0, 0, static_cast<std::uint64_t>(t));
            p.prev_sum = p.sum;
            auto [state, xi] = model.step(p.state, rng);
            p.xi = xi;
            p.sum = add(p.prev_sum, xi);
            log_sum += sched.log_weight(p, t);
        }
        const Vec theta_k = ls->argmax(p.sum, k);
        const double expected = dot(theta_k, p.sum, 2) - k * ls->model().psi(theta_k);
        if (std::fabs(log_sum - expected) > 1e-10) {
            ok = false;
            why += "telescoping ";
        }
    }
    // gamma at integers
    if (resampling_gamma(2.0) != 0.0 || std::fabs(resampling_gamma(1.25) - 0.15) > 1e-15) {
        ok = false;
        why += "gamma ";
    }
    // psi(0) = 0 and log_perron(.,0) = 0
    {
        const CumulantModel models[] = {gaussian_cumulant(0.0, 1.0), bernoulli_cumulant(0.3),
                                        two_point_cumulant(0.25), mixture_normal_cumulant()};
        for (const auto& m : models)
            if (std::fabs(m.psi({0.0, 0.0})) > 1e-10) {
                ok = false;
                why += "psi0 ";
            }
        const DiscreteChain chain = discretize_example5(300, -2.505, 1.0 / 30.0);
        if (std::fabs(log_perron(chain, 0.0)) > 1e-10) {
            ok = false;
            why += "perron0 ";
        }
    }
    // determinism across thread counts
    {
        ExperimentConfig cfg = bernoulli_config();
        cfg.r = 16;
        cfg.threads = 1;
        const RunReport a = run_subgroups(cfg);
        cfg.threads = 4;
        const RunReport b = run_subgroups(cfg);
        if (a.alpha_bar != b.alpha_bar || a.se != b.se ||
            a.subgroup_estimates != b.subgroup_estimates) {
            ok = false;
            why += "thread-determinism ";
        }
    }
    report(9, "structural invariants", ok, ok ? "all exact checks hold" : why);
}

void criterion_10(const RunReport& n15) {
    double ratio = 0.0;
    if (n15.direct && n15.direct->alpha > 0.0 && n15.se > 0.0) {
        const double r = n15.direct->se / n15.se;
        ratio = r * r;
    }
    report(10, "variance-reduction headline", ratio >= 8.0,
           "(se_D/se_SISR)^2=" + fmt(ratio) + " required >= 8");
}

}  // namespace

int main() {
    std::printf("acceptance suite, master seed %llu\n", static_cast<unsigned long long>(kSeed));
    const RunReport n15 = criterion_1_and_10();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10(n15);
    std::printf("%d criterion check(s) failed\n", failures);
    return failures;
}
