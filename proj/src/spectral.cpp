#include "sisr/spectral.hpp"

#include <cmath>
#include <sstream>

#include "sisr/errors.hpp"
#include "sisr/models.hpp"
#include "sisr/numerics.hpp"
#include "sisr/tolerances.hpp"

namespace sisr {

DiscreteChain discretize_example5(int n_states, double offset, double step,
                                  const std::function<double(double)>& lambda) {
    if (n_states < 2) throw ConfigError("discretize_example5: need at least 2 states");
    if (!(step > 0.0)) throw ConfigError("discretize_example5: step must be positive");
    auto lam = lambda ? lambda : [](double x) { return lambda_pw(x); };
    DiscreteChain chain;
    chain.states.resize(n_states);
    for (int i = 0; i < n_states; ++i) chain.states[i] = (i + 1) * step + offset;
    chain.transition.assign(static_cast<size_t>(n_states) * n_states, 0.0);
    for (int i = 0; i < n_states; ++i) {
        const double li = lam(chain.states[i]);
        double row_sum = 0.0;
        double* row = &chain.transition[static_cast<size_t>(i) * n_states];
        for (int j = 0; j < n_states; ++j) {
            const double dx = chain.states[j] - li;
            row[j] = std::exp(-0.5 * dx * dx);
            row_sum += row[j];
        }
        for (int j = 0; j < n_states; ++j) row[j] /= row_sum;
    }
    return chain;
}

double log_perron(const DiscreteChain& chain, double theta, std::vector<double>* warm_start) {
    const int n = chain.size();
    // column factors e^{theta x_j - s}, shifted so nothing overflows
    double shift = theta * chain.states[0];
    for (int j = 1; j < n; ++j) shift = std::max(shift, theta * chain.states[j]);
    std::vector<double> col(n);
    for (int j = 0; j < n; ++j) col[j] = std::exp(theta * chain.states[j] - shift);

    std::vector<double> v(n, 1.0 / n), w(n);
    if (warm_start && static_cast<int>(warm_start->size()) == n) v = *warm_start;
    double lambda = 0.0, prev = -1.0;
    for (int iter = 0; iter < tol::perron_max_iter; ++iter) {
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            const double* row = &chain.transition[static_cast<size_t>(i) * n];
            double s = 0.0;
            for (int j = 0; j < n; ++j) s += row[j] * col[j] * v[j];
            w[i] = s;
            total += s;
        }
        lambda = total;  // growth of the 1-norm of a positive vector
        for (int i = 0; i < n; ++i) v[i] = w[i] / total;
        if (iter > 0 && std::fabs(lambda - prev) <= tol::perron_rel * std::fabs(lambda)) {
            if (warm_start) *warm_start = v;
            return std::log(lambda) + shift;
        }
        prev = lambda;
    }
    std::ostringstream msg;
    msg << "log_perron: power iteration did not reach rel tol " << tol::perron_rel << " at theta="
        << theta;
    throw NonConvergence(msg.str());
}

double psi_markov(const DiscreteChain& chain, double theta) {
    return 0.5 * theta * theta + log_perron(chain, theta);
}

double solve_tilt(const DiscreteChain& chain, double slope) {
    // scan theta = 0.05, 0.10, ..., 2.00 for a sign change, then Brent
    std::vector<double> eigvec;
    auto f = [&](double th) {
        return 0.5 * th * th + log_perron(chain, th, &eigvec) - slope * th;
    };
    double prev_t = 0.05;
    double prev_f = f(prev_t);
    if (prev_f > 0.0)
        throw BracketError("solve_tilt: psi_markov already above slope*theta at theta=0.05");
    for (int k = 2; k <= 40; ++k) {
        const double t = 0.05 * k;
        const double ft = f(t);
        if (ft >= 0.0) {
            const double root = brent_root(f, prev_t, t, prev_f, ft, tol::tilt_root);
            if (!(root > 1e-6))
                throw BracketError("solve_tilt: root collapsed to the trivial root at 0");
            return root;
        }
        prev_t = t;
        prev_f = ft;
    }
    throw BracketError("solve_tilt: no positive root of psi_markov(theta) = slope*theta on (0, 2]");
}

}  // namespace sisr
