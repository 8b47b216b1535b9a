#pragma once

#include <functional>
#include <vector>

namespace sisr {

// Finite-state approximation of a Markov additive process: a state grid and
// a row-stochastic transition matrix.
struct DiscreteChain {
    std::vector<double> states;
    std::vector<double> transition;  // row-major n x n

    int size() const { return static_cast<int>(states.size()); }
    double p(int i, int j) const { return transition[static_cast<size_t>(i) * states.size() + j]; }
};

// Chain with states x_i = i*step + offset (i = 1..n) and
// p_ij proportional to exp(-(x_j - lambda(x_i))^2 / 2).
DiscreteChain discretize_example5(int n_states, double offset, double step,
                                  const std::function<double(double)>& lambda = nullptr);

// log of the Perron eigenvalue of (e^{theta x_j} p_ij), by power iteration.
// warm_start, if given, seeds (and receives) the eigenvector.
double log_perron(const DiscreteChain& chain, double theta,
                  std::vector<double>* warm_start = nullptr);

// theta^2/2 + log_perron: the cumulant proxy for state-plus-noise increments.
double psi_markov(const DiscreteChain& chain, double theta);

// Positive root of psi_markov(theta) = slope * theta (Brent after a bracket scan).
double solve_tilt(const DiscreteChain& chain, double slope);

}  // namespace sisr
