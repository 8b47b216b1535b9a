#pragma once

// Numeric tolerances used across the library, kept in one place.

namespace sisr::tol {

inline constexpr double root_residual = 1e-10;     // |f(root)| for scalar root solves
inline constexpr double param_roundtrip = 1e-8;    // theta_of_mu(grad_psi(theta)) == theta
inline constexpr double mean_param = 1e-10;        // ||grad_psi(theta) - mu|| <= mean_param*(1+||mu||)
inline constexpr double membership_slack = 1e-9;   // phi(mu_theta) <= I + slack counts as inside M
inline constexpr double row_stochastic = 1e-12;    // transition row sums
inline constexpr double perron_rel = 1e-12;        // relative eigenvalue change per sweep
inline constexpr int perron_max_iter = 100000;
inline constexpr int newton_max_iter = 100;
inline constexpr int backtrack_max = 40;           // step halvings in damped Newton
inline constexpr double fd_step = 1e-5;            // central differences: h = fd_step*(1+||theta||)
inline constexpr double log_weight_floor = -700.0; // shifted log-sum below this => DegenerateWeights
inline constexpr double tilt_root = 1e-10;         // Brent tolerance for solve_tilt / theta_star

}  // namespace sisr::tol
