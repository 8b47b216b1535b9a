#pragma once

#include <limits>

#include "sisr/vec.hpp"

namespace sisr {

constexpr int kNoStop = std::numeric_limits<int>::max();

// Per-schedule state carried with a trajectory through resampling.
struct ScheduleCache {
    Vec theta_prev{0.0, 0.0};   // adaptive kinds: previous stage's argmax
    double exponent_prev = 0.0;  // theta_prev'S_{t-1} - (t-1) psi(theta_prev)
};

// One trajectory: running sum, model state, cumulative log h factor,
// log likelihood ratio (identically 0 when the proposal equals the model),
// first-generation ancestor, and stopping status.
struct Particle {
    double state = 0.0;
    double prev_state = 0.0;
    Vec sum{0.0, 0.0};
    Vec prev_sum{0.0, 0.0};
    Vec xi{0.0, 0.0};
    double log_h = 0.0;
    double log_l = 0.0;
    double log_w = 0.0;  // scratch: current stage's raw log weight
    int origin = 0;
    int stop_stage = kNoStop;  // T_c once stopped (crossing or window clamp)
    bool crossed = false;
    ScheduleCache cache;
};

}  // namespace sisr
