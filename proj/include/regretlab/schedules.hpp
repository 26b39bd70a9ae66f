#pragma once

#include <cstdint>

#include "regretlab/types.hpp"

namespace regretlab {

enum class Beta2Kind : std::uint8_t {
    exact_one_over_t, // beta2_t = 1 - 1/t
    gamma_over_t,     // beta2_t = 1 - gamma/t
};

enum class DeltaKind : std::uint8_t {
    constant,  // delta
    exp_decay, // xi2 * exp(-xi1 * t * v_{t,i})
    rational,  // xi2 / (1 + xi1 * sum_j g^2_{j,i})
};

// Time-variant hyperparameters: beta1_t = beta1 * nu^(t-1), the beta2_t
// sandwich 1 - 1/t <= beta2_t <= 1 - gamma/t, the regularization floor
// delta (three kinds), and the step-size constant alpha.
struct ScheduleSet {
    double beta1 = 0.9;
    double nu = 0.995;
    double gamma = 0.9;
    Beta2Kind beta2_kind = Beta2Kind::gamma_over_t;
    DeltaKind delta_kind = DeltaKind::constant;
    double delta = 1e-2; // constant kind
    double xi1 = 0.1;    // variant kinds
    double xi2 = 1.0;
    double alpha = 0.1;

    void validate() const;
};

double beta1_at(const ScheduleSet& s, long t);
double beta2_at(const ScheduleSet& s, long t);

// Regularization factor at round t for one coordinate. v_ti is the EMA
// second moment v_{t,i}; cumsq_ti is sum_{j<=t} g^2_{j,i}. The variant
// kinds are non-increasing in t along any gradient stream.
double delta_at(const ScheduleSet& s, long t, double v_ti, double cumsq_ti);

} // namespace regretlab
