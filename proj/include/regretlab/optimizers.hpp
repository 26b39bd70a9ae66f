#pragma once

#include <cstdint>

#include "regretlab/schedules.hpp"
#include "regretlab/types.hpp"

namespace regretlab {

enum class Algorithm : std::uint8_t {
    sadam,
    sadamd,
    sc_rmsprop,
    sc_adagrad,
    adam,
    amsgrad,
    adamnc,
    ogd,        // step alpha/t
    ogd_convex, // step alpha/sqrt(t)
};

enum class AdamVariant : std::uint8_t { adam, amsgrad, adamnc };
enum class OgdMode : std::uint8_t { convex, strongly_convex };

const char* algorithm_name(Algorithm a);
bool algorithm_from_name(std::string_view name, Algorithm& out);

// One online learner. t counts completed rounds; calling a step function
// with a state at t-1 performs round t. x stays inside the box after
// every step; moment.v_hat is the round's regularized second moment.
struct OptimizerState {
    Algorithm algo = Algorithm::sadam;
    long t = 0;
    Vec x;
    Vec g_hat;
    DiagonalMoment moment;
    Vec cumsq;      // running sum_j g^2_{j,i}
    Vec v_hat_max;  // AMSgrad element-wise max state
    ScheduleSet sched;
    BoxDomain box;
    double adam_beta2 = 0.999; // constant beta2 for adam/amsgrad

    std::size_t dim() const { return x.size(); }
};

// x0 defaults to the zero vector clamped into the box.
OptimizerState make_state(Algorithm algo, const ScheduleSet& sched, const BoxDomain& box,
                          Vec x0 = {});

void sadam_step(OptimizerState& s, const Vec& g);
void sadamd_step(OptimizerState& s, const Vec& g);
// Independent implementation of the beta1 = 0 reduction, kept separate from
// sadam_step so the two can cross-validate each other.
void sc_rmsprop_step(OptimizerState& s, const Vec& g);
void sc_adagrad_step(OptimizerState& s, const Vec& g);
void adam_family_step(OptimizerState& s, const Vec& g, AdamVariant variant);
void ogd_step(OptimizerState& s, const Vec& g, OgdMode mode);

// Dispatch on s.algo.
void step(OptimizerState& s, const Vec& g);

// Per-round diagnostics for trace CSVs: regularized-moment range and the
// range of effective per-coordinate step sizes used in the last round.
struct Snapshot {
    long t = 0;
    double v_hat_min = 0.0;
    double v_hat_max = 0.0;
    double step_min = 0.0;
    double step_max = 0.0;
};

Snapshot snapshot(const OptimizerState& s);

} // namespace regretlab
