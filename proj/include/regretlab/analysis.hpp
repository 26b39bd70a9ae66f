#pragma once

#include <cstdint>

#include "regretlab/optimizers.hpp"
#include "regretlab/schedules.hpp"
#include "regretlab/types.hpp"

namespace regretlab {

// Inputs to the closed-form regret bounds. cumsq carries the per-coordinate
// sum of squared gradients at the evaluation horizon; v_T / delta_1 /
// delta_T are only needed by the bounds that reference them.
struct BoundInputs {
    int d = 1;
    long T = 1;
    double alpha = 1.0;
    double lambda = 1.0;
    double beta1 = 0.0;
    double nu = 0.995;
    double gamma = 0.9;
    double zeta = 1.0;
    DeltaKind delta_kind = DeltaKind::constant;
    double delta = 1e-2;
    double xi1 = 0.1;
    double xi2 = 1.0;
    double d_inf = 2.0;
    double g_inf = 1.0;
    Vec cumsq;   // length d
    Vec v_T;     // mukkamala_bound
    Vec delta_1; // theorem3 / cor4
    Vec delta_T; // theorem3 / cor4
};

// Outcome of one numerical check. worst_margin is the smallest remaining
// slack over all (t, i): positive when the inequality holds strictly,
// negative when violated; holds <=> worst_margin >= -1e-9 relative to the
// bound's scale. empirical_c is the smallest constant C making Condition 3
// feasible for the observed stream (condition-3 checks only, else 0).
struct ConditionReport {
    bool holds = false;
    double worst_margin = 0.0;
    long worst_t = 0;
    int worst_i = 0;
    double empirical_c = 0.0;
};

// Condition 3: (t v_{t,i} - (t-1) v_{t-1,i}) / alpha <= lambda (1 - beta1)
// for all t, i. v_history[t-1] holds v_t; v_0 = 0.
ConditionReport check_condition3(const std::vector<Vec>& v_history, double alpha, double lambda,
                                 double beta1);

// Condition 4: t v_{t,i} >= (1/zeta) sum_{j<=t} g^2_{j,i} for all t, i,
// with v produced by the EMA recursion under the given beta2 schedule.
ConditionReport check_condition4(const std::vector<Vec>& g_history, const ScheduleSet& sched,
                                 double zeta);

// Theorem 1 right-hand side. Throws BoundPreconditionError when nu = 1 with
// beta1 > 0 (the momentum term diverges) or delta <= 0.
double theorem1_bound(const BoundInputs& inp);

// The data-dependent factor of Theorem 1: sum_i log(cumsq_i/(zeta delta) + 1).
double theorem1_log_term(const BoundInputs& inp);

// Theorem 3 (time-variant delta) right-hand side; needs delta_1 and delta_T.
double theorem3_bound(const BoundInputs& inp);

enum class CorollaryId : std::uint8_t { cor1, cor2, cor4, cor5 };

// Closed-form corollary bounds. cor1: beta2 sandwich with zeta = 1/gamma;
// cor2: the beta1 = 0 reduction (SC-RMSprop); cor4: time-variant
// non-increasing delta (needs delta_1, delta_T); cor5: the rational-delta
// instantiation with its two log terms. Parameter-range violations throw
// BoundPreconditionError naming the corollary.
double corollary_bounds(const BoundInputs& inp, CorollaryId which);

// The Mukkamala et al. SC-RMSprop bound, used for the data-independence
// comparison. inf_jv[i] = inf_{j<=T} j v_{j,i}.
double mukkamala_bound(const BoundInputs& inp, const Vec& inf_jv);

// Prefix bound curves along one run. base supplies every field except the
// horizon-dependent ones (cumsq / T / v_T), which are filled per prefix
// from the recorded per-round gradients or second moments.
std::vector<double> bound_series(const std::vector<Vec>& g_history, BoundInputs base,
                                 CorollaryId which);
std::vector<double> mukkamala_series(const std::vector<Vec>& v_history, BoundInputs base);

// sum_j g2_j / (sum_{k<=j} g2_k + zeta_delta) <= log(sum_j g2_j / zeta_delta + 1)
// for one coordinate's squared-gradient sequence.
ConditionReport lemma3_check(const Vec& squares, double zeta_delta);

// Per-round internals of a SAdam/SAdamD run, recorded for the Lemma 2 / 5
// inequality on sum_t alpha_t ||g_hat_t||^2_{V_hat_t^{-1}}.
struct MomentTrace {
    std::vector<Vec> g;
    std::vector<Vec> g_hat;
    std::vector<Vec> v_hat;
    Vec cumsq;
    Vec v_final;
    ScheduleSet sched;
};

// Replays the gradient stream through sadam_step / sadamd_step (by state
// algorithm) and snapshots the internals after each round.
MomentTrace record_moment_trace(OptimizerState state, const std::vector<Vec>& grads);

ConditionReport lemma2_check(const MomentTrace& trace, double zeta);

} // namespace regretlab
