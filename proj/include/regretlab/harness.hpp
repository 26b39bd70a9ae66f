#pragma once

#include <string>

#include "regretlab/optimizers.hpp"
#include "regretlab/streams.hpp"
#include "regretlab/types.hpp"

namespace regretlab {

// Per-round record of one online run. regret/cum_star/x_star are filled by
// regret_curve; bound is optional (filled by the bound-tracking helpers).
struct RegretTrace {
    std::vector<double> loss;
    std::vector<double> cum_loss;
    std::vector<double> cum_star;
    std::vector<double> regret;
    std::vector<double> bound;
    Vec x_star;

    long rounds() const { return static_cast<long>(loss.size()); }
    bool has_bound() const { return !bound.empty(); }
};

// Optional per-round internals recorded during a run (condition checks,
// bound evaluation, state CSVs).
struct RunLog {
    std::vector<Vec> g;
    std::vector<Vec> v;
    std::vector<Vec> x;
    std::vector<Snapshot> snaps;
};

// Plays rounds 1..T: record f_t(x_t), reveal g_t = grad f_t(x_t), step the
// optimizer. The trace has exactly T rows with regret left empty.
RegretTrace run_online(const LossStream& stream, OptimizerState& opt, long T,
                       RunLog* log = nullptr);

struct OracleOptions {
    double tol = 1e-8;     // projected-gradient-mapping norm target
    long max_iter = 100000;
    bool accelerate = true; // Nesterov momentum with function-value restart
    Vec x0;                 // optional warm start (defaults to clamped zero)
};

// Best fixed decision in hindsight: minimizes sum_t f_t over the box via
// projected gradient descent with backtracking (optionally accelerated).
// Throws OracleFailure with diagnostics when the cap is hit.
Vec best_in_hindsight(const LossStream& stream, const BoxDomain& box,
                      const OracleOptions& opts = {});

enum class ComparatorMode : std::uint8_t {
    fixed_horizon, // single comparator x* fixed at horizon T for all prefixes
    per_prefix,    // recompute the comparator for every prefix (diagnostic, slow)
};

// Fills cum_star / regret (and x_star) by replaying the stream at x_star.
void regret_curve(RegretTrace& trace, const Vec& x_star, const LossStream& stream,
                  ComparatorMode mode = ComparatorMode::fixed_horizon,
                  const BoxDomain* box = nullptr, const OracleOptions& opts = {});

// CSV trace persistence: header t,loss,cum_loss,cum_star,regret,bound and
// one row per round, 17 significant digits (lossless double round-trip).
void emit_csv(const RegretTrace& trace, const std::string& path);
RegretTrace parse_trace_csv(const std::string& path);

// Optimizer state snapshots (round, x, v_hat min/max, effective step range).
void emit_state_csv(const RunLog& log, const std::string& path);

} // namespace regretlab
