#include "regretlab/analysis.hpp"

#include <cmath>
#include <limits>

namespace regretlab {

namespace {

void require_nonempty(std::size_t n, const char* what) {
    if (n == 0) throw Error(std::string(what) + ": empty history");
}

void require_len(const Vec& v, int d, const char* what) {
    require_dim(v.size(), static_cast<std::size_t>(d), what);
}

double momentum_term(double coef_num, double beta1, double nu) {
    if (beta1 == 0.0) return 0.0;
    if (nu >= 1.0) {
        throw BoundPreconditionError("bound: nu = 1 with beta1 > 0 makes the momentum term diverge");
    }
    return coef_num / ((nu - 1.0) * (nu - 1.0));
}

void require_alpha(const BoundInputs& inp, double one_minus_beta1, const char* name) {
    const double need = (2.0 - inp.gamma) * inp.g_inf * inp.g_inf / (inp.lambda * one_minus_beta1);
    if (inp.alpha < need * (1.0 - 1e-12)) {
        throw BoundPreconditionError(std::string(name) + ": requires alpha >= (2-gamma) G_inf^2 / "
                                                         "(lambda (1-beta1)) = " +
                                     std::to_string(need));
    }
}

} // namespace

ConditionReport check_condition3(const std::vector<Vec>& v_history, double alpha, double lambda,
                                 double beta1) {
    require_nonempty(v_history.size(), "check_condition3");
    const std::size_t d = v_history.front().size();
    const double rhs = lambda * (1.0 - beta1);

    ConditionReport rep;
    rep.worst_margin = std::numeric_limits<double>::infinity();
    double max_incr = 0.0;
    Vec prev(d, 0.0);
    for (std::size_t ti = 0; ti < v_history.size(); ++ti) {
        const long t = static_cast<long>(ti) + 1;
        require_dim(v_history[ti].size(), d, "check_condition3: v_history row");
        for (std::size_t i = 0; i < d; ++i) {
            const double incr =
                static_cast<double>(t) * v_history[ti][i] - static_cast<double>(t - 1) * prev[i];
            max_incr = std::max(max_incr, incr);
            const double margin = rhs - incr / alpha;
            if (margin < rep.worst_margin) {
                rep.worst_margin = margin;
                rep.worst_t = t;
                rep.worst_i = static_cast<int>(i);
            }
        }
        prev = v_history[ti];
    }
    rep.empirical_c = std::max(0.0, max_incr / (1.0 - beta1));
    rep.holds = rep.worst_margin >= -rel_slack(rhs - rep.worst_margin, rhs);
    return rep;
}

ConditionReport check_condition4(const std::vector<Vec>& g_history, const ScheduleSet& sched,
                                 double zeta) {
    require_nonempty(g_history.size(), "check_condition4");
    if (!(zeta > 0.0)) throw ConfigError("check_condition4: zeta must be positive");
    const std::size_t d = g_history.front().size();

    ConditionReport rep;
    rep.worst_margin = std::numeric_limits<double>::infinity();
    double worst_lhs = 0.0, worst_rhs = 0.0;
    Vec v(d, 0.0), cumsq(d, 0.0);
    for (std::size_t ti = 0; ti < g_history.size(); ++ti) {
        const long t = static_cast<long>(ti) + 1;
        require_dim(g_history[ti].size(), d, "check_condition4: g_history row");
        const double b2 = beta2_at(sched, t);
        for (std::size_t i = 0; i < d; ++i) {
            const double g2 = g_history[ti][i] * g_history[ti][i];
            v[i] = b2 * v[i] + (1.0 - b2) * g2;
            cumsq[i] += g2;
            const double lhs = static_cast<double>(t) * v[i];
            const double rhs = cumsq[i] / zeta;
            const double margin = lhs - rhs;
            if (margin < rep.worst_margin) {
                rep.worst_margin = margin;
                rep.worst_t = t;
                rep.worst_i = static_cast<int>(i);
                worst_lhs = lhs;
                worst_rhs = rhs;
            }
        }
    }
    rep.holds = rep.worst_margin >= -rel_slack(worst_lhs, worst_rhs);
    return rep;
}

double theorem1_log_term(const BoundInputs& inp) {
    require_len(inp.cumsq, inp.d, "theorem1_log_term: cumsq");
    if (!(inp.zeta > 0.0 && inp.delta > 0.0)) {
        throw BoundPreconditionError("theorem1_log_term: zeta and delta must be positive");
    }
    double s = 0.0;
    for (double c : inp.cumsq) {
        s += std::log(c / (inp.zeta * inp.delta) + 1.0);
    }
    return s;
}

double theorem1_bound(const BoundInputs& inp) {
    if (!(inp.delta > 0.0)) throw BoundPreconditionError("theorem1_bound: delta must be positive");
    if (!(inp.zeta > 0.0)) throw BoundPreconditionError("theorem1_bound: zeta must be positive");
    if (!(inp.beta1 >= 0.0 && inp.beta1 < 1.0)) {
        throw BoundPreconditionError("theorem1_bound: beta1 must lie in [0,1)");
    }
    const double omb = 1.0 - inp.beta1;
    const double dsq = inp.d_inf * inp.d_inf;
    const double term1 = inp.d * dsq * inp.delta / (2.0 * inp.alpha * omb);
    const double term2 = momentum_term(
        inp.d * inp.beta1 * dsq * (inp.g_inf * inp.g_inf + inp.delta) / (2.0 * inp.alpha * omb),
        inp.beta1, inp.nu);
    const double term3 = inp.alpha * inp.zeta / (omb * omb * omb) * theorem1_log_term(inp);
    return term1 + term2 + term3;
}

double theorem3_bound(const BoundInputs& inp) {
    require_len(inp.cumsq, inp.d, "theorem3_bound: cumsq");
    require_len(inp.delta_1, inp.d, "theorem3_bound: delta_1");
    require_len(inp.delta_T, inp.d, "theorem3_bound: delta_T");
    if (!(inp.zeta > 0.0)) throw BoundPreconditionError("theorem3_bound: zeta must be positive");
    const double omb = 1.0 - inp.beta1;
    const double dsq = inp.d_inf * inp.d_inf;
    double sum_d1 = 0.0, logs = 0.0;
    for (int i = 0; i < inp.d; ++i) {
        if (!(inp.delta_T[i] > 0.0 && inp.delta_1[i] <= 1.0 && inp.delta_1[i] >= inp.delta_T[i])) {
            throw BoundPreconditionError(
                "theorem3_bound: needs a non-increasing delta sequence in (0,1]");
        }
        sum_d1 += inp.delta_1[i];
        logs += std::log(inp.cumsq[i] / (inp.zeta * inp.delta_T[i]) + 1.0);
    }
    const double term1 = dsq * sum_d1 / (2.0 * inp.alpha * omb);
    const double term2 = inp.alpha * inp.zeta / (omb * omb * omb) * logs;
    const double term3 = momentum_term(
        inp.beta1 * dsq * (inp.d * inp.g_inf * inp.g_inf + sum_d1) / (2.0 * inp.alpha * omb),
        inp.beta1, inp.nu);
    return term1 + term2 + term3;
}

double corollary_bounds(const BoundInputs& inp, CorollaryId which) {
    require_len(inp.cumsq, inp.d, "corollary_bounds: cumsq");
    if (!(inp.gamma > 0.0 && inp.gamma <= 1.0)) {
        throw BoundPreconditionError("corollary_bounds: gamma must lie in (0,1]");
    }
    const double dsq = inp.d_inf * inp.d_inf;
    switch (which) {
    case CorollaryId::cor1: {
        if (!(inp.delta > 0.0)) throw BoundPreconditionError("Corollary 1: delta must be positive");
        const double omb = 1.0 - inp.beta1;
        require_alpha(inp, omb, "Corollary 1");
        const double term1 = inp.d * dsq * inp.delta / (2.0 * inp.alpha * omb);
        const double term2 = momentum_term(
            inp.d * inp.beta1 * dsq * (inp.g_inf * inp.g_inf + inp.delta) / (2.0 * inp.alpha * omb),
            inp.beta1, inp.nu);
        double logs = 0.0;
        for (double c : inp.cumsq) {
            logs += std::log(inp.gamma / inp.delta * c + 1.0);
        }
        return term1 + term2 + inp.alpha / (inp.gamma * omb * omb * omb) * logs;
    }
    case CorollaryId::cor2: {
        if (!(inp.delta > 0.0)) throw BoundPreconditionError("Corollary 2: delta must be positive");
        require_alpha(inp, 1.0, "Corollary 2");
        double logs = 0.0;
        for (double c : inp.cumsq) {
            logs += std::log(inp.gamma / inp.delta * c + 1.0);
        }
        return inp.d * dsq * inp.delta / (2.0 * inp.alpha) + inp.alpha / inp.gamma * logs;
    }
    case CorollaryId::cor4: {
        require_len(inp.delta_1, inp.d, "Corollary 4: delta_1");
        require_len(inp.delta_T, inp.d, "Corollary 4: delta_T");
        require_alpha(inp, 1.0, "Corollary 4");
        double sum_d1 = 0.0, logs = 0.0;
        for (int i = 0; i < inp.d; ++i) {
            if (!(inp.delta_T[i] > 0.0 && inp.delta_1[i] <= 1.0 &&
                  inp.delta_1[i] >= inp.delta_T[i])) {
                throw BoundPreconditionError(
                    "Corollary 4: needs a non-increasing delta sequence in (0,1]");
            }
            sum_d1 += inp.delta_1[i];
            logs += std::log(inp.gamma / inp.delta_T[i] * inp.cumsq[i] + 1.0);
        }
        return dsq * sum_d1 / (2.0 * inp.alpha) + inp.alpha / inp.gamma * logs;
    }
    case CorollaryId::cor5: {
        if (!(inp.xi2 > 0.0 && inp.xi2 <= 1.0 && inp.xi1 >= 0.0)) {
            throw BoundPreconditionError("Corollary 5: needs xi2 in (0,1] and xi1 >= 0");
        }
        require_alpha(inp, 1.0, "Corollary 5");
        double logs = 0.0;
        for (double c : inp.cumsq) {
            logs += std::log(inp.gamma * c + inp.xi2) +
                    std::log(inp.xi1 / inp.xi2 * c + 1.0 / inp.xi2);
        }
        return inp.d * dsq * inp.xi2 / (2.0 * inp.alpha) + inp.alpha / inp.gamma * logs;
    }
    }
    throw BoundPreconditionError("corollary_bounds: unknown corollary");
}

double mukkamala_bound(const BoundInputs& inp, const Vec& inf_jv) {
    require_len(inp.v_T, inp.d, "mukkamala_bound: v_T");
    require_len(inf_jv, inp.d, "mukkamala_bound: inf_jv");
    if (!(inp.gamma > 0.0 && inp.gamma <= 1.0) || !(inp.delta > 0.0)) {
        throw BoundPreconditionError("mukkamala_bound: needs gamma in (0,1] and delta > 0");
    }
    const double Td = static_cast<double>(inp.T);
    double term2 = 0.0, term3 = 0.0;
    for (int i = 0; i < inp.d; ++i) {
        term2 += std::log(Td * inp.v_T[i] / inp.delta + 1.0);
        term3 += (1.0 - inp.gamma) * (1.0 + std::log(Td)) / (inf_jv[i] + inp.delta);
    }
    return inp.delta * inp.d * inp.d_inf * inp.d_inf / (2.0 * inp.alpha) +
           inp.alpha / (2.0 * inp.gamma) * term2 + inp.alpha / inp.gamma * term3;
}

std::vector<double> bound_series(const std::vector<Vec>& g_history, BoundInputs base,
                                 CorollaryId which) {
    require_nonempty(g_history.size(), "bound_series");
    const std::size_t d = static_cast<std::size_t>(base.d);
    base.cumsq.assign(d, 0.0);
    std::vector<double> out;
    out.reserve(g_history.size());
    for (std::size_t ti = 0; ti < g_history.size(); ++ti) {
        require_dim(g_history[ti].size(), d, "bound_series: g_history row");
        for (std::size_t i = 0; i < d; ++i) {
            base.cumsq[i] += g_history[ti][i] * g_history[ti][i];
        }
        base.T = static_cast<long>(ti) + 1;
        out.push_back(corollary_bounds(base, which));
    }
    return out;
}

std::vector<double> mukkamala_series(const std::vector<Vec>& v_history, BoundInputs base) {
    require_nonempty(v_history.size(), "mukkamala_series");
    const std::size_t d = static_cast<std::size_t>(base.d);
    Vec inf_jv(d, std::numeric_limits<double>::infinity());
    std::vector<double> out;
    out.reserve(v_history.size());
    for (std::size_t ti = 0; ti < v_history.size(); ++ti) {
        require_dim(v_history[ti].size(), d, "mukkamala_series: v_history row");
        const double t = static_cast<double>(ti + 1);
        for (std::size_t i = 0; i < d; ++i) {
            inf_jv[i] = std::min(inf_jv[i], t * v_history[ti][i]);
        }
        base.T = static_cast<long>(ti) + 1;
        base.v_T = v_history[ti];
        out.push_back(mukkamala_bound(base, inf_jv));
    }
    return out;
}

ConditionReport lemma3_check(const Vec& squares, double zeta_delta) {
    if (!(zeta_delta > 0.0)) throw ConfigError("lemma3_check: zeta_delta must be positive");
    double prefix = 0.0, lhs = 0.0;
    for (double g2 : squares) {
        prefix += g2;
        lhs += g2 / (prefix + zeta_delta);
    }
    const double rhs = std::log(prefix / zeta_delta + 1.0);
    ConditionReport rep;
    rep.worst_margin = rhs - lhs;
    rep.worst_t = static_cast<long>(squares.size());
    rep.holds = rep.worst_margin >= -rel_slack(lhs, rhs, kExactTol);
    return rep;
}

MomentTrace record_moment_trace(OptimizerState state, const std::vector<Vec>& grads) {
    require_nonempty(grads.size(), "record_moment_trace");
    MomentTrace trace;
    trace.sched = state.sched;
    trace.g.reserve(grads.size());
    trace.g_hat.reserve(grads.size());
    trace.v_hat.reserve(grads.size());
    for (const Vec& g : grads) {
        if (state.algo == Algorithm::sadamd) {
            sadamd_step(state, g);
        } else {
            sadam_step(state, g);
        }
        trace.g.push_back(g);
        trace.g_hat.push_back(state.g_hat);
        trace.v_hat.push_back(state.moment.v_hat);
    }
    trace.cumsq = state.cumsq;
    trace.v_final = state.moment.v;
    return trace;
}

ConditionReport lemma2_check(const MomentTrace& trace, double zeta) {
    require_nonempty(trace.g.size(), "lemma2_check: trace");
    if (!(zeta > 0.0)) throw ConfigError("lemma2_check: zeta must be positive");
    const std::size_t d = trace.cumsq.size();
    const long T = static_cast<long>(trace.g.size());
    const double alpha = trace.sched.alpha;
    const double omb = 1.0 - trace.sched.beta1;

    double lhs = 0.0;
    for (long t = 1; t <= T; ++t) {
        const Vec& gh = trace.g_hat[t - 1];
        const Vec& vh = trace.v_hat[t - 1];
        double q = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            q += gh[i] * gh[i] / vh[i];
        }
        lhs += alpha / static_cast<double>(t) * q;
    }
    double rhs = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        const double dstar = delta_at(trace.sched, T, trace.v_final[i], trace.cumsq[i]);
        rhs += std::log(trace.cumsq[i] / (zeta * dstar) + 1.0);
    }
    rhs *= alpha * zeta / (omb * omb);

    ConditionReport rep;
    rep.worst_margin = rhs - lhs;
    rep.worst_t = T;
    rep.holds = rep.worst_margin >= -rel_slack(lhs, rhs);
    return rep;
}

} // namespace regretlab
