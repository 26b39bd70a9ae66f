#include "regretlab/optimizers.hpp"

#include <cmath>
#include <string_view>

#include "regretlab/kernels.hpp"

namespace regretlab {

namespace {

void check_gradient(const OptimizerState& s, const Vec& g) {
    require_dim(g.size(), s.dim(), "optimizer step: gradient");
    if (!all_finite(g)) {
        throw NonFiniteError("optimizer step: gradient has a non-finite entry");
    }
}

} // namespace

const char* algorithm_name(Algorithm a) {
    switch (a) {
    case Algorithm::sadam: return "sadam";
    case Algorithm::sadamd: return "sadamd";
    case Algorithm::sc_rmsprop: return "sc_rmsprop";
    case Algorithm::sc_adagrad: return "sc_adagrad";
    case Algorithm::adam: return "adam";
    case Algorithm::amsgrad: return "amsgrad";
    case Algorithm::adamnc: return "adamnc";
    case Algorithm::ogd: return "ogd";
    case Algorithm::ogd_convex: return "ogd_convex";
    }
    return "?";
}

bool algorithm_from_name(std::string_view name, Algorithm& out) {
    for (Algorithm a : {Algorithm::sadam, Algorithm::sadamd, Algorithm::sc_rmsprop,
                        Algorithm::sc_adagrad, Algorithm::adam, Algorithm::amsgrad,
                        Algorithm::adamnc, Algorithm::ogd, Algorithm::ogd_convex}) {
        if (name == algorithm_name(a)) {
            out = a;
            return true;
        }
    }
    return false;
}

OptimizerState make_state(Algorithm algo, const ScheduleSet& sched, const BoxDomain& box,
                          Vec x0) {
    sched.validate();
    box.validate();
    const std::size_t d = box.dim();
    OptimizerState s;
    s.algo = algo;
    s.sched = sched;
    s.box = box;
    if (x0.empty()) {
        s.x.assign(d, 0.0);
    } else {
        require_dim(x0.size(), d, "make_state: x0");
        s.x = std::move(x0);
    }
    s.box.clamp(s.x);
    s.g_hat.assign(d, 0.0);
    s.moment.resize(d);
    s.cumsq.assign(d, 0.0);
    s.v_hat_max.assign(d, 0.0);
    return s;
}

// Algorithm 1: g_hat EMA with beta1_t, v EMA with beta2_t, v_hat = v + delta/t,
// x <- clamp(x - (alpha/t) * g_hat / v_hat).
void sadam_step(OptimizerState& s, const Vec& g) {
    check_gradient(s, g);
    const auto& k = kernels::active();
    const std::size_t d = s.dim();
    const long t = s.t + 1;
    const double td = static_cast<double>(t);

    k.lerp(s.g_hat.data(), g.data(), beta1_at(s.sched, t), d);
    k.ema_square(s.moment.v.data(), g.data(), beta2_at(s.sched, t), d);
    k.acc_square(s.cumsq.data(), g.data(), d);
    k.add_scalar(s.moment.v_hat.data(), s.moment.v.data(), s.sched.delta / td, d);
    k.step_div_clamp(s.x.data(), s.g_hat.data(), s.moment.v_hat.data(), s.sched.alpha / td,
                     s.box.lower.data(), s.box.upper.data(), d);
    s.t = t;
}

// Algorithm 2: as sadam_step but with a per-coordinate regularizer
// delta_{t,i}/t. The constant kind degenerates to Algorithm 1 exactly.
void sadamd_step(OptimizerState& s, const Vec& g) {
    check_gradient(s, g);
    const auto& k = kernels::active();
    const std::size_t d = s.dim();
    const long t = s.t + 1;
    const double td = static_cast<double>(t);

    k.lerp(s.g_hat.data(), g.data(), beta1_at(s.sched, t), d);
    k.ema_square(s.moment.v.data(), g.data(), beta2_at(s.sched, t), d);
    k.acc_square(s.cumsq.data(), g.data(), d);
    if (s.sched.delta_kind == DeltaKind::constant) {
        k.add_scalar(s.moment.v_hat.data(), s.moment.v.data(), s.sched.delta / td, d);
    } else {
        Vec deltas(d);
        for (std::size_t i = 0; i < d; ++i) {
            deltas[i] = delta_at(s.sched, t, s.moment.v[i], s.cumsq[i]);
        }
        k.add_scaled(s.moment.v_hat.data(), s.moment.v.data(), deltas.data(), 1.0 / td, d);
    }
    k.step_div_clamp(s.x.data(), s.g_hat.data(), s.moment.v_hat.data(), s.sched.alpha / td,
                     s.box.lower.data(), s.box.upper.data(), d);
    s.t = t;
}

// Plain-loop SAdam reduction with beta1 = 0 (g_hat = g). Deliberately does
// not share the fused kernels with sadam_step.
void sc_rmsprop_step(OptimizerState& s, const Vec& g) {
    check_gradient(s, g);
    const std::size_t d = s.dim();
    const long t = s.t + 1;
    const double td = static_cast<double>(t);
    const double b2 = beta2_at(s.sched, t);
    const double w = 1.0 - b2;
    const double scale = s.sched.alpha / td;

    for (std::size_t i = 0; i < d; ++i) {
        s.g_hat[i] = g[i];
        s.moment.v[i] = b2 * s.moment.v[i] + w * (g[i] * g[i]);
        s.cumsq[i] = s.cumsq[i] + g[i] * g[i];
        const double dti = delta_at(s.sched, t, s.moment.v[i], s.cumsq[i]);
        s.moment.v_hat[i] = s.moment.v[i] + dti / td;
        const double xi = s.x[i] - (scale * g[i]) / s.moment.v_hat[i];
        s.x[i] = std::min(std::max(xi, s.box.lower[i]), s.box.upper[i]);
    }
    s.t = t;
}

// v_{t,i} is the arithmetic mean of past squared gradients, so the update
// (alpha/t) * g / (v + delta_t/t) collapses to alpha * g / (cumsq + delta_t).
void sc_adagrad_step(OptimizerState& s, const Vec& g) {
    check_gradient(s, g);
    const std::size_t d = s.dim();
    const long t = s.t + 1;
    const double td = static_cast<double>(t);

    for (std::size_t i = 0; i < d; ++i) {
        s.cumsq[i] = s.cumsq[i] + g[i] * g[i];
        s.moment.v[i] = s.cumsq[i] / td;
        const double dti = delta_at(s.sched, t, s.moment.v[i], s.cumsq[i]);
        s.moment.v_hat[i] = s.moment.v[i] + dti / td;
        const double xi = s.x[i] - (s.sched.alpha * g[i]) / (s.cumsq[i] + dti);
        s.x[i] = std::min(std::max(xi, s.box.lower[i]), s.box.upper[i]);
    }
    s.t = t;
}

// Eqs. (2)-(4) without bias correction; amsgrad keeps the element-wise max
// of the second moment, adamnc forces beta2_t = 1 - 1/t (so v is exactly
// the arithmetic mean of past squared gradients).
void adam_family_step(OptimizerState& s, const Vec& g, AdamVariant variant) {
    check_gradient(s, g);
    if (s.sched.delta_kind != DeltaKind::constant) {
        throw ConfigError("adam_family_step: requires a constant delta");
    }
    const auto& k = kernels::active();
    const std::size_t d = s.dim();
    const long t = s.t + 1;
    const double td = static_cast<double>(t);

    k.lerp(s.g_hat.data(), g.data(), beta1_at(s.sched, t), d);
    const double b2 = (variant == AdamVariant::adamnc) ? 1.0 - 1.0 / td : s.adam_beta2;
    k.ema_square(s.moment.v.data(), g.data(), b2, d);
    k.acc_square(s.cumsq.data(), g.data(), d);

    const double* w = s.moment.v.data();
    if (variant == AdamVariant::amsgrad) {
        k.elem_max(s.v_hat_max.data(), s.moment.v.data(), d);
        w = s.v_hat_max.data();
    }
    // v_hat mirrors the preconditioner the step divides through (pre-sqrt).
    k.add_scalar(s.moment.v_hat.data(), w, 0.0, d);
    k.step_sqrt_clamp(s.x.data(), s.g_hat.data(), w, s.sched.delta,
                      s.sched.alpha / std::sqrt(td), s.box.lower.data(), s.box.upper.data(), d);
    s.t = t;
}

void ogd_step(OptimizerState& s, const Vec& g, OgdMode mode) {
    check_gradient(s, g);
    const auto& k = kernels::active();
    const long t = s.t + 1;
    const double td = static_cast<double>(t);
    const double scale =
        mode == OgdMode::strongly_convex ? s.sched.alpha / td : s.sched.alpha / std::sqrt(td);
    k.step_clamp(s.x.data(), g.data(), scale, s.box.lower.data(), s.box.upper.data(), s.dim());
    s.t = t;
}

void step(OptimizerState& s, const Vec& g) {
    switch (s.algo) {
    case Algorithm::sadam: sadam_step(s, g); return;
    case Algorithm::sadamd: sadamd_step(s, g); return;
    case Algorithm::sc_rmsprop: sc_rmsprop_step(s, g); return;
    case Algorithm::sc_adagrad: sc_adagrad_step(s, g); return;
    case Algorithm::adam: adam_family_step(s, g, AdamVariant::adam); return;
    case Algorithm::amsgrad: adam_family_step(s, g, AdamVariant::amsgrad); return;
    case Algorithm::adamnc: adam_family_step(s, g, AdamVariant::adamnc); return;
    case Algorithm::ogd: ogd_step(s, g, OgdMode::strongly_convex); return;
    case Algorithm::ogd_convex: ogd_step(s, g, OgdMode::convex); return;
    }
}

Snapshot snapshot(const OptimizerState& s) {
    Snapshot snap;
    snap.t = s.t;
    if (s.t == 0) return snap;
    const double td = static_cast<double>(s.t);
    const bool adam_like =
        s.algo == Algorithm::adam || s.algo == Algorithm::amsgrad || s.algo == Algorithm::adamnc;
    const bool ogd_like = s.algo == Algorithm::ogd || s.algo == Algorithm::ogd_convex;

    if (ogd_like) {
        const double a = s.algo == Algorithm::ogd ? s.sched.alpha / td
                                                  : s.sched.alpha / std::sqrt(td);
        snap.step_min = snap.step_max = a;
        return snap;
    }
    double vmin = s.moment.v_hat[0], vmax = s.moment.v_hat[0];
    for (double v : s.moment.v_hat) {
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
    }
    snap.v_hat_min = vmin;
    snap.v_hat_max = vmax;
    if (adam_like) {
        const double a = s.sched.alpha / std::sqrt(td);
        snap.step_min = a / (std::sqrt(vmax) + s.sched.delta);
        snap.step_max = a / (std::sqrt(vmin) + s.sched.delta);
    } else {
        const double a = s.sched.alpha / td;
        snap.step_min = a / vmax;
        snap.step_max = a / vmin;
    }
    return snap;
}

} // namespace regretlab
