#include "regretlab/schedules.hpp"

#include <cmath>

namespace regretlab {

void ScheduleSet::validate() const {
    if (!(beta1 >= 0.0 && beta1 < 1.0)) {
        throw ConfigError("ScheduleSet: beta1 must lie in [0,1)");
    }
    if (!(nu >= 0.0 && nu <= 1.0)) {
        throw ConfigError("ScheduleSet: nu must lie in [0,1]");
    }
    if (!(gamma > 0.0 && gamma <= 1.0)) {
        throw ConfigError("ScheduleSet: gamma must lie in (0,1]");
    }
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw ConfigError("ScheduleSet: alpha must be positive");
    }
    switch (delta_kind) {
    case DeltaKind::constant:
        if (!(delta > 0.0)) throw ConfigError("ScheduleSet: constant delta must be positive");
        break;
    case DeltaKind::exp_decay:
    case DeltaKind::rational:
        if (!(xi2 > 0.0 && xi2 <= 1.0)) throw ConfigError("ScheduleSet: xi2 must lie in (0,1]");
        if (!(xi1 >= 0.0)) throw ConfigError("ScheduleSet: xi1 must be non-negative");
        break;
    }
}

double beta1_at(const ScheduleSet& s, long t) {
    if (t < 1) throw InvalidRoundError("beta1_at: round index must be >= 1");
    if (s.beta1 == 0.0) return 0.0;
    return s.beta1 * std::pow(s.nu, static_cast<double>(t - 1));
}

double beta2_at(const ScheduleSet& s, long t) {
    if (t < 1) throw InvalidRoundError("beta2_at: round index must be >= 1");
    const double td = static_cast<double>(t);
    switch (s.beta2_kind) {
    case Beta2Kind::exact_one_over_t:
        return 1.0 - 1.0 / td;
    case Beta2Kind::gamma_over_t:
        return 1.0 - s.gamma / td;
    }
    return 0.0; // unreachable
}

double delta_at(const ScheduleSet& s, long t, double v_ti, double cumsq_ti) {
    if (t < 1) throw InvalidRoundError("delta_at: round index must be >= 1");
    switch (s.delta_kind) {
    case DeltaKind::constant:
        return s.delta;
    case DeltaKind::exp_decay:
        return s.xi2 * std::exp(-s.xi1 * static_cast<double>(t) * v_ti);
    case DeltaKind::rational:
        return s.xi2 / (1.0 + s.xi1 * cumsq_ti);
    }
    return 0.0; // unreachable
}

} // namespace regretlab
