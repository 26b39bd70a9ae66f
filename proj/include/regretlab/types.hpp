#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "regretlab/errors.hpp"

namespace regretlab {

// All vectors are dense, 64-bit, fixed length d per experiment.
using Vec = std::vector<double>;
using DecisionVector = Vec;
using GradientVector = Vec;
using MomentumVector = Vec;

// Shared tolerance constants: exact algebra, accumulated-inequality slack,
// and finite-difference gradient checks.
inline constexpr double kExactTol = 1e-12;
inline constexpr double kIneqSlack = 1e-9;
inline constexpr double kGradCheckTol = 1e-6;

// Relative slack for inequalities checked along long horizons.
inline double rel_slack(double lhs, double rhs, double eps = kIneqSlack) {
    return eps * std::max({std::fabs(lhs), std::fabs(rhs), 1.0});
}

inline bool all_finite(const Vec& v) {
    for (double x : v) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

// Per-coordinate second-moment state: v_t and its regularized form
// v_hat_t = v_t + delta_t / t.
struct DiagonalMoment {
    Vec v;
    Vec v_hat;

    void resize(std::size_t d) {
        v.assign(d, 0.0);
        v_hat.assign(d, 0.0);
    }
};

// Axis-aligned box decision set. D_inf is its infinity diameter.
struct BoxDomain {
    Vec lower;
    Vec upper;

    static BoxDomain uniform(std::size_t d, double lo, double hi) {
        BoxDomain b;
        b.lower.assign(d, lo);
        b.upper.assign(d, hi);
        b.validate();
        return b;
    }

    std::size_t dim() const { return lower.size(); }

    void validate() const {
        if (lower.size() != upper.size()) {
            throw DimensionError("BoxDomain: lower/upper length mismatch");
        }
        for (std::size_t i = 0; i < lower.size(); ++i) {
            if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]) || lower[i] > upper[i]) {
                throw CertificateError("BoxDomain: bounds must be finite with lower <= upper");
            }
        }
    }

    double d_inf() const {
        double w = 0.0;
        for (std::size_t i = 0; i < lower.size(); ++i) {
            w = std::max(w, upper[i] - lower[i]);
        }
        return w;
    }

    bool contains(const Vec& x, double tol = 0.0) const {
        if (x.size() != dim()) return false;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] < lower[i] - tol || x[i] > upper[i] + tol) return false;
        }
        return true;
    }

    double clamp_coord(std::size_t i, double xi) const {
        return std::min(std::max(xi, lower[i]), upper[i]);
    }

    void clamp(Vec& x) const {
        require_dim(x.size(), dim(), "BoxDomain::clamp");
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = clamp_coord(i, x[i]);
        }
    }
};

} // namespace regretlab
