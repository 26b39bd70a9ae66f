#include "regretlab/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace regretlab::kernels {
namespace {

void lerp_scalar(double* m, const double* g, double beta, std::size_t n) {
    const double w = 1.0 - beta;
    for (std::size_t i = 0; i < n; ++i) {
        m[i] = beta * m[i] + w * g[i];
    }
}

void ema_square_scalar(double* v, const double* g, double beta, std::size_t n) {
    const double w = 1.0 - beta;
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = beta * v[i] + w * (g[i] * g[i]);
    }
}

void acc_square_scalar(double* c, const double* g, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        c[i] = c[i] + g[i] * g[i];
    }
}

void add_scalar_scalar(double* out, const double* in, double s, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = in[i] + s;
    }
}

void add_scaled_scalar(double* out, const double* v, const double* d, double s, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = v[i] + d[i] * s;
    }
}

void step_div_clamp_scalar(double* x, const double* m, const double* den, double scale,
                           const double* lo, const double* hi, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = x[i] - (scale * m[i]) / den[i];
        x[i] = std::min(std::max(xi, lo[i]), hi[i]);
    }
}

void step_sqrt_clamp_scalar(double* x, const double* m, const double* w, double delta,
                            double scale, const double* lo, const double* hi, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = x[i] - (scale * m[i]) / (std::sqrt(w[i]) + delta);
        x[i] = std::min(std::max(xi, lo[i]), hi[i]);
    }
}

void step_clamp_scalar(double* x, const double* g, double scale, const double* lo,
                       const double* hi, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = x[i] - scale * g[i];
        x[i] = std::min(std::max(xi, lo[i]), hi[i]);
    }
}

void elem_max_scalar(double* w, const double* v, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = std::max(w[i], v[i]);
    }
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        s += a[i] * b[i];
    }
    return s;
}

void axpy_scalar(double* y, const double* x, double a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        y[i] += a * x[i];
    }
}

} // namespace

const KernelTable scalar_table = {
    "scalar",
    lerp_scalar,
    ema_square_scalar,
    acc_square_scalar,
    add_scalar_scalar,
    add_scaled_scalar,
    step_div_clamp_scalar,
    step_sqrt_clamp_scalar,
    step_clamp_scalar,
    elem_max_scalar,
    dot_scalar,
    axpy_scalar,
};

} // namespace regretlab::kernels
