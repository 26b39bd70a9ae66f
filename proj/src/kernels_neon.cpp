// NEON kernel variants (aarch64). Same no-FMA discipline as the AVX2 file
// for the element-wise kernels; dot/axpy use vfmaq.

#if defined(__aarch64__) || defined(_M_ARM64)

#include "regretlab/kernels.hpp"

#include <arm_neon.h>

#include <algorithm>
#include <cmath>

namespace regretlab::kernels {
namespace {

void lerp_neon(double* m, const double* g, double beta, std::size_t n) {
    const double w = 1.0 - beta;
    const float64x2_t vb = vdupq_n_f64(beta);
    const float64x2_t vw = vdupq_n_f64(w);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t vm = vld1q_f64(m + i);
        float64x2_t vg = vld1q_f64(g + i);
        vm = vaddq_f64(vmulq_f64(vb, vm), vmulq_f64(vw, vg));
        vst1q_f64(m + i, vm);
    }
    for (; i < n; ++i) {
        m[i] = beta * m[i] + w * g[i];
    }
}

void ema_square_neon(double* v, const double* g, double beta, std::size_t n) {
    const double w = 1.0 - beta;
    const float64x2_t vb = vdupq_n_f64(beta);
    const float64x2_t vw = vdupq_n_f64(w);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t vv = vld1q_f64(v + i);
        float64x2_t vg = vld1q_f64(g + i);
        vv = vaddq_f64(vmulq_f64(vb, vv), vmulq_f64(vw, vmulq_f64(vg, vg)));
        vst1q_f64(v + i, vv);
    }
    for (; i < n; ++i) {
        v[i] = beta * v[i] + w * (g[i] * g[i]);
    }
}

void acc_square_neon(double* c, const double* g, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t vg = vld1q_f64(g + i);
        vst1q_f64(c + i, vaddq_f64(vld1q_f64(c + i), vmulq_f64(vg, vg)));
    }
    for (; i < n; ++i) {
        c[i] = c[i] + g[i] * g[i];
    }
}

void add_scalar_neon(double* out, const double* in, double s, std::size_t n) {
    const float64x2_t vs = vdupq_n_f64(s);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        vst1q_f64(out + i, vaddq_f64(vld1q_f64(in + i), vs));
    }
    for (; i < n; ++i) {
        out[i] = in[i] + s;
    }
}

void add_scaled_neon(double* out, const double* v, const double* d, double s, std::size_t n) {
    const float64x2_t vs = vdupq_n_f64(s);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        vst1q_f64(out + i, vaddq_f64(vld1q_f64(v + i), vmulq_f64(vld1q_f64(d + i), vs)));
    }
    for (; i < n; ++i) {
        out[i] = v[i] + d[i] * s;
    }
}

void step_div_clamp_neon(double* x, const double* m, const double* den, double scale,
                         const double* lo, const double* hi, std::size_t n) {
    const float64x2_t vsc = vdupq_n_f64(scale);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t step = vdivq_f64(vmulq_f64(vsc, vld1q_f64(m + i)), vld1q_f64(den + i));
        float64x2_t xi = vsubq_f64(vld1q_f64(x + i), step);
        xi = vminq_f64(vmaxq_f64(xi, vld1q_f64(lo + i)), vld1q_f64(hi + i));
        vst1q_f64(x + i, xi);
    }
    for (; i < n; ++i) {
        const double xi = x[i] - (scale * m[i]) / den[i];
        x[i] = std::min(std::max(xi, lo[i]), hi[i]);
    }
}

void step_sqrt_clamp_neon(double* x, const double* m, const double* w, double delta,
                          double scale, const double* lo, const double* hi, std::size_t n) {
    const float64x2_t vsc = vdupq_n_f64(scale);
    const float64x2_t vd = vdupq_n_f64(delta);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t den = vaddq_f64(vsqrtq_f64(vld1q_f64(w + i)), vd);
        float64x2_t step = vdivq_f64(vmulq_f64(vsc, vld1q_f64(m + i)), den);
        float64x2_t xi = vsubq_f64(vld1q_f64(x + i), step);
        xi = vminq_f64(vmaxq_f64(xi, vld1q_f64(lo + i)), vld1q_f64(hi + i));
        vst1q_f64(x + i, xi);
    }
    for (; i < n; ++i) {
        const double xi = x[i] - (scale * m[i]) / (std::sqrt(w[i]) + delta);
        x[i] = std::min(std::max(xi, lo[i]), hi[i]);
    }
}

void step_clamp_neon(double* x, const double* g, double scale, const double* lo,
                     const double* hi, std::size_t n) {
    const float64x2_t vsc = vdupq_n_f64(scale);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t xi = vsubq_f64(vld1q_f64(x + i), vmulq_f64(vsc, vld1q_f64(g + i)));
        xi = vminq_f64(vmaxq_f64(xi, vld1q_f64(lo + i)), vld1q_f64(hi + i));
        vst1q_f64(x + i, xi);
    }
    for (; i < n; ++i) {
        const double xi = x[i] - scale * g[i];
        x[i] = std::min(std::max(xi, lo[i]), hi[i]);
    }
}

void elem_max_neon(double* w, const double* v, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        vst1q_f64(w + i, vmaxq_f64(vld1q_f64(w + i), vld1q_f64(v + i)));
    }
    for (; i < n; ++i) {
        w[i] = std::max(w[i], v[i]);
    }
}

double dot_neon(const double* a, const double* b, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
        acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
    }
    for (; i + 2 <= n; i += 2) {
        acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    }
    double s = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < n; ++i) {
        s += a[i] * b[i];
    }
    return s;
}

void axpy_neon(double* y, const double* x, double a, std::size_t n) {
    const float64x2_t va = vdupq_n_f64(a);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
    }
    for (; i < n; ++i) {
        y[i] += a * x[i];
    }
}

} // namespace

extern const KernelTable neon_table;
const KernelTable neon_table = {
    "neon",
    lerp_neon,
    ema_square_neon,
    acc_square_neon,
    add_scalar_neon,
    add_scaled_neon,
    step_div_clamp_neon,
    step_sqrt_clamp_neon,
    step_clamp_neon,
    elem_max_neon,
    dot_neon,
    axpy_neon,
};

} // namespace regretlab::kernels

#endif // aarch64
