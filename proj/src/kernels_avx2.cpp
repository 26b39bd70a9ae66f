// AVX2 kernel variants. Compiled with -mavx2 -mfma for this translation unit
// only; whether they run is decided at runtime (see kernels.cpp). The
// element-wise kernels keep the scalar operation order and use mul/add
// rather than FMA so their results match the scalar backend bit for bit;
// dot/axpy use FMA and 4-way accumulators.

#if defined(__x86_64__) || defined(_M_X64)

#include "regretlab/kernels.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace regretlab::kernels {
namespace {

void lerp_avx2(double* m, const double* g, double beta, std::size_t n) {
    const double w = 1.0 - beta;
    const __m256d vb = _mm256_set1_pd(beta);
    const __m256d vw = _mm256_set1_pd(w);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vm = _mm256_loadu_pd(m + i);
        __m256d vg = _mm256_loadu_pd(g + i);
        vm = _mm256_add_pd(_mm256_mul_pd(vb, vm), _mm256_mul_pd(vw, vg));
        _mm256_storeu_pd(m + i, vm);
    }
    for (; i < n; ++i) {
        m[i] = beta * m[i] + w * g[i];
    }
}

void ema_square_avx2(double* v, const double* g, double beta, std::size_t n) {
    const double w = 1.0 - beta;
    const __m256d vb = _mm256_set1_pd(beta);
    const __m256d vw = _mm256_set1_pd(w);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vv = _mm256_loadu_pd(v + i);
        __m256d vg = _mm256_loadu_pd(g + i);
        __m256d g2 = _mm256_mul_pd(vg, vg);
        vv = _mm256_add_pd(_mm256_mul_pd(vb, vv), _mm256_mul_pd(vw, g2));
        _mm256_storeu_pd(v + i, vv);
    }
    for (; i < n; ++i) {
        v[i] = beta * v[i] + w * (g[i] * g[i]);
    }
}

void acc_square_avx2(double* c, const double* g, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vc = _mm256_loadu_pd(c + i);
        __m256d vg = _mm256_loadu_pd(g + i);
        vc = _mm256_add_pd(vc, _mm256_mul_pd(vg, vg));
        _mm256_storeu_pd(c + i, vc);
    }
    for (; i < n; ++i) {
        c[i] = c[i] + g[i] * g[i];
    }
}

void add_scalar_avx2(double* out, const double* in, double s, std::size_t n) {
    const __m256d vs = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(in + i), vs));
    }
    for (; i < n; ++i) {
        out[i] = in[i] + s;
    }
}

void add_scaled_avx2(double* out, const double* v, const double* d, double s, std::size_t n) {
    const __m256d vs = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vd = _mm256_mul_pd(_mm256_loadu_pd(d + i), vs);
        _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(v + i), vd));
    }
    for (; i < n; ++i) {
        out[i] = v[i] + d[i] * s;
    }
}

void step_div_clamp_avx2(double* x, const double* m, const double* den, double scale,
                         const double* lo, const double* hi, std::size_t n) {
    const __m256d vsc = _mm256_set1_pd(scale);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d step = _mm256_div_pd(_mm256_mul_pd(vsc, _mm256_loadu_pd(m + i)),
                                     _mm256_loadu_pd(den + i));
        __m256d xi = _mm256_sub_pd(_mm256_loadu_pd(x + i), step);
        xi = _mm256_min_pd(_mm256_max_pd(xi, _mm256_loadu_pd(lo + i)), _mm256_loadu_pd(hi + i));
        _mm256_storeu_pd(x + i, xi);
    }
    for (; i < n; ++i) {
        const double xi = x[i] - (scale * m[i]) / den[i];
        x[i] = std::min(std::max(xi, lo[i]), hi[i]);
    }
}

void step_sqrt_clamp_avx2(double* x, const double* m, const double* w, double delta,
                          double scale, const double* lo, const double* hi, std::size_t n) {
    const __m256d vsc = _mm256_set1_pd(scale);
    const __m256d vd = _mm256_set1_pd(delta);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d den = _mm256_add_pd(_mm256_sqrt_pd(_mm256_loadu_pd(w + i)), vd);
        __m256d step = _mm256_div_pd(_mm256_mul_pd(vsc, _mm256_loadu_pd(m + i)), den);
        __m256d xi = _mm256_sub_pd(_mm256_loadu_pd(x + i), step);
        xi = _mm256_min_pd(_mm256_max_pd(xi, _mm256_loadu_pd(lo + i)), _mm256_loadu_pd(hi + i));
        _mm256_storeu_pd(x + i, xi);
    }
    for (; i < n; ++i) {
        const double xi = x[i] - (scale * m[i]) / (std::sqrt(w[i]) + delta);
        x[i] = std::min(std::max(xi, lo[i]), hi[i]);
    }
}

void step_clamp_avx2(double* x, const double* g, double scale, const double* lo,
                     const double* hi, std::size_t n) {
    const __m256d vsc = _mm256_set1_pd(scale);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d xi = _mm256_sub_pd(_mm256_loadu_pd(x + i),
                                   _mm256_mul_pd(vsc, _mm256_loadu_pd(g + i)));
        xi = _mm256_min_pd(_mm256_max_pd(xi, _mm256_loadu_pd(lo + i)), _mm256_loadu_pd(hi + i));
        _mm256_storeu_pd(x + i, xi);
    }
    for (; i < n; ++i) {
        const double xi = x[i] - scale * g[i];
        x[i] = std::min(std::max(xi, lo[i]), hi[i]);
    }
}

void elem_max_avx2(double* w, const double* v, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(w + i, _mm256_max_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(v + i)));
    }
    for (; i < n; ++i) {
        w[i] = std::max(w[i], v[i]);
    }
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    }
    acc0 = _mm256_add_pd(acc0, acc1);
    __m128d lo = _mm256_castpd256_pd128(acc0);
    __m128d hi = _mm256_extractf128_pd(acc0, 1);
    lo = _mm_add_pd(lo, hi);
    double s = _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
    for (; i < n; ++i) {
        s += a[i] * b[i];
    }
    return s;
}

void axpy_avx2(double* y, const double* x, double a, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
        _mm256_storeu_pd(y + i, vy);
    }
    for (; i < n; ++i) {
        y[i] += a * x[i];
    }
}

} // namespace

extern const KernelTable avx2_table;
const KernelTable avx2_table = {
    "avx2",
    lerp_avx2,
    ema_square_avx2,
    acc_square_avx2,
    add_scalar_avx2,
    add_scaled_avx2,
    step_div_clamp_avx2,
    step_sqrt_clamp_avx2,
    step_clamp_avx2,
    elem_max_avx2,
    dot_avx2,
    axpy_avx2,
};

} // namespace regretlab::kernels

#endif // x86_64
