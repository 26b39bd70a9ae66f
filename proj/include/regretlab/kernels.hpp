#pragma once

#include <cstddef>
#include <string_view>

namespace regretlab::kernels {

// Per-coordinate inner loops shared by the optimizers and losses.
//
// Every kernel has a scalar reference implementation plus AVX2 / NEON
// variants selected once at startup (REGRET_LAB_KERNELS=scalar|avx2|neon
// overrides the autodetected choice). The element-wise kernels avoid FMA
// contraction so all backends produce bit-identical results; dot and axpy
// are reductions/accumulations and only agree to rounding.
struct KernelTable {
    const char* name;

    // m = beta * m + (1 - beta) * g
    void (*lerp)(double* m, const double* g, double beta, std::size_t n);
    // v = beta * v + (1 - beta) * g^2
    void (*ema_square)(double* v, const double* g, double beta, std::size_t n);
    // c += g^2
    void (*acc_square)(double* c, const double* g, std::size_t n);
    // out = in + s
    void (*add_scalar)(double* out, const double* in, double s, std::size_t n);
    // out = v + d * s (per-coordinate regularizer d scaled by s)
    void (*add_scaled)(double* out, const double* v, const double* d, double s, std::size_t n);
    // x = clamp(x - scale * m / den, lo, hi)
    void (*step_div_clamp)(double* x, const double* m, const double* den, double scale,
                           const double* lo, const double* hi, std::size_t n);
    // x = clamp(x - scale * m / (sqrt(w) + delta), lo, hi)
    void (*step_sqrt_clamp)(double* x, const double* m, const double* w, double delta,
                            double scale, const double* lo, const double* hi, std::size_t n);
    // x = clamp(x - scale * g, lo, hi)
    void (*step_clamp)(double* x, const double* g, double scale, const double* lo,
                       const double* hi, std::size_t n);
    // w = max(w, v)
    void (*elem_max)(double* w, const double* v, std::size_t n);
    // sum_i a_i * b_i
    double (*dot)(const double* a, const double* b, std::size_t n);
    // y += a * x
    void (*axpy)(double* y, const double* x, double a, std::size_t n);
};

extern const KernelTable scalar_table;

// Active backend. Resolved on first use; select() switches it explicitly
// (tests use this to compare backends) and returns false for a backend
// that is unknown or unsupported on this machine.
const KernelTable& active();
bool select(std::string_view name);
const char* active_name();

// Names of all backends usable on this machine, scalar first.
std::size_t available(const KernelTable** out, std::size_t cap);

} // namespace regretlab::kernels
