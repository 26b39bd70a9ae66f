#include "regretlab/kernels.hpp"

#include <cstdlib>
#include <string_view>

namespace regretlab::kernels {

#if defined(__x86_64__) || defined(_M_X64)
extern const KernelTable avx2_table;
#endif
#if defined(__aarch64__) || defined(_M_ARM64)
extern const KernelTable neon_table;
#endif

namespace {

bool host_supports(const KernelTable* t) {
    if (t == &scalar_table) return true;
#if defined(__x86_64__) || defined(_M_X64)
    if (t == &avx2_table) return __builtin_cpu_supports("avx2") != 0;
#endif
#if defined(__aarch64__) || defined(_M_ARM64)
    if (t == &neon_table) return true; // baseline on aarch64
#endif
    return false;
}

const KernelTable* lookup(std::string_view name) {
    if (name == "scalar") return &scalar_table;
#if defined(__x86_64__) || defined(_M_X64)
    if (name == "avx2") return &avx2_table;
#endif
#if defined(__aarch64__) || defined(_M_ARM64)
    if (name == "neon") return &neon_table;
#endif
    return nullptr;
}

const KernelTable* autodetect() {
    if (const char* env = std::getenv("REGRET_LAB_KERNELS")) {
        if (const KernelTable* t = lookup(env); t && host_supports(t)) return t;
    }
#if defined(__x86_64__) || defined(_M_X64)
    if (host_supports(&avx2_table)) return &avx2_table;
#endif
#if defined(__aarch64__) || defined(_M_ARM64)
    return &neon_table;
#endif
    return &scalar_table;
}

const KernelTable*& active_slot() {
    static const KernelTable* slot = autodetect();
    return slot;
}

} // namespace

const KernelTable& active() {
    return *active_slot();
}

const char* active_name() {
    return active_slot()->name;
}

bool select(std::string_view name) {
    const KernelTable* t = lookup(name);
    if (!t || !host_supports(t)) return false;
    active_slot() = t;
    return true;
}

std::size_t available(const KernelTable** out, std::size_t cap) {
    std::size_t n = 0;
    auto push = [&](const KernelTable* t) {
        if (n < cap && host_supports(t)) out[n++] = t;
    };
    push(&scalar_table);
#if defined(__x86_64__) || defined(_M_X64)
    push(&avx2_table);
#endif
#if defined(__aarch64__) || defined(_M_ARM64)
    push(&neon_table);
#endif
    return n;
}

} // namespace regretlab::kernels
