// Backend selection.

#include "chainmap/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace chainmap::kernels {
namespace {

std::atomic<const Ops*> g_forced{nullptr};

const Ops* detect() {
    if (const char* env = std::getenv("CHAINMAP_KERNEL")) {
        if (std::strcmp(env, "scalar") == 0) return backend_scalar();
        if (std::strcmp(env, "avx2") == 0 && backend_avx2()) return backend_avx2();
        if (std::strcmp(env, "neon") == 0 && backend_neon()) return backend_neon();
    }
#if defined(__x86_64__) || defined(__i386__)
    if (backend_avx2() && __builtin_cpu_supports("avx2")) return backend_avx2();
#endif
    if (backend_neon()) return backend_neon();
    return backend_scalar();
}

} // namespace

const Ops& active() {
    if (const Ops* f = g_forced.load(std::memory_order_acquire)) return *f;
    static const Ops* detected = detect();
    return *detected;
}

void force_backend(Backend b) {
    switch (b) {
        case Backend::Scalar: g_forced.store(backend_scalar(), std::memory_order_release); break;
        case Backend::Avx2: g_forced.store(backend_avx2(), std::memory_order_release); break;
        case Backend::Neon: g_forced.store(backend_neon(), std::memory_order_release); break;
        case Backend::Auto: g_forced.store(nullptr, std::memory_order_release); break;
    }
}

} // namespace chainmap::kernels
