// kernels.hpp — data-parallel inner loops of the quadrature engines
//
// Every kernel is defined in terms of four independent accumulation lanes with
// per-lane Neumaier compensation and a fixed lane-reduction order. The scalar
// reference and the SIMD backends (AVX2, NEON) execute the same per-lane IEEE
// operation sequence, so results are bit-identical regardless of which backend
// the dispatcher selects. That makes engine output deterministic for a given
// (measure, n, tolerance) no matter the host CPU.

#pragma once

#include <cstddef>

namespace chainmap::kernels {

enum class Backend { Auto, Scalar, Avx2, Neon };

struct Ops {
    // sum of w[i]
    double (*weighted_sum)(const double* w, std::size_t n);
    // s_pp = sum w*p*p,  s_xpp = sum (w*p*p)*x
    void (*weighted_norm_moment)(const double* x, const double* w, const double* p,
                                 std::size_t n, double& s_pp, double& s_xpp);
    // out[i] = (x[i] - a)*p[i] - b*pm1[i]
    void (*recurrence_update)(const double* x, double a, double b,
                              const double* p, const double* pm1,
                              double* out, std::size_t n);
    // v[i] *= c
    void (*scale_inplace)(double* v, double c, std::size_t n);
    const char* name;
};

// Active backend. Chosen once at first use: CHAINMAP_KERNEL env var if set
// ("scalar", "avx2", "neon"), else the widest ISA the CPU supports.
const Ops& active();

// Force a specific backend (tests). Backend::Auto restores detection.
void force_backend(Backend b);

// Backends compiled into this build (always includes the scalar reference).
// Returns pointers valid for the program lifetime.
const Ops* backend_scalar();
const Ops* backend_avx2(); // nullptr when unavailable
const Ops* backend_neon(); // nullptr when unavailable

} // namespace chainmap::kernels
