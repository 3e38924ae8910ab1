// AVX2 backend: one __m256d holds the four accumulation lanes. Compiled with
// -mavx2 and without -mfma so the per-lane mul/add sequence matches the scalar
// reference exactly.

#include "chainmap/kernels.hpp"

#if defined(__AVX2__) && (defined(__x86_64__) || defined(__i386__))

#include <immintrin.h>

#include "kernels_lanes.hpp"

namespace chainmap::kernels {
namespace {

using detail::Acc4;

inline __m256d abs_pd(__m256d v) {
    const __m256d sign = _mm256_set1_pd(-0.0);
    return _mm256_andnot_pd(sign, v);
}

// Neumaier step on all four lanes at once.
inline void lane_add4(__m256d& s, __m256d& c, __m256d v) {
    const __m256d t = _mm256_add_pd(s, v);
    const __m256d ge = _mm256_cmp_pd(abs_pd(s), abs_pd(v), _CMP_GE_OQ);
    const __m256d corr_s = _mm256_add_pd(_mm256_sub_pd(s, t), v);
    const __m256d corr_v = _mm256_add_pd(_mm256_sub_pd(v, t), s);
    c = _mm256_add_pd(c, _mm256_blendv_pd(corr_v, corr_s, ge));
    s = t;
}

inline void spill(__m256d s, __m256d c, Acc4& acc) {
    _mm256_storeu_pd(acc.s, s);
    _mm256_storeu_pd(acc.c, c);
}

double weighted_sum_avx2(const double* w, std::size_t n) {
    __m256d s = _mm256_setzero_pd(), c = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        lane_add4(s, c, _mm256_loadu_pd(w + i));
    Acc4 acc;
    spill(s, c, acc);
    detail::weighted_sum_tail(w, i, n, acc);
    return detail::reduce(acc);
}

void weighted_norm_moment_avx2(const double* x, const double* w, const double* p,
                               std::size_t n, double& s_pp, double& s_xpp) {
    __m256d spp = _mm256_setzero_pd(), cpp = _mm256_setzero_pd();
    __m256d sxpp = _mm256_setzero_pd(), cxpp = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xv = _mm256_loadu_pd(x + i);
        const __m256d wv = _mm256_loadu_pd(w + i);
        const __m256d pv = _mm256_loadu_pd(p + i);
        const __m256d t1 = _mm256_mul_pd(wv, pv);
        const __m256d t2 = _mm256_mul_pd(t1, pv);
        lane_add4(spp, cpp, t2);
        const __m256d t3 = _mm256_mul_pd(t2, xv);
        lane_add4(sxpp, cxpp, t3);
    }
    Acc4 app, axpp;
    spill(spp, cpp, app);
    spill(sxpp, cxpp, axpp);
    detail::norm_moment_tail(x, w, p, i, n, app, axpp);
    s_pp = detail::reduce(app);
    s_xpp = detail::reduce(axpp);
}

void recurrence_update_avx2(const double* x, double a, double b,
                            const double* p, const double* pm1,
                            double* out, std::size_t n) {
    const __m256d av = _mm256_set1_pd(a);
    const __m256d bv = _mm256_set1_pd(b);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), av);
        const __m256d m1 = _mm256_mul_pd(d, _mm256_loadu_pd(p + i));
        const __m256d m2 = _mm256_mul_pd(bv, _mm256_loadu_pd(pm1 + i));
        _mm256_storeu_pd(out + i, _mm256_sub_pd(m1, m2));
    }
    detail::recurrence_update_tail(x, a, b, p, pm1, out, i, n);
}

void scale_inplace_avx2(double* v, double c, std::size_t n) {
    const __m256d cv = _mm256_set1_pd(c);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(v + i, _mm256_mul_pd(_mm256_loadu_pd(v + i), cv));
    for (; i < n; ++i)
        v[i] *= c;
}

const Ops avx2_ops = {
    &weighted_sum_avx2,
    &weighted_norm_moment_avx2,
    &recurrence_update_avx2,
    &scale_inplace_avx2,
    "avx2",
};

} // namespace

const Ops* backend_avx2() { return &avx2_ops; }

} // namespace chainmap::kernels

#else

namespace chainmap::kernels {
const Ops* backend_avx2() { return nullptr; }
} // namespace chainmap::kernels

#endif
