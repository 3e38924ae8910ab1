// NEON backend: two float64x2_t registers form the four lanes (lo = lanes 0,1,
// hi = lanes 2,3). Compiled with -ffp-contract=off like the other backends so
// no fused multiply-adds can diverge from the scalar reference.

#include "chainmap/kernels.hpp"

#if defined(__aarch64__) || defined(__ARM_NEON)

#include <arm_neon.h>

#include "kernels_lanes.hpp"

namespace chainmap::kernels {
namespace {

using detail::Acc4;

inline void lane_add2(float64x2_t& s, float64x2_t& c, float64x2_t v) {
    const float64x2_t t = vaddq_f64(s, v);
    const uint64x2_t ge = vcgeq_f64(vabsq_f64(s), vabsq_f64(v));
    const float64x2_t corr_s = vaddq_f64(vsubq_f64(s, t), v);
    const float64x2_t corr_v = vaddq_f64(vsubq_f64(v, t), s);
    c = vaddq_f64(c, vbslq_f64(ge, corr_s, corr_v));
    s = t;
}

inline void spill(float64x2_t slo, float64x2_t shi, float64x2_t clo, float64x2_t chi, Acc4& acc) {
    vst1q_f64(acc.s, slo);
    vst1q_f64(acc.s + 2, shi);
    vst1q_f64(acc.c, clo);
    vst1q_f64(acc.c + 2, chi);
}

double weighted_sum_neon(const double* w, std::size_t n) {
    float64x2_t slo = vdupq_n_f64(0.0), shi = vdupq_n_f64(0.0);
    float64x2_t clo = vdupq_n_f64(0.0), chi = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        lane_add2(slo, clo, vld1q_f64(w + i));
        lane_add2(shi, chi, vld1q_f64(w + i + 2));
    }
    Acc4 acc;
    spill(slo, shi, clo, chi, acc);
    detail::weighted_sum_tail(w, i, n, acc);
    return detail::reduce(acc);
}

void weighted_norm_moment_neon(const double* x, const double* w, const double* p,
                               std::size_t n, double& s_pp, double& s_xpp) {
    float64x2_t spp_lo = vdupq_n_f64(0.0), spp_hi = vdupq_n_f64(0.0);
    float64x2_t cpp_lo = vdupq_n_f64(0.0), cpp_hi = vdupq_n_f64(0.0);
    float64x2_t sx_lo = vdupq_n_f64(0.0), sx_hi = vdupq_n_f64(0.0);
    float64x2_t cx_lo = vdupq_n_f64(0.0), cx_hi = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const float64x2_t x0 = vld1q_f64(x + i), x1 = vld1q_f64(x + i + 2);
        const float64x2_t w0 = vld1q_f64(w + i), w1 = vld1q_f64(w + i + 2);
        const float64x2_t p0 = vld1q_f64(p + i), p1 = vld1q_f64(p + i + 2);
        const float64x2_t t1_0 = vmulq_f64(w0, p0), t1_1 = vmulq_f64(w1, p1);
        const float64x2_t t2_0 = vmulq_f64(t1_0, p0), t2_1 = vmulq_f64(t1_1, p1);
        lane_add2(spp_lo, cpp_lo, t2_0);
        lane_add2(spp_hi, cpp_hi, t2_1);
        const float64x2_t t3_0 = vmulq_f64(t2_0, x0), t3_1 = vmulq_f64(t2_1, x1);
        lane_add2(sx_lo, cx_lo, t3_0);
        lane_add2(sx_hi, cx_hi, t3_1);
    }
    Acc4 app, axpp;
    spill(spp_lo, spp_hi, cpp_lo, cpp_hi, app);
    spill(sx_lo, sx_hi, cx_lo, cx_hi, axpp);
    detail::norm_moment_tail(x, w, p, i, n, app, axpp);
    s_pp = detail::reduce(app);
    s_xpp = detail::reduce(axpp);
}

void recurrence_update_neon(const double* x, double a, double b,
                            const double* p, const double* pm1,
                            double* out, std::size_t n) {
    const float64x2_t av = vdupq_n_f64(a);
    const float64x2_t bv = vdupq_n_f64(b);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t d = vsubq_f64(vld1q_f64(x + i), av);
        const float64x2_t m1 = vmulq_f64(d, vld1q_f64(p + i));
        const float64x2_t m2 = vmulq_f64(bv, vld1q_f64(pm1 + i));
        vst1q_f64(out + i, vsubq_f64(m1, m2));
    }
    detail::recurrence_update_tail(x, a, b, p, pm1, out, i, n);
}

void scale_inplace_neon(double* v, double c, std::size_t n) {
    const float64x2_t cv = vdupq_n_f64(c);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(v + i, vmulq_f64(vld1q_f64(v + i), cv));
    for (; i < n; ++i)
        v[i] *= c;
}

const Ops neon_ops = {
    &weighted_sum_neon,
    &weighted_norm_moment_neon,
    &recurrence_update_neon,
    &scale_inplace_neon,
    "neon",
};

} // namespace

const Ops* backend_neon() { return &neon_ops; }

} // namespace chainmap::kernels

#else

namespace chainmap::kernels {
const Ops* backend_neon() { return nullptr; }
} // namespace chainmap::kernels

#endif
