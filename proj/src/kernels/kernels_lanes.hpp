// kernels_lanes.hpp — shared per-lane accumulation semantics
//
// All backends accumulate into four (sum, compensation) lanes. Element i goes
// to lane i%4, the Neumaier update below is the per-lane operation sequence,
// and reduce() fixes the lane combination order. A SIMD backend is correct
// exactly when it reproduces these operations lane for lane; the equivalence
// test asserts bitwise equality against the scalar reference.

#pragma once

#include <cmath>
#include <cstddef>

namespace chainmap::kernels::detail {

struct Acc4 {
    double s[4] = {0.0, 0.0, 0.0, 0.0};
    double c[4] = {0.0, 0.0, 0.0, 0.0};
};

inline void lane_add(double& s, double& c, double v) {
    const double t = s + v;
    const double corr = (std::fabs(s) >= std::fabs(v)) ? ((s - t) + v) : ((v - t) + s);
    c = c + corr;
    s = t;
}

inline double reduce(const Acc4& a) {
    const double l0 = a.s[0] + a.c[0];
    const double l1 = a.s[1] + a.c[1];
    const double l2 = a.s[2] + a.c[2];
    const double l3 = a.s[3] + a.c[3];
    return (l0 + l1) + (l2 + l3);
}

// Scalar tails shared by every backend: elements [i, n) go to lanes 0,1,2,...

inline void weighted_sum_tail(const double* w, std::size_t i, std::size_t n, Acc4& acc) {
    for (std::size_t lane = 0; i < n; ++i, ++lane)
        lane_add(acc.s[lane], acc.c[lane], w[i]);
}

inline void norm_moment_element(double x, double w, double p,
                                double& spp, double& cpp, double& sxpp, double& cxpp) {
    const double t1 = w * p;
    const double t2 = t1 * p;
    lane_add(spp, cpp, t2);
    const double t3 = t2 * x;
    lane_add(sxpp, cxpp, t3);
}

inline void norm_moment_tail(const double* x, const double* w, const double* p,
                             std::size_t i, std::size_t n, Acc4& app, Acc4& axpp) {
    for (std::size_t lane = 0; i < n; ++i, ++lane)
        norm_moment_element(x[i], w[i], p[i],
                            app.s[lane], app.c[lane], axpp.s[lane], axpp.c[lane]);
}

inline void recurrence_update_tail(const double* x, double a, double b,
                                   const double* p, const double* pm1,
                                   double* out, std::size_t i, std::size_t n) {
    for (; i < n; ++i) {
        const double d = x[i] - a;
        const double m1 = d * p[i];
        const double m2 = b * pm1[i];
        out[i] = m1 - m2;
    }
}

} // namespace chainmap::kernels::detail
