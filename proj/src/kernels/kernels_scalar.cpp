// Scalar reference backend. This is the semantic definition of every kernel;
// SIMD backends must match it bitwise.

#include "chainmap/kernels.hpp"
#include "kernels_lanes.hpp"

namespace chainmap::kernels {
namespace {

using detail::Acc4;

double weighted_sum_scalar(const double* w, std::size_t n) {
    Acc4 acc;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        for (std::size_t j = 0; j < 4; ++j)
            detail::lane_add(acc.s[j], acc.c[j], w[i + j]);
    detail::weighted_sum_tail(w, i, n, acc);
    return detail::reduce(acc);
}

void weighted_norm_moment_scalar(const double* x, const double* w, const double* p,
                                 std::size_t n, double& s_pp, double& s_xpp) {
    Acc4 app, axpp;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        for (std::size_t j = 0; j < 4; ++j)
            detail::norm_moment_element(x[i + j], w[i + j], p[i + j],
                                        app.s[j], app.c[j], axpp.s[j], axpp.c[j]);
    detail::norm_moment_tail(x, w, p, i, n, app, axpp);
    s_pp = detail::reduce(app);
    s_xpp = detail::reduce(axpp);
}

void recurrence_update_scalar(const double* x, double a, double b,
                              const double* p, const double* pm1,
                              double* out, std::size_t n) {
    detail::recurrence_update_tail(x, a, b, p, pm1, out, 0, n);
}

void scale_inplace_scalar(double* v, double c, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        v[i] *= c;
}

const Ops scalar_ops = {
    &weighted_sum_scalar,
    &weighted_norm_moment_scalar,
    &recurrence_update_scalar,
    &scale_inplace_scalar,
    "scalar",
};

} // namespace

const Ops* backend_scalar() { return &scalar_ops; }

} // namespace chainmap::kernels
