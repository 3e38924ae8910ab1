#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "chainmap/kernels.hpp"

using namespace chainmap;

namespace {

struct Vectors {
    std::vector<double> x, w, p, pm1;
};

Vectors random_vectors(std::size_t n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_real_distribution<double> mag(-12.0, 8.0); // weights across many scales
    Vectors v;
    v.x.resize(n);
    v.w.resize(n);
    v.p.resize(n);
    v.pm1.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        v.x[i] = u(rng);
        v.w[i] = std::pow(10.0, mag(rng)) * u(rng);
        v.p[i] = 2.0 * u(rng) - 1.0;
        v.pm1[i] = 2.0 * u(rng) - 1.0;
    }
    return v;
}

bool bit_equal(double a, double b) {
    return std::memcmp(&a, &b, sizeof(double)) == 0;
}

} // namespace

TEST_CASE("available backends produce bit-identical results") {
    const kernels::Ops* scalar = kernels::backend_scalar();
    std::vector<const kernels::Ops*> simd;
    if (kernels::backend_avx2()) simd.push_back(kernels::backend_avx2());
    if (kernels::backend_neon()) simd.push_back(kernels::backend_neon());
    // the host must provide at least one vector backend for the equivalence
    // test to mean anything; skip quietly if none is compiled in
    for (const kernels::Ops* ops : simd) {
        CAPTURE(ops->name);
        for (std::size_t n : {0ul, 1ul, 2ul, 3ul, 4ul, 5ul, 7ul, 8ul, 64ul, 1001ul, 65536ul}) {
            const Vectors v = random_vectors(n, 42 + static_cast<unsigned>(n));
            CHECK(bit_equal(scalar->weighted_sum(v.w.data(), n),
                            ops->weighted_sum(v.w.data(), n)));
            double spp_a = 0, sxpp_a = 0, spp_b = 0, sxpp_b = 0;
            scalar->weighted_norm_moment(v.x.data(), v.w.data(), v.p.data(), n, spp_a, sxpp_a);
            ops->weighted_norm_moment(v.x.data(), v.w.data(), v.p.data(), n, spp_b, sxpp_b);
            CHECK(bit_equal(spp_a, spp_b));
            CHECK(bit_equal(sxpp_a, sxpp_b));
            std::vector<double> out_a(n), out_b(n);
            scalar->recurrence_update(v.x.data(), 0.37, 0.12, v.p.data(), v.pm1.data(),
                                      out_a.data(), n);
            ops->recurrence_update(v.x.data(), 0.37, 0.12, v.p.data(), v.pm1.data(),
                                   out_b.data(), n);
            std::vector<double> sc_a = v.p, sc_b = v.p;
            scalar->scale_inplace(sc_a.data(), 1.0 / 3.0, n);
            ops->scale_inplace(sc_b.data(), 1.0 / 3.0, n);
            for (std::size_t i = 0; i < n; ++i) {
                CHECK(bit_equal(out_a[i], out_b[i]));
                CHECK(bit_equal(sc_a[i], sc_b[i]));
            }
        }
    }
}

TEST_CASE("compensated sum survives within-lane cancellation") {
    // each of the four lanes sees 1e16, 1, -1e16, 1 in turn
    std::vector<double> w;
    for (double v : {1e16, 1.0, -1e16, 1.0})
        for (int lane = 0; lane < 4; ++lane) w.push_back(v);
    const kernels::Ops* scalar = kernels::backend_scalar();
    CHECK(scalar->weighted_sum(w.data(), w.size()) == doctest::Approx(8.0).epsilon(1e-15));
}

TEST_CASE("weighted_norm_moment matches a long-double reference") {
    const Vectors v = random_vectors(4097, 7);
    long double spp_ref = 0.0L, sxpp_ref = 0.0L;
    for (std::size_t i = 0; i < v.x.size(); ++i) {
        const long double t = static_cast<long double>(v.w[i]) * v.p[i] * v.p[i];
        spp_ref += t;
        sxpp_ref += t * v.x[i];
    }
    double spp = 0, sxpp = 0;
    kernels::active().weighted_norm_moment(v.x.data(), v.w.data(), v.p.data(), v.x.size(), spp,
                                           sxpp);
    CHECK(spp == doctest::Approx(static_cast<double>(spp_ref)).epsilon(1e-14));
    CHECK(sxpp == doctest::Approx(static_cast<double>(sxpp_ref)).epsilon(1e-14));
}

TEST_CASE("force_backend switches the active implementation") {
    kernels::force_backend(kernels::Backend::Scalar);
    CHECK(std::string(kernels::active().name) == "scalar");
    kernels::force_backend(kernels::Backend::Auto);
}
