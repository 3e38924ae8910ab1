#include "chainmap/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chainmap/errors.hpp"

namespace chainmap {
namespace {

bool has_gap_advisory(const Measure& m) {
    for (const auto& a : m.advisories)
        if (a.rfind("GappedSupport", 0) == 0) return true;
    return false;
}

// Gauss-Chebyshev sum of ln r(x) over the support, r the weight with the
// declared endpoint powers divided out.
double chebyshev_log_remainder(const Measure& m, int points) {
    const double a = m.support.a, b = m.support.b;
    double acc = 0.0;
    for (int i = 0; i < points; ++i) {
        const double y = std::cos((2.0 * i + 1.0) * M_PI / (2.0 * points));
        const double x = 0.5 * (a + b) + 0.5 * (b - a) * y;
        const double w = m.weight(x);
        double lr;
        if (w <= 0.0) {
            lr = -1e8; // interior zero; clipped, pushes the integral out of class
        } else {
            lr = std::log(w) - m.endpoint_exponent_a * std::log(x - a) -
                 m.endpoint_exponent_b * std::log(b - x);
        }
        acc += lr;
    }
    return 0.5 * (b - a) * M_PI / points * acc;
}

} // namespace

SzegoReport szego_check(const Measure& m) {
    SzegoReport rep;
    if (!m.bounded()) {
        rep.in_class = false;
        rep.note = "NotApplicable: unbounded support";
        rep.szego_integral = -std::numeric_limits<double>::infinity();
        rep.integral_minus_inf = true;
        return rep;
    }
    rep.omega_inf = m.dispersion_g * 0.5 * (m.support.a + m.support.b);
    rep.t_inf = m.dispersion_g * 0.25 * (m.support.b - m.support.a);
    if (m.discrete()) {
        rep.in_class = false;
        rep.note = "discrete measure (no density)";
        rep.szego_integral = -std::numeric_limits<double>::infinity();
        rep.integral_minus_inf = true;
        return rep;
    }
    if (has_gap_advisory(m)) {
        rep.in_class = false;
        rep.note = "support gap: weight vanishes on an interval";
        rep.szego_integral = -std::numeric_limits<double>::infinity();
        rep.integral_minus_inf = true;
        return rep;
    }

    const double L = m.support.b - m.support.a;
    // integral of ln(x - a) (resp. ln(b - x)) against the Chebyshev weight
    const double endpoint_part = 0.5 * L * M_PI * std::log(0.25 * L);
    double integral = (m.endpoint_exponent_a + m.endpoint_exponent_b) * endpoint_part;

    double prev = std::numeric_limits<double>::quiet_NaN();
    for (int points = 64; points <= (1 << 20); points *= 2) {
        const double cur = chebyshev_log_remainder(m, points);
        if (!std::isnan(prev) && std::fabs(cur - prev) < 1e-11 * std::max(1.0, std::fabs(cur))) {
            prev = cur;
            break;
        }
        prev = cur;
    }
    integral += prev;

    rep.szego_integral = integral;
    rep.in_class = integral > -1e6;
    if (!rep.in_class) rep.note = "log-weight integral below the numeric cutoff";
    return rep;
}

SzegoReport tail_diagnostics(const ChainParameters& cp, double g, double x_max) {
    if (cp.sites() < 10)
        throw Error("tail_diagnostics: need at least 10 chain coefficients");
    SzegoReport rep;
    rep.omega_inf = 0.5 * g * x_max;
    rep.t_inf = 0.25 * g * x_max;

    const int n = static_cast<int>(cp.sites());
    rep.measured_convergence.reserve(n);
    for (int k = 0; k < n; ++k) {
        TailPoint p;
        p.n = k;
        p.omega_dev = std::fabs(cp.omega[k] - rep.omega_inf);
        p.t_dev = k < static_cast<int>(cp.t.size())
                      ? std::fabs(cp.t[k] - rep.t_inf)
                      : std::numeric_limits<double>::quiet_NaN();
        rep.measured_convergence.push_back(p);
    }

    // windowed max-deviation comparison over the back half
    auto window_max = [&](int lo, int hi) {
        double mx = 0.0;
        for (int k = lo; k < hi; ++k)
            mx = std::max(mx, rep.measured_convergence[k].omega_dev);
        return mx;
    };
    const double w1 = window_max(n / 2, 3 * n / 4);
    const double w2 = window_max(3 * n / 4, n);
    rep.converging = w2 < w1;

    // least-squares slope of ln(dev) vs ln(n) over the back half
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (int k = std::max(n / 2, 1); k < n; ++k) {
        const double dev = rep.measured_convergence[k].omega_dev;
        if (dev <= 0.0) continue;
        const double lx = std::log(static_cast<double>(k)), ly = std::log(dev);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++cnt;
    }
    if (cnt >= 2 && sxx * cnt - sx * sx > 0.0)
        rep.convergence_order = -(cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    rep.in_class = rep.converging;
    return rep;
}

double jacobi_omega_deviation(double s, double omega_c, int n) {
    const double den = (s + 2.0 * n) * (2.0 + s + 2.0 * n);
    return den > 0.0 ? s * s * omega_c / (2.0 * den) : 0.0;
}

double jacobi_t_deviation(double s, double omega_c, int n) {
    // |t_n - omega_c/4| through t_n^2 - omega_c^2/16, which factors cleanly:
    // with A = 2n + s + 2, 16 t^2/omega_c^2 - 1 = (A^2(1-2s^2) + s^4)/(A^2(A^2-1))
    const double A = 2.0 * n + s + 2.0;
    const double num = A * A * (1.0 - 2.0 * s * s) + s * s * s * s;
    const double den = A * A * (A * A - 1.0);
    const double t = omega_c * (1.0 + n) * (1.0 + s + n) /
                     ((s + 2.0 + 2.0 * n) * (3.0 + s + 2.0 * n)) *
                     std::sqrt((3.0 + s + 2.0 * n) / (1.0 + s + 2.0 * n));
    return std::fabs(omega_c * omega_c * num / (16.0 * den) / (t + 0.25 * omega_c));
}

} // namespace chainmap
