#include "chainmap/chain.hpp"

#include <cmath>

#include "chainmap/errors.hpp"
#include "qpoly.hpp"

namespace chainmap {

ChainParameters chain_from_coefficients(const RecurrenceCoefficients& rc, double g) {
    check_valid(rc);
    if (!(g > 0.0)) throw Error("chain_from_coefficients: g must be > 0");
    ChainParameters cp;
    cp.g = g;
    cp.source = engine_name(rc.engine);
    cp.c0 = std::sqrt(rc.beta[0]);
    const std::size_t n = rc.n_terms();
    cp.omega.resize(n);
    for (std::size_t k = 0; k < n; ++k) cp.omega[k] = g * rc.alpha[k];
    cp.t.resize(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) cp.t[k] = g * std::sqrt(rc.beta[k + 1]);
    cp.t_sign.assign(cp.t.size(), 1);
    if (rc.support)
        cp.asymptote = {{g * 0.5 * (rc.support->first + rc.support->second),
                         g * 0.25 * (rc.support->second - rc.support->first)}};
    return cp;
}

ChainParameters jacobi_chain(double alpha, double s, double omega_c, int n) {
    if (n < 1) throw Error("jacobi_chain: n must be >= 1");
    if (!(alpha > 0.0) || s < 0.0 || !(omega_c > 0.0))
        throw Error("jacobi_chain: invalid parameters");
    ChainParameters cp;
    cp.g = omega_c;
    cp.source = "jacobi";
    cp.c0 = omega_c * std::sqrt(2.0 * alpha / (s + 1.0));
    cp.omega.resize(n);
    cp.t.resize(n);
    for (int k = 0; k < n; ++k) {
        const double den = (s + 2.0 * k) * (2.0 + s + 2.0 * k);
        const double corr = den > 0.0 ? s * s / den : 0.0; // s = 0, k = 0 limit
        cp.omega[k] = 0.5 * omega_c * (1.0 + corr);
        cp.t[k] = omega_c * (1.0 + k) * (1.0 + s + k) /
                  ((s + 2.0 + 2.0 * k) * (3.0 + s + 2.0 * k)) *
                  std::sqrt((3.0 + s + 2.0 * k) / (1.0 + s + 2.0 * k));
    }
    cp.t_sign.assign(n, 1);
    cp.asymptote = {{0.5 * omega_c, 0.25 * omega_c}};
    return cp;
}

ChainParameters laguerre_chain(double alpha, double s, double omega_c, int n) {
    if (n < 1) throw Error("laguerre_chain: n must be >= 1");
    if (!(alpha > 0.0) || s < 0.0 || !(omega_c > 0.0))
        throw Error("laguerre_chain: invalid parameters");
    ChainParameters cp;
    cp.g = omega_c;
    cp.source = "laguerre";
    cp.c0 = omega_c * std::sqrt(2.0 * alpha * std::tgamma(s + 1.0));
    cp.omega.resize(n);
    cp.t.resize(n);
    for (int k = 0; k < n; ++k) {
        cp.omega[k] = omega_c * (2.0 * k + 1.0 + s);
        cp.t[k] = omega_c * std::sqrt((k + 1.0) * (k + s + 1.0));
    }
    cp.t_sign.assign(n, 1);
    return cp;
}

int littleq_max_sites(double delta, double s) {
    if (!(delta > 1.0)) throw DeltaOutOfRange("littleq_max_sites requires delta > 1");
    // largest n with delta^-n(1+s) >= 1e-300
    return static_cast<int>(std::floor(300.0 * std::log(10.0) /
                                       ((1.0 + s) * std::log(delta)))) +
           1;
}

double littleq_zeta_s(double s, double omega_c, double delta) {
    return (s + 1.0) / (s + 2.0) * (1.0 - std::pow(delta, -(s + 2.0))) /
           (1.0 - std::pow(delta, -(s + 1.0))) * omega_c;
}

double littleq_norm_ratio(double delta, double s, int n) {
    const qpoly::LittleQ<double> lq{delta, s};
    return std::sqrt(lq.norm2_ratio(n));
}

double littleq_t_signed(double s, double omega_c, double delta, int n) {
    const qpoly::LittleQ<double> lq{delta, s};
    return -littleq_zeta_s(s, omega_c, delta) * littleq_norm_ratio(delta, s, n) * lq.A(n);
}

ChainParameters littleq_chain(double alpha, double s, double omega_c, double delta, int n) {
    if (!(delta > 1.0)) throw DeltaOutOfRange("littleq_chain requires delta > 1");
    if (n < 1) throw Error("littleq_chain: n must be >= 1");
    const int cap = littleq_max_sites(delta, s);
    if (n > cap)
        throw MeasureDegenerate("littleq_chain: star weights underflow past " +
                                std::to_string(cap) + " sites (requested " +
                                std::to_string(n) + ")");
    const qpoly::LittleQ<double> lq{delta, s};
    const double zeta_s = littleq_zeta_s(s, omega_c, delta);
    ChainParameters cp;
    cp.g = zeta_s;
    cp.source = "little-q";
    cp.c0 = omega_c * std::sqrt(2.0 * alpha / (s + 1.0));
    cp.omega.resize(n);
    cp.t.resize(n);
    cp.t_sign.assign(n, -1); // analytic hoppings carry a minus sign; gauge-fixed
    for (int k = 0; k < n; ++k) {
        cp.omega[k] = zeta_s * (lq.A(k) + lq.C(k));
        cp.t[k] = zeta_s * lq.A(k) * std::sqrt(lq.norm2_ratio(k));
    }
    return cp;
}

ChainParameters hahn_chain(double alpha, double s, double omega_c, int N, int n) {
    if (N < 1) throw Error("hahn_chain: N must be >= 1");
    if (n < 1) throw Error("hahn_chain: n must be >= 1");
    if (n > N + 1)
        throw IndexBeyondModes("hahn_chain: " + std::to_string(n) +
                               " sites requested from " + std::to_string(N + 1) + " modes");
    if (!(alpha > 0.0) || s < 0.0 || !(omega_c > 0.0))
        throw Error("hahn_chain: invalid parameters");
    const qpoly::Hahn<double> hn{s, N};
    const double g = omega_c / (N + 1.0);
    ChainParameters cp;
    cp.g = g;
    cp.source = "hahn";
    // c0^2 = sum of the induced point masses = eta0/pi
    const double logc = std::lgamma(s + N + 2.0) - std::lgamma(s + 2.0) -
                        std::lgamma(N + 1.0) - (s + 1.0) * std::log(N + 1.0);
    cp.c0 = omega_c * std::sqrt(2.0 * alpha * std::exp(logc));
    cp.omega.resize(n);
    const int t_count = std::min(n, N);
    cp.t.resize(t_count);
    cp.t_sign.assign(t_count, 1);
    for (int k = 0; k < n; ++k) cp.omega[k] = g * (hn.A(k) + hn.C(k));
    for (int k = 0; k < t_count; ++k) cp.t[k] = g * hn.A(k) * std::sqrt(hn.rho2_ratio(k));
    return cp;
}

DiscretisedStarModel star_model(const SpectralDensity& J) {
    validate(J);
    DiscretisedStarModel sm;
    switch (J.kind) {
        case Family::LogDiscretised: {
            const double gamma_s2 = 2.0 * M_PI * J.alpha / (1.0 + J.s) * J.omega_c *
                                    J.omega_c * (1.0 - std::pow(J.delta, -(1.0 + J.s)));
            const double zeta_s = littleq_zeta_s(J.s, J.omega_c, J.delta);
            const int cap = littleq_max_sites(J.delta, J.s);
            const double r = std::pow(J.delta, -(1.0 + J.s));
            double g2 = gamma_s2;
            double z = zeta_s;
            for (int k = 0; k < cap; ++k) {
                sm.gamma.push_back(std::sqrt(g2));
                sm.zeta.push_back(z);
                g2 *= r;
                z /= J.delta;
            }
            break;
        }
        case Family::LinearDiscretised: {
            const int N = J.n_modes - 1;
            double g2 = 2.0 * M_PI * J.alpha * J.omega_c * J.omega_c *
                        std::pow(N + 1.0, -(J.s + 1.0));
            for (int k = 0; k <= N; ++k) {
                sm.zeta.push_back(J.omega_c * k / (N + 1.0));
                sm.gamma.push_back(std::sqrt(g2));
                g2 *= (J.s + k + 1.0) / (k + 1.0);
            }
            break;
        }
        case Family::PointMasses: {
            for (const auto& [w, weight] : J.masses) {
                sm.zeta.push_back(w);
                sm.gamma.push_back(std::sqrt(weight));
            }
            break;
        }
        default:
            throw Error("star_model: density is not discrete");
    }
    return sm;
}

double bulla_recursion_check(const std::vector<std::vector<double>>& U,
                             const std::vector<double>& zeta, const std::vector<double>& omega,
                             const std::vector<double>& t) {
    const std::size_t rows = U.size();
    if (rows < 2) throw DimensionMismatch("bulla_recursion_check: need at least 2 rows");
    const std::size_t cols = U[0].size();
    for (const auto& row : U)
        if (row.size() != cols)
            throw DimensionMismatch("bulla_recursion_check: ragged transform matrix");
    if (zeta.size() < cols || omega.size() < rows - 1 || t.size() < rows - 1)
        throw DimensionMismatch("bulla_recursion_check: parameter arrays too short");
    double worst = 0.0;
    for (std::size_t m = 0; m + 1 < rows; ++m) {
        for (std::size_t k = 0; k < cols; ++k) {
            double r = zeta[k] * U[m][k] - omega[m] * U[m][k] - t[m] * U[m + 1][k];
            if (m > 0) r -= t[m - 1] * U[m - 1][k];
            worst = std::max(worst, std::fabs(r));
        }
    }
    return worst;
}

std::vector<std::vector<double>> littleq_transform_block(double delta, double s, int rows,
                                                         int cols) {
    const qpoly::LittleQ<double> lq{delta, s};
    std::vector<double> norms(rows);
    for (int m = 0; m < rows; ++m) norms[m] = std::sqrt(lq.norm2(m));
    std::vector<std::vector<double>> U(rows, std::vector<double>(cols, 0.0));
    for (int k = 0; k < cols; ++k) {
        const double x = std::pow(delta, -k);
        const double half_weight = std::pow(delta, -0.5 * k * (1.0 + s));
        const auto p = lq.eval_all(x, rows - 1);
        for (int m = 0; m < rows; ++m) U[m][k] = half_weight * p[m] / norms[m];
    }
    return U;
}

std::vector<std::vector<double>> hahn_transform_block(double s, int N, int rows) {
    const qpoly::Hahn<double> hn{s, N};
    const auto w = hn.lattice_weights();
    // rho_m^2 by the ratio recurrence; rho_0^2 = sum of lattice weights
    std::vector<double> rho2(rows);
    double acc = 0.0;
    for (double v : w) acc += v;
    rho2[0] = acc;
    for (int m = 0; m + 1 < rows; ++m) rho2[m + 1] = rho2[m] * hn.rho2_ratio(m);
    std::vector<std::vector<double>> U(rows, std::vector<double>(N + 1, 0.0));
    for (int k = 0; k <= N; ++k) {
        const auto q = hn.eval_all(static_cast<double>(k), rows - 1);
        for (int m = 0; m < rows; ++m)
            U[m][k] = std::sqrt(w[k] / rho2[m]) * q[m];
    }
    return U;
}

} // namespace chainmap
