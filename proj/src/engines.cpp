#include "chainmap/engines.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "chainmap/errors.hpp"
#include "chainmap/kernels.hpp"
#include "dd.hpp"
#include "sigma_table.hpp"

namespace chainmap {
namespace {

std::size_t quad_cap(const EngineOptions& opt) {
    if (const char* env = std::getenv("CHAINMAP_QUAD_MAX")) {
        const long v = std::atol(env);
        if (v > 0) return std::min<std::size_t>(opt.max_points, v);
    }
    return opt.max_points;
}

// Relative change between successive refinement levels, per coefficient.
std::vector<double> coefficient_deltas(const RecurrenceCoefficients& a,
                                       const RecurrenceCoefficients& b) {
    std::vector<double> est(a.n_terms(), 0.0);
    for (std::size_t k = 0; k < a.n_terms(); ++k) {
        const double sa = std::max({std::fabs(a.alpha[k]), std::sqrt(a.beta[k]), 1e-300});
        const double da = std::fabs(a.alpha[k] - b.alpha[k]) / sa;
        const double db = std::fabs(a.beta[k] - b.beta[k]) / std::max(a.beta[k], 1e-300);
        est[k] = std::max(da, db);
    }
    return est;
}

constexpr double kEstFloor = 1e-14;

std::vector<double> with_floor(std::vector<double> est) {
    for (std::size_t k = 0; k < est.size(); ++k)
        est[k] = std::max(est[k], kEstFloor * (1.0 + 0.1 * static_cast<double>(k)));
    return est;
}

QuadratureRule reversed(const QuadratureRule& rule) {
    QuadratureRule r;
    r.nodes.assign(rule.nodes.rbegin(), rule.nodes.rend());
    r.weights.assign(rule.weights.rbegin(), rule.weights.rend());
    return r;
}

// Refinement driver shared by both discretising engines: double the panel
// rule until the coefficients stabilise, starting from max(4n, 64) points.
template <class EngineOnRule>
RecurrenceCoefficients refine_on_measure(const Measure& m, int n, const EngineOptions& opt,
                                         EngineOnRule&& engine) {
    const std::size_t cap = quad_cap(opt);
    int k_points = default_points_per_panel(m, n);
    {
        // honour the requested starting budget
        const QuadratureRule probe = discretise(m, n, k_points);
        const std::size_t floor_pts =
            std::max<std::size_t>({static_cast<std::size_t>(std::max(4 * n, 64)),
                                   static_cast<std::size_t>(std::max(opt.quad_points, 0))});
        if (probe.size() < floor_pts && !probe.nodes.empty()) {
            const double scale = static_cast<double>(floor_pts) / probe.size();
            k_points = static_cast<int>(std::ceil(k_points * scale));
        }
    }

    RecurrenceCoefficients prev;
    bool have_prev = false;
    double prev_worst = HUGE_VAL;
    while (true) {
        QuadratureRule rule = merged(discretise(m, n, k_points));
        if (rule.size() > cap)
            throw NoConvergence("quadrature refinement exceeded the point cap before reaching "
                                "tolerance (cap " +
                                std::to_string(cap) + ")");
        RecurrenceCoefficients rc = engine(rule, n);
        rc.quad_points = rule.size();
        if (have_prev) {
            auto est = coefficient_deltas(rc, prev);
            const double worst = *std::max_element(est.begin(), est.end());
            rc.est_error = with_floor(std::move(est));
            // accept on tolerance, or on a rounding-noise plateau well below
            // anything the discretisation error could explain
            const bool plateau = worst >= 0.25 * prev_worst && worst < 1e-10;
            if (worst < opt.tolerance || plateau) {
                if (m.bounded()) rc.support = {{m.support.a, m.support.b}};
                return rc;
            }
            prev_worst = worst;
        }
        prev = std::move(rc);
        have_prev = true;
        k_points *= 2;
    }
}

// ------------------------- Stieltjes (orthonormal form) -------------------------

RecurrenceCoefficients stieltjes_core(const QuadratureRule& rule, int n) {
    const auto& ops = kernels::active();
    const std::size_t m = rule.size();
    if (n < 1) throw Error("stieltjes: n must be >= 1");
    if (static_cast<std::size_t>(n) > m)
        throw MeasureDegenerate("stieltjes: rule has fewer nodes than requested coefficients");

    RecurrenceCoefficients rc;
    rc.engine = EngineKind::StieltjesDiscretised;
    rc.alpha.resize(n);
    rc.beta.resize(n);

    const double mu0 = ops.weighted_sum(rule.weights.data(), m);
    if (!(mu0 > 0.0)) throw MeasureDegenerate("stieltjes: non-positive total mass");
    rc.beta[0] = mu0;

    // p holds the orthonormal polynomial values at the nodes
    std::vector<double> p(m, 1.0 / std::sqrt(mu0)), pm1(m, 0.0), next(m);
    double sqrt_beta_k = 0.0; // sqrt(beta_k) entering step k (0 for k = 0)
    for (int k = 0; k < n; ++k) {
        double s_pp = 0.0, s_xpp = 0.0;
        ops.weighted_norm_moment(rule.nodes.data(), rule.weights.data(), p.data(), m, s_pp,
                                 s_xpp);
        if (!(s_pp > 0.0))
            throw MeasureDegenerate("stieltjes: lost positivity at k = " + std::to_string(k));
        rc.alpha[k] = s_xpp / s_pp;
        if (k + 1 < n) {
            ops.recurrence_update(rule.nodes.data(), rc.alpha[k], sqrt_beta_k, p.data(),
                                  pm1.data(), next.data(), m);
            double b_pp = 0.0, b_xpp = 0.0;
            ops.weighted_norm_moment(rule.nodes.data(), rule.weights.data(), next.data(), m,
                                     b_pp, b_xpp);
            if (!(b_pp > 0.0))
                throw MeasureDegenerate("stieltjes: beta[" + std::to_string(k + 1) +
                                        "] <= 0 (rank-deficient discretisation)");
            rc.beta[k + 1] = b_pp;
            sqrt_beta_k = std::sqrt(b_pp);
            std::swap(pm1, p);
            std::swap(p, next);
            ops.scale_inplace(p.data(), 1.0 / sqrt_beta_k, m);
        }
    }
    rc.est_error.assign(n, kEstFloor);
    return rc;
}

// ------------------------------ Lanczos (RKPW) ------------------------------

template <class Real>
void rkpw_core(const QuadratureRule& rule, int n, std::vector<double>& alpha,
               std::vector<double>& beta) {
    const std::size_t m = rule.size();
    std::vector<Real> p0(m), p1(m, Real(0.0));
    for (std::size_t i = 0; i < m; ++i) p0[i] = Real(rule.nodes[i]);
    p1[0] = Real(rule.weights[0]);
    for (std::size_t j = 0; j + 1 < m; ++j) {
        Real pn = Real(rule.weights[j + 1]);
        Real gam = Real(1.0), sig = Real(0.0), t = Real(0.0);
        const Real xlam = Real(rule.nodes[j + 1]);
        for (std::size_t k = 0; k <= j + 1; ++k) {
            const Real rho = p1[k] + pn;
            const Real tmp = gam * rho;
            const Real tsig = sig;
            if (rho <= Real(0.0)) {
                gam = Real(1.0);
                sig = Real(0.0);
            } else {
                gam = p1[k] / rho;
                sig = pn / rho;
            }
            const Real tk = sig * (p0[k] - xlam) - gam * t;
            p0[k] = p0[k] - (tk - t);
            t = tk;
            pn = (sig <= Real(0.0)) ? tsig * p1[k] : (t * t) / sig;
            p1[k] = tmp;
        }
    }
    alpha.resize(n);
    beta.resize(n);
    for (int k = 0; k < n; ++k) {
        alpha[k] = static_cast<double>(p0[k]);
        beta[k] = static_cast<double>(p1[k]);
    }
}

// Exponentially graded weights need the double-double path to keep the small
// coefficients accurate to near machine relative precision.
bool needs_extended(const QuadratureRule& rule) {
    double wmin = HUGE_VAL, wmax = 0.0;
    for (double w : rule.weights) {
        wmin = std::min(wmin, w);
        wmax = std::max(wmax, w);
    }
    return rule.size() <= 8192 && wmax > 0.0 && wmin / wmax < 1e-10;
}

RecurrenceCoefficients lanczos_core(const QuadratureRule& rule, int n, bool allow_extended) {
    if (n < 1) throw Error("lanczos_rkpw: n must be >= 1");
    if (rule.size() < static_cast<std::size_t>(n))
        throw MeasureDegenerate("lanczos_rkpw: rule has fewer nodes than requested coefficients");
    RecurrenceCoefficients rc;
    rc.engine = EngineKind::LanczosRKPW;
    if (allow_extended && needs_extended(rule))
        rkpw_core<detail::DD>(rule, n, rc.alpha, rc.beta);
    else
        rkpw_core<double>(rule, n, rc.alpha, rc.beta);
    for (int k = 1; k < n; ++k)
        if (!(rc.beta[k] > 0.0))
            throw MeasureDegenerate("lanczos_rkpw: beta[" + std::to_string(k) + "] <= 0");
    rc.est_error.assign(n, kEstFloor);
    return rc;
}

} // namespace

RecurrenceCoefficients stieltjes_on_rule(const QuadratureRule& rule, int n) {
    return stieltjes_core(rule, n);
}

RecurrenceCoefficients stieltjes_discretised(const Measure& m, int n, const EngineOptions& opt) {
    if (opt.quad_points > 0 && opt.quad_points < 2 * n)
        throw Error("stieltjes_discretised: quad_points must be >= 2n");
    if (m.discrete()) {
        const QuadratureRule rule = merged(discretise(m, n));
        if (rule.size() < static_cast<std::size_t>(n))
            throw MeasureDegenerate(
                "stieltjes_discretised: discrete measure supports only " +
                std::to_string(rule.size()) + " coefficients, requested " + std::to_string(n));
        RecurrenceCoefficients rc = stieltjes_core(rule, n);
        rc.quad_points = rule.size();
        RecurrenceCoefficients rev = stieltjes_core(reversed(rule), n);
        auto est = coefficient_deltas(rc, rev);
        // the recursive procedure loses digits geometrically on graded
        // discrete measures; reflect that in the estimate
        for (std::size_t k = 0; k < est.size(); ++k)
            est[k] = std::max(est[k], 1e-15 * std::pow(2.0, static_cast<double>(k)));
        rc.est_error = with_floor(std::move(est));
        rc.support = {{m.support.a, m.support.b}};
        return rc;
    }
    return refine_on_measure(m, n, opt,
                             [](const QuadratureRule& r, int nn) { return stieltjes_core(r, nn); });
}

RecurrenceCoefficients lanczos_rkpw(const QuadratureRule& rule, int n) {
    QuadratureRule r = merged(rule);
    RecurrenceCoefficients rc = lanczos_core(r, n, true);
    rc.quad_points = r.size();
    return rc;
}

RecurrenceCoefficients lanczos_rkpw(const Measure& m, int n, const EngineOptions& opt) {
    if (m.discrete()) {
        const QuadratureRule rule = merged(discretise(m, n));
        if (rule.size() < static_cast<std::size_t>(n))
            throw MeasureDegenerate("lanczos_rkpw: discrete measure supports only " +
                                    std::to_string(rule.size()) +
                                    " coefficients, requested " + std::to_string(n));
        RecurrenceCoefficients rc = lanczos_core(rule, n, true);
        rc.quad_points = rule.size();
        RecurrenceCoefficients rev = lanczos_core(reversed(rule), n, true);
        rc.est_error = with_floor(coefficient_deltas(rc, rev));
        rc.support = {{m.support.a, m.support.b}};
        return rc;
    }
    // continuous rules stay in plain doubles; the refinement deltas measure
    // the achieved accuracy
    return refine_on_measure(m, n, opt, [](const QuadratureRule& r, int nn) {
        return lanczos_core(r, nn, false);
    });
}

// --------------------- moments -> coefficients (sigma table) ---------------------

namespace {

std::vector<double> moments_for(const Measure& m, int count, const EngineOptions& opt) {
    std::vector<double> mu(count);
    if (has_exact_moments(m)) {
        for (int r = 0; r < count; ++r) mu[r] = measure_moment(m, r);
        return mu;
    }
    // quadrature fallback, converged for degree count-1
    const int n_equiv = (count + 1) / 2;
    const QuadratureRule rule = merged(discretise(m, n_equiv));
    (void)opt;
    for (int r = 0; r < count; ++r) {
        double acc = 0.0;
        for (std::size_t i = 0; i < rule.size(); ++i)
            acc += rule.weights[i] * std::pow(rule.nodes[i], r);
        mu[r] = acc;
    }
    return mu;
}

} // namespace

namespace oracle_detail {
// implemented in oracle.cpp (100-digit arithmetic)
RecurrenceCoefficients moment_gram_schmidt_highprec(const Measure& m, int n);
} // namespace oracle_detail

RecurrenceCoefficients moment_gram_schmidt(const Measure& m, int n, int precision_digits) {
    if (n < 1) throw Error("moment_gram_schmidt: n must be >= 1");
    if (precision_digits > 17) return oracle_detail::moment_gram_schmidt_highprec(m, n);

    const std::vector<double> mu = moments_for(m, 2 * n, {});
    RecurrenceCoefficients rc;
    rc.engine = EngineKind::MomentGramSchmidt;
    const int valid = detail::sigma_table(mu, n, rc.alpha, rc.beta);
    if (valid < n)
        throw PrecisionExhausted(
            "moment_gram_schmidt: beta[" + std::to_string(valid) +
                "] <= 0 at double precision (all significant digits lost)",
            rc.alpha, rc.beta);
    // known conditioning growth of the raw-moment map
    rc.est_error.resize(rc.alpha.size());
    for (std::size_t k = 0; k < rc.est_error.size(); ++k)
        rc.est_error[k] = 1e-16 * std::pow(17.0, static_cast<double>(k));
    return rc;
}

} // namespace chainmap
