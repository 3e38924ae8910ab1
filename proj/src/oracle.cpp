#include "chainmap/oracle.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "chainmap/errors.hpp"
#include "qpoly.hpp"
#include "sigma_table.hpp"

namespace chainmap::oracle {
namespace {

BigFloat bf_pi() { return boost::math::constants::pi<BigFloat>(); }

// ------------------------- BigFloat Gauss-Legendre -------------------------

struct BigGL {
    std::vector<BigFloat> nodes;
    std::vector<BigFloat> weights;
};

const BigGL& big_gauss_legendre(int k) {
    static std::map<int, BigGL> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;

    BigGL r;
    r.nodes.resize(k);
    r.weights.resize(k);
    const int m = (k + 1) / 2;
    for (int i = 0; i < m; ++i) {
        BigFloat x(std::cos(M_PI * (i + 0.75) / (k + 0.5)));
        BigFloat dp(0);
        for (int iter = 0; iter < 200; ++iter) {
            BigFloat p0(1), p1(0);
            for (int j = 0; j < k; ++j) {
                const BigFloat p2 = p1;
                p1 = p0;
                p0 = ((2 * j + 1) * x * p1 - j * p2) / (j + 1);
            }
            dp = k * (x * p0 - p1) / (x * x - 1);
            const BigFloat dx = p0 / dp;
            x -= dx;
            if (abs(dx) < BigFloat("1e-105")) break;
        }
        r.nodes[i] = -x;
        r.nodes[k - 1 - i] = x;
        const BigFloat w = 2 / ((1 - x * x) * dp * dp);
        r.weights[i] = w;
        r.weights[k - 1 - i] = w;
    }
    if (k % 2 == 1) r.nodes[k / 2] = BigFloat(0);
    return cache.emplace(k, std::move(r)).first->second;
}

template <class F>
BigFloat big_panel(F&& f, const BigFloat& a, const BigFloat& b, int k) {
    const BigGL& r = big_gauss_legendre(k);
    const BigFloat mid = (a + b) / 2, half = (b - a) / 2;
    BigFloat acc(0);
    for (int i = 0; i < k; ++i) acc += r.weights[i] * f(mid + half * r.nodes[i]);
    return acc * half;
}

// Graded-panel integration of g over [a, b]; grading depth covers endpoint
// power/log behaviour to the requested digit count.
template <class G>
BigFloat graded_integral(G&& g, const BigFloat& a, const BigFloat& b, int digits,
                         double exp_a, double exp_b, bool log_a, bool log_b, int k) {
    auto depth = [&](double p, bool lg) {
        const double p1 = p + 1.0;
        if (p1 <= 0.0) throw SingularityUndeclared("endpoint exponent <= -1");
        int d = static_cast<int>(std::ceil(3.4 * (digits + 8) / p1));
        if (lg) d = std::max(d, static_cast<int>(std::ceil(3.4 * (digits + 8))));
        return std::min(d, 4000);
    };
    std::vector<std::pair<BigFloat, BigFloat>> panels;
    const bool grade_a = exp_a != 0.0 || log_a;
    const bool grade_b = exp_b != 0.0 || log_b;
    const BigFloat mid = (a + b) / 2;
    auto graded_left = [&](const BigFloat& u, const BigFloat& v, int d) {
        BigFloat hi = v;
        for (int j = 1; j < d; ++j) {
            const BigFloat lo = u + (v - u) / pow(BigFloat(2), j);
            panels.emplace_back(lo, hi);
            hi = lo;
        }
        panels.emplace_back(u, hi);
    };
    auto graded_right = [&](const BigFloat& u, const BigFloat& v, int d) {
        BigFloat lo = u;
        for (int j = 1; j < d; ++j) {
            const BigFloat hi = v - (v - u) / pow(BigFloat(2), j);
            panels.emplace_back(lo, hi);
            lo = hi;
        }
        panels.emplace_back(lo, v);
    };
    if (grade_a && grade_b) {
        graded_left(a, mid, depth(exp_a, log_a));
        graded_right(mid, b, depth(exp_b, log_b));
    } else if (grade_a) {
        graded_left(a, b, depth(exp_a, log_a));
    } else if (grade_b) {
        graded_right(a, b, depth(exp_b, log_b));
    } else {
        panels.emplace_back(a, b);
    }
    BigFloat acc(0);
    for (const auto& [lo, hi] : panels) acc += big_panel(g, lo, hi, k);
    return acc;
}

} // namespace

// ------------------------------ exact Gram-Schmidt ------------------------------

ExactRecurrence gram_schmidt_exact(const std::vector<BigRational>& moments, int n) {
    ExactRecurrence out;
    const int valid = chainmap::detail::sigma_table(moments, n, out.alpha, out.beta);
    if (valid < n)
        throw MomentMatrixSingular("gram_schmidt_exact: Hankel form degenerates at k = " +
                                   std::to_string(valid));
    return out;
}

std::vector<BigRational> monomial_moments(int s, int count, const BigRational& scale) {
    if (s < 0) throw Error("monomial_moments: s must be a nonnegative integer");
    std::vector<BigRational> mu(count);
    for (int r = 0; r < count; ++r) mu[r] = scale / BigRational(s + r + 1);
    return mu;
}

RecurrenceCoefficients to_double(const ExactRecurrence& rc) {
    RecurrenceCoefficients out;
    out.engine = EngineKind::MomentGramSchmidt;
    out.alpha.reserve(rc.alpha.size());
    out.beta.reserve(rc.beta.size());
    for (const auto& a : rc.alpha) out.alpha.push_back(static_cast<double>(a));
    for (const auto& b : rc.beta) out.beta.push_back(static_cast<double>(b));
    out.est_error.assign(out.alpha.size(), 0.0);
    return out;
}

// --------------------------- discrete orthogonality ---------------------------

BigFloat littleq_orthogonality_sum(double delta, double s, int a, int b, int terms) {
    if (!(delta > 1.0)) throw DeltaOutOfRange("littleq_orthogonality_sum: delta must be > 1");
    const qpoly::LittleQ<BigFloat> lq{BigFloat(delta), BigFloat(s)};
    const int mmax = std::max(a, b);
    if (terms <= 0) {
        // weight delta^-k(1+s); the polynomial factors tend to p(0) as k grows,
        // so the tail is geometric past the largest lattice scale involved
        terms = static_cast<int>(std::ceil((105.0 + 30.0) * std::log(10.0) /
                                           ((1.0 + s) * std::log(delta)))) +
                4 * mmax + 40;
    }
    BigFloat acc(0);
    for (int k = 0; k < terms; ++k) {
        const BigFloat x = pow(BigFloat(delta), -k);
        const BigFloat w = pow(BigFloat(delta), -BigFloat(k) * (1 + BigFloat(s)));
        const auto p = lq.eval_all(x, mmax);
        acc += w * p[a] * p[b];
        if (w < BigFloat("1e-130") && k > 4 * mmax) return acc;
    }
    throw TailNotConverged("littleq_orthogonality_sum: tail bound not reached in " +
                           std::to_string(terms) + " terms");
}

BigFloat littleq_norm2_closed(double delta, double s, int n) {
    const qpoly::LittleQ<BigFloat> lq{BigFloat(delta), BigFloat(s)};
    return lq.norm2(n);
}

BigFloat hahn_orthogonality_sum(int N, double s, int a, int b) {
    const qpoly::Hahn<BigFloat> hn{BigFloat(s), N};
    const auto w = hn.lattice_weights();
    const int mmax = std::max(a, b);
    BigFloat acc(0);
    for (int x = 0; x <= N; ++x) {
        const auto q = hn.eval_all(BigFloat(x), mmax);
        acc += w[x] * q[a] * q[b];
    }
    return acc;
}

BigFloat hahn_rho_expression(int N, double s, int k) {
    // (-1)^k (k+s+1)_{N+1} (1)_k k! / ((2k+s+1)(s+1)_k (-N)_k N!)
    auto poch = [](const BigFloat& x, int m) {
        BigFloat acc(1);
        for (int i = 0; i < m; ++i) acc *= x + i;
        return acc;
    };
    const BigFloat sign = (k % 2 == 0) ? BigFloat(1) : BigFloat(-1);
    BigFloat kfac(1), nfac(1);
    for (int i = 2; i <= k; ++i) kfac *= i;
    for (int i = 2; i <= N; ++i) nfac *= i;
    return sign * poch(BigFloat(k) + s + 1, N + 1) * poch(BigFloat(1), k) * kfac /
           ((2 * k + BigFloat(s) + 1) * poch(BigFloat(s) + 1, k) * poch(BigFloat(-N), k) *
            nfac);
}

// ------------------------------- quadrature -------------------------------

BigFloat highprec_quadrature(const OracleWeight& w,
                             const std::function<BigFloat(const BigFloat&)>& f, int digits,
                             bool f_log_a, bool f_log_b) {
    if (digits > 95) throw Error("highprec_quadrature: digits capped at 95");
    const int k = 48;
    if (w.kind == OracleWeight::Kind::PowerBounded) {
        const BigFloat a(w.a), b(w.b), c(w.c), s(w.s);
        auto g = [&](const BigFloat& x) {
            BigFloat v = c * f(x);
            if (w.s != 0.0) v *= pow(x - a, s);
            return v;
        };
        const BigFloat i1 =
            graded_integral(g, a, b, digits, w.s, 0.0, f_log_a, f_log_b, k);
        const BigFloat i2 =
            graded_integral(g, a, b, digits, w.s, 0.0, f_log_a, f_log_b, k + 10);
        if (abs(i2 - i1) > pow(BigFloat(10), -digits) * (1 + abs(i2)))
            throw SingularityUndeclared(
                "highprec_quadrature: panel refinement disagrees; integrand has "
                "undeclared singular behaviour");
        return i2;
    }
    // c x^s e^-x on [0, inf)
    const BigFloat c(w.c), s(w.s);
    auto g = [&](const BigFloat& x) { return c * f(x) * pow(x, s) * exp(-x); };
    const double x_end = 2.303 * (digits + 10) + 80.0;
    BigFloat acc(0);
    // graded toward 0 for the power factor, then width-8 panels
    acc += graded_integral(g, BigFloat(0), BigFloat(8), digits, w.s, 0.0, f_log_a, false, k);
    for (double lo = 8.0; lo < x_end; lo += 8.0)
        acc += big_panel(g, BigFloat(lo), BigFloat(std::min(lo + 8.0, x_end)), k);
    return acc;
}

BigFloat highprec_quadrature(const Measure& m,
                             const std::function<BigFloat(const BigFloat&)>& f, int digits) {
    if (m.discrete()) {
        BigFloat acc(0);
        for (const auto& pm : m.masses) acc += BigFloat(pm.w) * f(BigFloat(pm.x));
        return acc;
    }
    if (!m.moment_form)
        throw SingularityUndeclared(
            "highprec_quadrature: measure has no closed weight form; singular "
            "structure undeclared");
    OracleWeight w;
    if (m.moment_form->kind == ClosedMomentForm::Kind::PowerBounded) {
        w.kind = OracleWeight::Kind::PowerBounded;
        w.c = m.moment_form->c;
        w.s = m.moment_form->s;
        w.a = m.moment_form->a;
        w.b = m.moment_form->b;
    } else {
        w.kind = OracleWeight::Kind::PowerExp;
        w.c = m.moment_form->c;
        w.s = m.moment_form->s;
    }
    return highprec_quadrature(w, f, digits);
}

BigFloat szego_integral_monomial(double s, int digits) {
    // I = (1/2) integral_0^pi s ln((1 + cos t)/2) dt; log singularity at t = pi
    const BigFloat bs(s);
    auto f = [&](const BigFloat& t) { return bs * log((1 + cos(t)) / 2); };
    OracleWeight w;
    w.kind = OracleWeight::Kind::PowerBounded;
    w.a = 0.0;
    w.b = static_cast<double>(bf_pi()); // upper panel bound; exact pi below
    // integrate directly with graded panels toward pi
    const BigFloat a(0), b = bf_pi();
    const BigFloat i = graded_integral(f, a, b, digits, 0.0, 0.0, false, true, 48);
    return i / 2;
}

// ------------------------------- fixture -------------------------------

namespace {

std::string bf_str(const BigFloat& v, int digits = 50) {
    return v.str(digits, std::ios_base::scientific);
}

std::string rat_str(const BigRational& v) {
    std::ostringstream ss;
    ss << boost::multiprecision::numerator(v) << "/" << boost::multiprecision::denominator(v);
    return ss.str();
}

void emit_exact_case(std::ostringstream& out, const char* name, int s, int n) {
    const auto mu = monomial_moments(s, 2 * n);
    const auto rc = gram_schmidt_exact(mu, n);
    out << "    \"" << name << "\": {\n      \"alpha\": [";
    for (int k = 0; k < n; ++k)
        out << (k ? ", " : "") << "\"" << rat_str(rc.alpha[k]) << "\"";
    out << "],\n      \"beta\": [";
    for (int k = 0; k < n; ++k)
        out << (k ? ", " : "") << "\"" << rat_str(rc.beta[k]) << "\"";
    out << "],\n      \"alpha_dec\": [";
    for (int k = 0; k < n; ++k)
        out << (k ? ", " : "") << "\"" << bf_str(BigFloat(rc.alpha[k])) << "\"";
    out << "],\n      \"beta_dec\": [";
    for (int k = 0; k < n; ++k)
        out << (k ? ", " : "") << "\"" << bf_str(BigFloat(rc.beta[k])) << "\"";
    out << "]\n    }";
}

std::string render_monomials() {
    std::ostringstream out;
    out << "  \"monomial_gram_schmidt\": {\n";
    emit_exact_case(out, "s0_n12", 0, 12);
    out << ",\n";
    emit_exact_case(out, "s1_n12", 1, 12);
    out << ",\n";
    emit_exact_case(out, "s2_n12", 2, 12);
    out << ",\n";
    emit_exact_case(out, "s3_n12", 3, 12);
    out << "\n  }";
    return out.str();
}

std::string render_littleq() {
    std::ostringstream out;
    out << "  \"littleq_norms\": {\n";
    bool first_block = true;
    for (double delta : {1.5, 2.0, 3.0}) {
        for (double s : {0.0, 0.5, 1.0, 2.0}) {
            if (!first_block) out << ",\n";
            first_block = false;
            out << "    \"delta" << delta << "_s" << s << "\": {\n      \"brute\": [";
            BigFloat worst(0);
            for (int n = 0; n <= 15; ++n) {
                const BigFloat brute = littleq_orthogonality_sum(delta, s, n, n);
                const BigFloat closed = littleq_norm2_closed(delta, s, n);
                const BigFloat rel = abs(brute - closed) / closed;
                if (rel > worst) worst = rel;
                out << (n ? ", " : "") << "\"" << bf_str(brute, 40) << "\"";
            }
            out << "],\n      \"max_rel_diff_vs_closed\": \"" << bf_str(worst, 6)
                << "\"\n    }";
        }
    }
    out << "\n  }";
    return out.str();
}

std::string render_hahn() {
    std::ostringstream out;
    out << "  \"hahn_norms\": {\n";
    bool first_block = true;
    for (int N : {8, 12, 20}) {
        for (double s : {0.0, 0.5, 1.0, 2.0}) {
            if (!first_block) out << ",\n";
            first_block = false;
            BigFloat worst_sq(0), worst_lin(0);
            std::ostringstream vals;
            for (int k = 0; k <= std::min(N, 10); ++k) {
                const BigFloat brute = hahn_orthogonality_sum(N, s, k, k);
                const BigFloat expr = hahn_rho_expression(N, s, k);
                const BigFloat rel_sq = abs(brute - expr) / abs(brute);
                const BigFloat rel_lin = abs(sqrt(brute) - expr) / sqrt(brute);
                if (rel_sq > worst_sq) worst_sq = rel_sq;
                if (rel_lin > worst_lin) worst_lin = rel_lin;
                vals << (k ? ", " : "") << "\"" << bf_str(brute, 40) << "\"";
            }
            out << "    \"N" << N << "_s" << s << "\": {\n      \"brute_rho2\": [" <<
                vals.str() << "],\n      \"expr_matches_rho2_rel\": \"" << bf_str(worst_sq, 6)
                << "\",\n      \"expr_matches_rho_rel\": \"" << bf_str(worst_lin, 6)
                << "\"\n    }";
        }
    }
    out << "\n  }";
    return out.str();
}

std::string render_szego() {
    std::ostringstream out;
    out << "  \"szego_integrals\": {\n";
    bool first = true;
    for (double s : {0.5, 1.0, 3.0}) {
        if (!first) out << ",\n";
        first = false;
        const BigFloat brute = szego_integral_monomial(s, 40);
        const BigFloat ref = -BigFloat(s) * bf_pi() * log(BigFloat(2));
        out << "    \"s" << s << "\": {\"brute\": \"" << bf_str(brute, 40)
            << "\", \"minus_pi_s_ln2\": \"" << bf_str(ref, 40) << "\", \"abs_diff\": \""
            << bf_str(abs(brute - ref), 6) << "\"}";
    }
    out << "\n  }";
    return out.str();
}

std::string render_quadrature() {
    std::ostringstream out;
    auto one = [](const BigFloat&) { return BigFloat(1); };
    OracleWeight cube{OracleWeight::Kind::PowerBounded, 1.0, 3.0, 0.0, 1.0};
    OracleWeight expw{OracleWeight::Kind::PowerExp, 1.0, 2.0, 0.0, 1.0};
    out << "  \"highprec_quadrature\": {\n";
    out << "    \"int01_x3\": \"" << bf_str(highprec_quadrature(cube, one, 50), 50) << "\",\n";
    out << "    \"int0inf_x2_expmx\": \"" << bf_str(highprec_quadrature(expw, one, 50), 50)
        << "\"\n  }";
    return out.str();
}

std::string render_gauss() {
    std::ostringstream out;
    const BigFloat r3 = sqrt(BigFloat(3));
    out << "  \"gauss_legendre_2pt_on_01\": {\n    \"nodes\": [\""
        << bf_str((3 - r3) / 6) << "\", \"" << bf_str((3 + r3) / 6)
        << "\"],\n    \"weights\": [\"" << bf_str(BigFloat(1) / 2) << "\", \""
        << bf_str(BigFloat(1) / 2) << "\"]\n  }";
    return out.str();
}

std::string render_jacobi_values() {
    std::ostringstream out;
    // s = 1 hard cutoff at n = 0: omega_0 = 2/3 omega_c, t_0 = sqrt(2)/6 omega_c
    const BigFloat om0 = BigFloat(2) / 3;
    const BigFloat t0 = sqrt(BigFloat(2)) / 6;
    out << "  \"jacobi_s1_n0\": {\"omega0_over_omega_c\": \"" << bf_str(om0)
        << "\", \"t0_over_omega_c\": \"" << bf_str(t0) << "\"}";
    return out.str();
}

} // namespace

std::vector<std::string> fixture_cases() {
    return {"monomial_gram_schmidt", "littleq_norms", "hahn_norms",
            "szego_integrals",       "highprec_quadrature", "gauss_legendre_2pt_on_01",
            "jacobi_s1_n0"};
}

std::string render_case(const std::string& name) {
    if (name == "monomial_gram_schmidt") return render_monomials();
    if (name == "littleq_norms") return render_littleq();
    if (name == "hahn_norms") return render_hahn();
    if (name == "szego_integrals") return render_szego();
    if (name == "highprec_quadrature") return render_quadrature();
    if (name == "gauss_legendre_2pt_on_01") return render_gauss();
    if (name == "jacobi_s1_n0") return render_jacobi_values();
    throw Error("unknown oracle case: " + name);
}

std::string render_fixture() {
    std::ostringstream out;
    out << "{\n";
    const auto cases = fixture_cases();
    for (std::size_t i = 0; i < cases.size(); ++i)
        out << render_case(cases[i]) << (i + 1 < cases.size() ? ",\n" : "\n");
    out << "}\n";
    return out.str();
}

} // namespace chainmap::oracle

// -------------------- high-precision moment Gram-Schmidt --------------------

namespace chainmap::oracle_detail {

RecurrenceCoefficients moment_gram_schmidt_highprec(const Measure& m, int n) {
    using oracle::BigFloat;
    std::vector<BigFloat> mu(2 * n);
    if (m.discrete()) {
        for (int r = 0; r < 2 * n; ++r) {
            BigFloat acc(0);
            for (const auto& pm : m.masses) acc += BigFloat(pm.w) * pow(BigFloat(pm.x), r);
            mu[r] = acc;
        }
    } else if (m.moment_form) {
        const auto& fm = *m.moment_form;
        for (int r = 0; r < 2 * n; ++r) {
            const BigFloat e = BigFloat(fm.s) + r + 1;
            if (fm.kind == ClosedMomentForm::Kind::PowerBounded)
                mu[r] = BigFloat(fm.c) * (pow(BigFloat(fm.b), e) - pow(BigFloat(fm.a), e)) / e;
            else
                mu[r] = BigFloat(fm.c) * boost::math::tgamma(e);
        }
    } else {
        throw Error("moment_gram_schmidt: high-precision moments need a closed moment "
                    "form or point masses");
    }
    std::vector<BigFloat> alpha, beta;
    const int valid = chainmap::detail::sigma_table(mu, n, alpha, beta);
    if (valid < n)
        throw MomentMatrixSingular(
            "moment_gram_schmidt (high precision): Hankel form degenerates at k = " +
            std::to_string(valid));
    RecurrenceCoefficients rc;
    rc.engine = EngineKind::MomentGramSchmidt;
    rc.alpha.reserve(n);
    rc.beta.reserve(n);
    for (const auto& a : alpha) rc.alpha.push_back(static_cast<double>(a));
    for (const auto& b : beta) rc.beta.push_back(static_cast<double>(b));
    rc.est_error.resize(n);
    for (int k = 0; k < n; ++k)
        rc.est_error[k] = std::max(1e-99 * std::pow(17.0, k), 1e-99);
    return rc;
}

} // namespace chainmap::oracle_detail
