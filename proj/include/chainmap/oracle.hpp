// oracle.hpp — independent brute-force references at extended precision
//
// Everything here is deliberately slow and simple: exact rational Gram-Schmidt
// on moments, direct orthogonality summations for the discrete families, and
// graded-panel quadrature at 100 decimal digits. The engines are accepted
// only against these values.

#pragma once

#include <functional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "chainmap/measure.hpp"
#include "chainmap/recurrence.hpp"

namespace chainmap::oracle {

using BigFloat =
    boost::multiprecision::number<boost::multiprecision::cpp_bin_float<100>>;
using BigRational = boost::multiprecision::cpp_rational;

struct ExactRecurrence {
    std::vector<BigRational> alpha;
    std::vector<BigRational> beta; // beta[0] = mu_0
};

// Exact Gram-Schmidt from rational moments (throws MomentMatrixSingular when
// the Hankel form degenerates before n terms).
ExactRecurrence gram_schmidt_exact(const std::vector<BigRational>& moments, int n);

// mu_r = scale / (s + r + 1) for w = scale * x^s on [0, 1], integer s >= 0.
std::vector<BigRational> monomial_moments(int s, int count, const BigRational& scale = 1);

RecurrenceCoefficients to_double(const ExactRecurrence& rc);

// ----------------------- discrete orthogonality sums -----------------------

// sum_k delta^-k(1+s) p_a(delta^-k) p_b(delta^-k), terms chosen from the
// geometric tail bound (throws TailNotConverged if the bound cannot be met).
BigFloat littleq_orthogonality_sum(double delta, double s, int a, int b, int terms = 0);
BigFloat littleq_norm2_closed(double delta, double s, int n);

// finite sum over the Hahn lattice with weight C(s+x, x); exact term count.
BigFloat hahn_orthogonality_sum(int N, double s, int a, int b);
// the paper's displayed normalisation expression, evaluated literally
BigFloat hahn_rho_expression(int N, double s, int k);

// --------------------------- high-precision quadrature ---------------------------

struct OracleWeight {
    enum class Kind { PowerBounded, PowerExp } kind = Kind::PowerBounded;
    double c = 1.0; // w = c * (x - a)^s on [a, b], or c * x^s e^-x on [0, inf)
    double s = 0.0;
    double a = 0.0;
    double b = 1.0;
};

BigFloat highprec_quadrature(const OracleWeight& w,
                             const std::function<BigFloat(const BigFloat&)>& f, int digits,
                             bool f_log_singular_at_a = false,
                             bool f_log_singular_at_b = false);

// Measure overload per the module contract; requires a closed moment form or
// point masses, otherwise the singular structure is undeclared.
BigFloat highprec_quadrature(const Measure& m,
                             const std::function<BigFloat(const BigFloat&)>& f, int digits);

// Brute-force Szego integral for w = x^s on [0, 1] (theta substitution).
BigFloat szego_integral_monomial(double s, int digits);

// ------------------------------- fixture -------------------------------

// The derived-values fixture consumed by the test suite; deterministic bytes.
std::string render_fixture();

// Section names accepted by `chainmap oracle --case`.
std::vector<std::string> fixture_cases();
std::string render_case(const std::string& name);

} // namespace chainmap::oracle
