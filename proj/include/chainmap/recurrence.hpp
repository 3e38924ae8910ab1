// recurrence.hpp — monic three-term recurrence coefficients
//
// Convention: beta[0] stores the total mass mu_0, so c0 = sqrt(beta[0]) and
// t_n = g*sqrt(beta[n+1]) flow uniformly into the chain assembly. beta[k] for
// k >= 1 are the usual norm ratios and are strictly positive.

#pragma once

#include <optional>
#include <string>
#include <vector>

namespace chainmap {

enum class EngineKind {
    ClosedForm,
    StieltjesDiscretised,
    LanczosRKPW,
    ModifiedChebyshev, // reserved; not an implemented engine
    MomentGramSchmidt,
};

const char* engine_name(EngineKind e);

struct RecurrenceCoefficients {
    std::vector<double> alpha;
    std::vector<double> beta;     // beta[0] = mu_0
    std::vector<double> est_error; // per-coefficient relative error estimate
    EngineKind engine = EngineKind::ClosedForm;
    std::optional<std::pair<double, double>> support; // known support interval
    std::size_t quad_points = 0; // discretisation size behind the run (0 = closed form)

    std::size_t n_terms() const { return alpha.size(); }
};

// Throws on violated invariants (sizes, positivity of beta).
void check_valid(const RecurrenceCoefficients& rc);

struct OrthonormalCoefficients {
    std::vector<double> A; // A_k = alpha_k / sqrt(beta_{k+1})
    std::vector<double> B; // B_k = sqrt(beta_k / beta_{k+1})
    std::vector<double> C; // C_k = 1 / sqrt(beta_{k+1})
};

OrthonormalCoefficients to_orthonormal(const RecurrenceCoefficients& rc);

struct Interval {
    double a;
    double b;
};

// alpha'_k = m*alpha_k + c, beta'_k = m^2*beta_k (k >= 1), beta'_0 = m*beta_0.
RecurrenceCoefficients affine_transform(const RecurrenceCoefficients& rc,
                                        Interval from, Interval to);

// Two-column "alpha beta" text and a JSON form; both with 17 significant
// digits so the round-trip is bit-exact.
std::string to_text(const RecurrenceCoefficients& rc);
std::string to_json(const RecurrenceCoefficients& rc);
RecurrenceCoefficients from_text(const std::string& text);
RecurrenceCoefficients from_json(const std::string& json);

// %.16e, lowercase exponent: the project-wide lossless number format.
std::string format_double(double v);

} // namespace chainmap
