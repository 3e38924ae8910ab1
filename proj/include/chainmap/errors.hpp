// errors.hpp — exception types shared across the library

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace chainmap {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Measure construction / integration
struct NonIntegrable : Error { using Error::Error; };
struct NegativeDensity : Error { using Error::Error; };

// Recurrence engines
struct NoConvergence : Error { using Error::Error; };
struct MeasureDegenerate : Error { using Error::Error; };
struct UnboundedSupport : Error { using Error::Error; };
struct EigenFailure : Error { using Error::Error; };

// Loss of all significant digits in the moment-based engine. Carries the
// coefficients computed before the breakdown so callers can still inspect
// how far the run degraded.
struct PrecisionExhausted : Error {
    PrecisionExhausted(const std::string& msg,
                       std::vector<double> alpha_partial,
                       std::vector<double> beta_partial)
        : Error(msg), alpha(std::move(alpha_partial)), beta(std::move(beta_partial)) {}
    std::vector<double> alpha;
    std::vector<double> beta;
};

// Chain families
struct DeltaOutOfRange : Error { using Error::Error; };
struct IndexBeyondModes : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };

// Oracle
struct MomentMatrixSingular : Error { using Error::Error; };
struct TailNotConverged : Error { using Error::Error; };
struct SingularityUndeclared : Error { using Error::Error; };

// CLI / config
struct ConfigError : Error { using Error::Error; };

} // namespace chainmap
