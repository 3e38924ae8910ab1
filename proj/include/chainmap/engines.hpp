// engines.hpp — recurrence-coefficient engines of differing stability
//
// stieltjes_discretised and lanczos_rkpw are the stable production engines,
// cross-checked against each other. moment_gram_schmidt computes coefficients
// from raw moments; at double precision it is expected to lose all accuracy
// after a few tens of coefficients and exists to demonstrate exactly that.
// At >= 80 requested digits it runs in extended precision and serves as a
// reference (see the oracle module).

#pragma once

#include "chainmap/measure.hpp"
#include "chainmap/quadrature.hpp"
#include "chainmap/recurrence.hpp"

namespace chainmap {

struct EngineOptions {
    double tolerance = 1e-12; // refinement target, max relative change
    int quad_points = 0;      // minimum initial number of quadrature points
    std::size_t max_points = std::size_t{1} << 20; // also capped by CHAINMAP_QUAD_MAX
};

RecurrenceCoefficients stieltjes_discretised(const Measure& m, int n,
                                             const EngineOptions& opt = {});

// Gragg-Harrod (RKPW) reconstruction from a discretised measure.
RecurrenceCoefficients lanczos_rkpw(const QuadratureRule& rule, int n);
RecurrenceCoefficients lanczos_rkpw(const Measure& m, int n, const EngineOptions& opt = {});

// Raw-moment path (Chebyshev sigma-table form of Gram-Schmidt on {1, x, ...}).
// precision_digits <= 17 runs in doubles and throws PrecisionExhausted (with
// partial results) once beta_k <= 0; larger values run at 100 decimal digits.
RecurrenceCoefficients moment_gram_schmidt(const Measure& m, int n, int precision_digits = 16);

// Single pass of the orthonormal Stieltjes procedure on a fixed rule.
RecurrenceCoefficients stieltjes_on_rule(const QuadratureRule& rule, int n);

} // namespace chainmap
