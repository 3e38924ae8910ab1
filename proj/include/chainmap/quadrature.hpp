// quadrature.hpp — measure discretisation and Gauss rules

#pragma once

#include <cstddef>

#include "chainmap/measure.hpp"
#include "chainmap/recurrence.hpp"

namespace chainmap {

struct QuadratureRule {
    std::vector<double> nodes;   // strictly increasing after merge
    std::vector<double> weights; // >= 0; sum approximates mu_0
    std::size_t size() const { return nodes.size(); }
};

// Composite Gauss-Legendre discretisation of a continuous measure, accurate
// for polynomial integrands up to degree 2n against w:
//  - panel boundaries at the measure knots,
//  - geometric grading toward endpoints where w is singular or vanishes,
//  - half-line supports use a mesh equally spaced in ln(1/u), u = e^-x, with
//    the truncation point chosen so the neglected tail mass stays below
//    1e-30 * mu_0 for degree-2n integrands.
// points_per_panel <= 0 picks the default for the requested degree.
QuadratureRule discretise(const Measure& m, int n, int points_per_panel = 0);

int default_points_per_panel(const Measure& m, int n);

// Coincident nodes (within span_tol relative to the node span) merged by
// weight addition; zero-weight nodes dropped.
QuadratureRule merged(QuadratureRule rule, double span_tol = 1e-14);

// Golub-Welsch: n-point Gauss rule from the first n recurrence coefficients
// (implicit-shift QL on the Jacobi matrix, first-row eigenvector components).
QuadratureRule gauss_rule(const RecurrenceCoefficients& rc, int n);

} // namespace chainmap
