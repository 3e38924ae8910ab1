// asymptotics.hpp — Szego classification and chain tail diagnostics

#pragma once

#include <string>
#include <vector>

#include "chainmap/chain.hpp"
#include "chainmap/measure.hpp"

namespace chainmap {

struct TailPoint {
    int n;
    double omega_dev; // |omega_n - omega_inf|
    double t_dev;     // |t_n - t_inf|
};

struct SzegoReport {
    bool in_class = false;
    double szego_integral = 0.0; // log-weight integral against the Chebyshev
                                 // weight of the support interval
    bool integral_minus_inf = false;
    std::string note;

    double omega_inf = 0.0;
    double t_inf = 0.0;

    std::vector<TailPoint> measured_convergence;
    double convergence_order = 0.0; // fitted p in dev ~ n^-p (0 if not fitted)
    bool converging = false;
};

// Bounded continuous measures only; unbounded support reports NotApplicable,
// structural gaps report in_class = false with a -inf integral. Isolated
// power-law endpoint zeros are handled analytically via the measure's
// endpoint exponents.
SzegoReport szego_check(const Measure& m);

// Deviations of the chain coefficients from the translational-invariant tail
// (g*x_max/2, g*x_max/4), with an empirical convergence-order fit.
SzegoReport tail_diagnostics(const ChainParameters& cp, double g, double x_max);

// Exact deviation of the hard-cutoff family from its tail limits.
double jacobi_omega_deviation(double s, double omega_c, int n);
double jacobi_t_deviation(double s, double omega_c, int n);

} // namespace chainmap
