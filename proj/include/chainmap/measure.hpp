// measure.hpp — the orthogonality measure dmu(x) = w(x) dx induced by J
//
// Linear dispersion omega = g*x is fixed throughout; g defaults to the cutoff
// (or the largest frequency) of the density, so bounded supports normalise to
// x in [x_lo, 1]. The induced weight is w(x) = g*J(g*x)/pi, giving
// integral(w) = eta0/pi.

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "chainmap/spectral_density.hpp"

namespace chainmap {

struct PointMass {
    double x;
    double w;
};

// Exact moment structure, when the measure has one. Parameters are doubles
// (exactly promotable), so high-precision consumers can evaluate mu_r at any
// working precision:
//   PowerBounded: mu_r = c * (b^(s+r+1) - a^(s+r+1)) / (s+r+1),  w = c*(x)^s on [a,b]
//   PowerExp:     mu_r = c * Gamma(s+r+1),                       w = c*x^s*e^-x on [0,inf)
struct ClosedMomentForm {
    enum class Kind { PowerBounded, PowerExp } kind;
    double c;
    double s;
    double a = 0.0;
    double b = 1.0;
};

enum class SupportKind { Bounded, HalfLine };

struct Support {
    SupportKind kind = SupportKind::Bounded;
    double a = 0.0;
    double b = 1.0; // ignored for HalfLine
};

struct Measure {
    Support support;
    std::function<double(double)> weight; // continuous part; null if discrete
    std::vector<PointMass> masses;        // discrete part; empty if continuous
    double dispersion_g = 1.0;

    double mass = 0.0; // mu_0 = integral of dmu

    // Local behaviour w ~ C*(x-a)^p near the endpoints; drives mesh grading
    // and the analytic part of the Szego integral. exp_tail marks w ~ x^p e^-x.
    double endpoint_exponent_a = 0.0;
    double endpoint_exponent_b = 0.0;
    bool exp_tail = false;

    std::vector<double> knots; // interior panel boundaries (x units)
    std::vector<std::string> advisories;

    std::optional<ClosedMomentForm> moment_form;

    bool discrete() const { return !masses.empty(); }
    bool bounded() const { return support.kind == SupportKind::Bounded; }

    // Direct construction for measures not derived from a spectral density
    // (tests, szego checks on raw weights).
    static Measure from_weight(std::function<double(double)> w, double a, double b,
                               double exp_a = 0.0, double exp_b = 0.0);
    static Measure from_halfline_weight(std::function<double(double)> w, double exp_a);
    static Measure from_point_masses(std::vector<PointMass> masses);
};

struct MeasureOptions {
    // Zero regions wider than eps_gap_rel * omega_max trigger a GappedSupport
    // advisory; narrower ones are ignored.
    double eps_gap_rel = 1e-12;
};

Measure induced_measure(const SpectralDensity& J, const MeasureOptions& opt = {});

// integral of w over the support (continuous) or sum of masses, by adaptive
// panel quadrature; used for construction checks and tests.
double measure_mass_numeric(const Measure& m, double rel_tol = 1e-12);

// mu_r at double precision, from the closed form or the masses; throws if
// neither is available (engines then fall back to quadrature).
bool has_exact_moments(const Measure& m);
double measure_moment(const Measure& m, int r);

} // namespace chainmap
