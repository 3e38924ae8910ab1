// spectral_density.hpp — declarative J(omega) models
//
// A spectral density is either a named continuous family (power law with hard
// or exponential cutoff), a discretised family (logarithmic or linear), raw
// tabulated samples, a gapped composite, or explicit point masses. An optional
// window restricts the support, which is how gapped segments are represented.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace chainmap {

enum class Family {
    PowerLawHardCutoff,
    PowerLawExpCutoff,
    LogDiscretised,
    LinearDiscretised,
    Tabulated,
    Gapped,
    PointMasses,
};

const char* family_name(Family f);

struct SpectralDensity {
    Family kind = Family::PowerLawHardCutoff;

    // Power-law / discretised families
    double alpha = 0.0;   // dimensionless coupling
    double s = 0.0;       // spectral exponent
    double omega_c = 0.0; // cutoff energy
    double delta = 0.0;   // log-discretisation parameter, > 1
    int n_modes = 0;      // linear discretisation: number of modes (Hahn N + 1)

    // Tabulated: ordered (omega, J) samples. PointMasses: (omega_k, weight_k).
    std::vector<std::pair<double, double>> samples;
    std::vector<std::pair<double, double>> masses;

    // Gapped composite: ordered, disjoint windowed segments.
    std::vector<SpectralDensity> segments;

    // Support restriction [omega_lo, omega_hi]; set on gapped segments.
    std::optional<std::pair<double, double>> window;

    bool discrete() const {
        return kind == Family::LogDiscretised || kind == Family::LinearDiscretised ||
               kind == Family::PointMasses;
    }

    static SpectralDensity hard_cutoff(double alpha, double s, double omega_c);
    static SpectralDensity exp_cutoff(double alpha, double s, double omega_c);
    static SpectralDensity log_discretised(double alpha, double s, double omega_c, double delta);
    static SpectralDensity linear_discretised(double alpha, double s, double omega_c, int n_modes);
    static SpectralDensity tabulated(std::vector<std::pair<double, double>> samples);
    static SpectralDensity gapped(std::vector<SpectralDensity> segments);
    static SpectralDensity point_masses(std::vector<std::pair<double, double>> masses);
};

// Throws (NegativeDensity, DeltaOutOfRange, ConfigError) on invariant violations.
void validate(const SpectralDensity& J);

// J(omega) for continuous densities; discrete kinds have no pointwise value.
double evaluate(const SpectralDensity& J, double omega);

// Total integrated spectral density over the support. For discrete kinds this
// is the sum of the star couplings gamma_n^2 (resp. the mass weights).
double eta0(const SpectralDensity& J);

// One density per contiguous support segment; non-gapped input -> {input}.
std::vector<SpectralDensity> split_gapped(const SpectralDensity& J);

// Largest frequency present (cutoff for families, last sample/mass otherwise).
double omega_max(const SpectralDensity& J);

// Two-column "omega J" text, '#' comments.
SpectralDensity load_tabulated_file(const std::string& path);

} // namespace chainmap
