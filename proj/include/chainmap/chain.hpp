// chain.hpp — chain Hamiltonian parameters (c0, omega_n, t_n)
//
// c0 couples the system to site 0; omega_n are site frequencies; t_n couples
// sites n and n+1. Hoppings are reported as positive magnitudes: a sign flip
// of t_n is the gauge transformation b_n -> -b_n, recorded in t_sign.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chainmap/measure.hpp"
#include "chainmap/recurrence.hpp"

namespace chainmap {

struct ChainParameters {
    double c0 = 0.0;
    std::vector<double> omega;
    std::vector<double> t;    // positive magnitudes
    std::vector<int> t_sign;  // sign convention of the source family, +1/-1
    std::string source;       // family or engine name
    double g = 1.0;
    std::size_t quad_points = 0;  // discretisation size behind the run
    double max_est_error = 0.0;   // worst per-coefficient estimate
    std::optional<std::pair<double, double>> asymptote; // (omega_inf, t_inf)

    std::size_t sites() const { return omega.size(); }
};

struct DiscretisedStarModel {
    std::vector<double> zeta;  // mode frequencies
    std::vector<double> gamma; // couplings; gamma_n^2 sums to eta0
    enum class Statistics { Boson, Fermion } statistics = Statistics::Boson;
};

// omega_n = g*alpha_n, t_n = g*sqrt(beta_{n+1}), c0 = sqrt(beta_0).
ChainParameters chain_from_coefficients(const RecurrenceCoefficients& rc, double g);

// Closed forms. `n` is the number of sites; omega and t both get n entries
// (t_n exists for every n in the analytic families).
ChainParameters jacobi_chain(double alpha, double s, double omega_c, int n);
ChainParameters laguerre_chain(double alpha, double s, double omega_c, int n);
ChainParameters littleq_chain(double alpha, double s, double omega_c, double delta, int n);

// Hahn chain for N+1 modes; n <= N+1 sites, hoppings t_0..t_{min(n,N)-1}.
ChainParameters hahn_chain(double alpha, double s, double omega_c, int N, int n);

// Longest chain whose star weights delta^-n(1+s) stay above 1e-300.
int littleq_max_sites(double delta, double s);

// Star model (gamma_n, zeta_n) for discretised or point-mass densities.
DiscretisedStarModel star_model(const SpectralDensity& J);

// max |zeta_n U_mn - omega_m U_mn - t_m U_{m+1,n} - t_{m-1} U_{m-1,n}| over a
// truncated block; t carries the signed convention of the source family.
double bulla_recursion_check(const std::vector<std::vector<double>>& U,
                             const std::vector<double>& zeta, const std::vector<double>& omega,
                             const std::vector<double>& t);

// Rows of the star-to-chain transform, for the recursion and orthogonality
// checks: U[m][k] with m the chain index, k the star index.
std::vector<std::vector<double>> littleq_transform_block(double delta, double s, int rows,
                                                         int cols);
std::vector<std::vector<double>> hahn_transform_block(double s, int N, int rows);

// Signed little-q quantities entering the recursion identities.
double littleq_zeta_s(double s, double omega_c, double delta);
double littleq_t_signed(double s, double omega_c, double delta, int n);
double littleq_norm_ratio(double delta, double s, int n); // N_{n+1}/N_n

} // namespace chainmap
