// sigma_table.hpp — moments to recurrence coefficients via the sigma-table
// form of Gram-Schmidt on {1, x, x^2, ...}. Shared by the double-precision
// demonstration engine and the exact/extended-precision oracle paths.

#pragma once

#include <utility>
#include <vector>

namespace chainmap::detail {

// mu must hold 2n moments (orders 0..2n-1). Fills alpha/beta with as many
// pairs as stay positive-definite and returns that count (== n on success).
// sigma[k][l] = <pi_k, x^l>.
template <class T>
int sigma_table(const std::vector<T>& mu, int n, std::vector<T>& alpha, std::vector<T>& beta) {
    alpha.clear();
    beta.clear();
    if (n < 1 || mu.size() < static_cast<std::size_t>(2 * n)) return 0;
    if (!(mu[0] > T(0.0))) return 0;
    alpha.push_back(mu[1] / mu[0]);
    beta.push_back(mu[0]);

    std::vector<T> sig_prev2(mu.size(), T(0.0));
    std::vector<T> sig_prev = mu;
    for (int k = 1; k < n; ++k) {
        std::vector<T> sig(mu.size(), T(0.0));
        for (int l = k; l <= 2 * n - k - 1; ++l) {
            T v = sig_prev[l + 1] - alpha[k - 1] * sig_prev[l];
            if (k >= 2) v = v - beta[k - 1] * sig_prev2[l];
            sig[l] = v;
        }
        const T beta_k = sig[k] / sig_prev[k - 1];
        if (!(beta_k > T(0.0))) return k;
        alpha.push_back(sig[k + 1] / sig[k] - sig_prev[k] / sig_prev[k - 1]);
        beta.push_back(beta_k);
        sig_prev2 = std::move(sig_prev);
        sig_prev = std::move(sig);
    }
    return n;
}

} // namespace chainmap::detail
