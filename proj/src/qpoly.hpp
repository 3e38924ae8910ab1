// qpoly.hpp — little-q Jacobi and Hahn recurrence data, templated on the
// scalar type so the oracle can run the same formulas in extended precision.

#pragma once

#include <cmath>
#include <vector>

namespace chainmap::qpoly {

// little-q Jacobi with parameters (a, b) = (q^s, 1), q = 1/delta, on the
// lattice x_k = delta^-k with weights delta^-k(1+s).
template <class Real>
struct LittleQ {
    Real delta;
    Real s;

    Real dpow(Real e) const {
        using std::pow;
        return pow(delta, -e);
    }

    Real A(int j) const {
        const Real one(1.0);
        const Real num = dpow(Real(j)) * (one - dpow(Real(j) + one + s)) *
                         (one - dpow(Real(j) + one + s));
        return num /
               ((one - dpow(Real(2 * j) + one + s)) * (one - dpow(Real(2 * j + 2) + s)));
    }

    Real C(int j) const {
        if (j == 0) return Real(0.0);
        const Real one(1.0);
        const Real num =
            dpow(Real(j) + s) * (one - dpow(Real(j))) * (one - dpow(Real(j)));
        return num / ((one - dpow(Real(2 * j) + s)) * (one - dpow(Real(2 * j) + one + s)));
    }

    // N_n^2 from the orthogonality sum closed form
    Real norm2(int n) const {
        const Real one(1.0);
        Real qfac = one;  // (delta^-1; delta^-1)_n
        Real qfac_s = one; // (delta^-(s+1); delta^-1)_n
        for (int i = 0; i < n; ++i) {
            qfac = qfac * (one - dpow(Real(i + 1)));
            qfac_s = qfac_s * (one - dpow(s + Real(i + 1)));
        }
        return dpow(Real(n) * (one + s)) * qfac * qfac /
               (qfac_s * qfac_s * (one - dpow(Real(2 * n) + one + s)));
    }

    // N_{n+1}^2 / N_n^2
    Real norm2_ratio(int n) const {
        const Real one(1.0);
        const Real r = (one - dpow(Real(n + 1))) / (one - dpow(s + Real(n + 1)));
        return dpow(one + s) * r * r * (one - dpow(Real(2 * n) + one + s)) /
               (one - dpow(Real(2 * n + 3) + s));
    }

    // p_0(x), ..., p_mmax(x) by upward recurrence
    std::vector<Real> eval_all(Real x, int mmax) const {
        std::vector<Real> p(mmax + 1);
        p[0] = Real(1.0);
        if (mmax >= 1) {
            for (int j = 0; j < mmax; ++j) {
                const Real aj = A(j), cj = C(j);
                const Real up = (aj + cj - x) * p[j] - (j >= 1 ? cj * p[j - 1] : Real(0.0));
                p[j + 1] = up / aj;
            }
        }
        return p;
    }
};

// Hahn Q_n(x; alpha, beta, N) with (alpha, beta) = (s, 0) on {0, ..., N}.
template <class Real>
struct Hahn {
    Real s;
    int N;

    Real A(int n) const {
        const Real rn(n);
        return (rn + s + Real(1.0)) * (rn + s + Real(1.0)) * Real(N - n) /
               ((Real(2 * n) + s + Real(1.0)) * (Real(2 * n) + s + Real(2.0)));
    }

    Real C(int n) const {
        if (n == 0) return Real(0.0);
        const Real rn(n);
        return rn * rn * (rn + s + Real(N + 1)) /
               ((Real(2 * n) + s) * (Real(2 * n) + s + Real(1.0)));
    }

    // rho_{n+1}^2 / rho_n^2
    Real rho2_ratio(int k) const {
        const Real rk(k);
        return (rk + s + Real(N + 2)) * (rk + Real(1.0)) * (rk + Real(1.0)) *
               (Real(2 * k) + s + Real(1.0)) /
               ((rk + s + Real(1.0)) * (rk + s + Real(1.0)) * (Real(2 * k) + s + Real(3.0)) *
                Real(N - k));
    }

    // lattice weight C(s+x, x) by ratio recurrence, as a vector over x = 0..N
    std::vector<Real> lattice_weights() const {
        std::vector<Real> w(N + 1);
        w[0] = Real(1.0);
        for (int x = 0; x < N; ++x)
            w[x + 1] = w[x] * (s + Real(x + 1)) / Real(x + 1);
        return w;
    }

    std::vector<Real> eval_all(Real x, int mmax) const {
        std::vector<Real> q(mmax + 1);
        q[0] = Real(1.0);
        for (int n = 0; n < mmax; ++n) {
            const Real an = A(n), cn = C(n);
            const Real up = (an + cn - x) * q[n] - (n >= 1 ? cn * q[n - 1] : Real(0.0));
            q[n + 1] = up / an;
        }
        return q;
    }
};

} // namespace chainmap::qpoly
