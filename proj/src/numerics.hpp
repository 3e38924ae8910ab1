// numerics.hpp — internal helpers: Gauss-Legendre rules, adaptive integration

#pragma once

#include <cmath>
#include <functional>
#include <vector>

namespace chainmap::detail {

struct GLRule {
    std::vector<double> nodes;   // on [-1, 1], ascending
    std::vector<double> weights; // sum = 2
};

// Cached K-point Gauss-Legendre rule (Newton on the Legendre recurrence).
const GLRule& gauss_legendre(int k);

template <class F>
double integrate_panel(F&& f, double a, double b, int k) {
    const GLRule& r = gauss_legendre(k);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double acc = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i)
        acc += r.weights[i] * f(mid + half * r.nodes[i]);
    return acc * half;
}

// Recursive bisection with a fixed 20-point panel rule. Handles integrable
// endpoint singularities via depth; not meant for oscillatory integrands.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, int max_depth = 52);

} // namespace chainmap::detail
