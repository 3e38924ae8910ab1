#include "chainmap/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "chainmap/errors.hpp"
#include "numerics.hpp"

namespace chainmap {
namespace {

// Depth of geometric grading so the untouched end sliver carries relative
// mass below ~1e-16: (2^-d)^(p+1) < 1e-16.
int grading_depth(double exponent) {
    const double p1 = exponent + 1.0;
    if (p1 <= 0.0) throw NonIntegrable("endpoint exponent <= -1 is not integrable");
    const int d = static_cast<int>(std::ceil(54.0 / p1));
    return std::clamp(d, 8, 640);
}

void push_graded_left(std::vector<std::pair<double, double>>& panels, double a, double b,
                      int depth) {
    const double h = b - a;
    panels.emplace_back(a, a + h * std::ldexp(1.0, -depth));
    for (int j = depth; j >= 1; --j)
        panels.emplace_back(a + h * std::ldexp(1.0, -j), a + h * std::ldexp(1.0, -(j - 1)));
}

void push_graded_right(std::vector<std::pair<double, double>>& panels, double a, double b,
                       int depth) {
    const double h = b - a;
    for (int j = 1; j <= depth; ++j)
        panels.emplace_back(b - h * std::ldexp(1.0, -(j - 1)), b - h * std::ldexp(1.0, -j));
    panels.emplace_back(b - h * std::ldexp(1.0, -depth), b);
    // keep ascending order
    std::sort(panels.end() - (depth + 1), panels.end());
}

std::vector<std::pair<double, double>> bounded_mesh(const Measure& m) {
    std::vector<double> cuts;
    cuts.push_back(m.support.a);
    for (double k : m.knots)
        if (k > m.support.a && k < m.support.b) cuts.push_back(k);
    cuts.push_back(m.support.b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<std::pair<double, double>> panels;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double u = cuts[i], v = cuts[i + 1];
        const bool grade_l = (i == 0) && m.endpoint_exponent_a != 0.0;
        const bool grade_r = (i + 2 == cuts.size()) && m.endpoint_exponent_b != 0.0;
        if (grade_l && grade_r) {
            const double mid = 0.5 * (u + v);
            push_graded_left(panels, u, mid, grading_depth(m.endpoint_exponent_a));
            push_graded_right(panels, mid, v, grading_depth(m.endpoint_exponent_b));
        } else if (grade_l) {
            push_graded_left(panels, u, v, grading_depth(m.endpoint_exponent_a));
        } else if (grade_r) {
            push_graded_right(panels, u, v, grading_depth(m.endpoint_exponent_b));
        } else {
            panels.emplace_back(u, v);
        }
    }
    return panels;
}

// Truncation point for w ~ x^p e^-x integrated against degree-2n polynomials:
// fixed point of x = ln(2e30) + margin + (2n+p) ln x.
double halfline_truncation(double p, int n) {
    const double c = 69.1 + 16.0;
    const double d = 2.0 * n + std::max(p, 0.0);
    double x = c + 10.0;
    for (int i = 0; i < 200; ++i) x = c + d * std::log(std::max(x, 2.0));
    return 1.2 * x;
}

std::vector<std::pair<double, double>> halfline_mesh(const Measure& m, int n) {
    const double a = m.support.a;
    const double x_end = a + halfline_truncation(m.endpoint_exponent_a, n);
    const double width = 8.0;
    std::vector<std::pair<double, double>> panels;
    if (m.endpoint_exponent_a != 0.0)
        push_graded_left(panels, a, a + width, grading_depth(m.endpoint_exponent_a));
    else
        panels.emplace_back(a, a + width);
    for (double lo = a + width; lo < x_end; lo += width)
        panels.emplace_back(lo, std::min(lo + width, x_end));
    return panels;
}

} // namespace

int default_points_per_panel(const Measure& m, int n) {
    return m.bounded() ? n + 24 : n + 48;
}

QuadratureRule discretise(const Measure& m, int n, int points_per_panel) {
    if (m.discrete()) {
        QuadratureRule rule;
        rule.nodes.reserve(m.masses.size());
        rule.weights.reserve(m.masses.size());
        for (const auto& pm : m.masses) {
            rule.nodes.push_back(pm.x);
            rule.weights.push_back(pm.w);
        }
        return merged(std::move(rule));
    }
    if (!m.weight) throw Error("discretise: measure has no weight function");
    const int k = points_per_panel > 0 ? points_per_panel : default_points_per_panel(m, n);
    const auto panels = m.bounded() ? bounded_mesh(m) : halfline_mesh(m, n);
    // far past the classical turning point the e^-x factor dominates any
    // degree-2n polynomial; a short rule per panel is plenty out there
    const double taper_x = m.bounded() ? 0.0 : m.support.a + 4.0 * n + 100.0;
    QuadratureRule rule;
    rule.nodes.reserve(panels.size() * k);
    rule.weights.reserve(panels.size() * k);
    for (const auto& [a, b] : panels) {
        const int kp = (!m.bounded() && a >= taper_x) ? std::min(k, 24) : k;
        const detail::GLRule& gl = detail::gauss_legendre(kp);
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (int i = 0; i < kp; ++i) {
            const double x = mid + half * gl.nodes[i];
            const double w = half * gl.weights[i] * m.weight(x);
            rule.nodes.push_back(x);
            rule.weights.push_back(w);
        }
    }
    return rule;
}

QuadratureRule merged(QuadratureRule rule, double span_tol) {
    if (rule.nodes.empty()) return rule;
    std::vector<std::size_t> idx(rule.nodes.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t i, std::size_t j) { return rule.nodes[i] < rule.nodes[j]; });
    QuadratureRule out;
    for (std::size_t i : idx) {
        if (rule.weights[i] < 0.0)
            throw NonIntegrable("quadrature rule with negative weight");
        if (rule.weights[i] == 0.0) continue;
        // coincidence is relative: geometric lattices reach arbitrarily small
        // scales that must stay resolved
        const double x = rule.nodes[i];
        const bool coincident =
            !out.nodes.empty() &&
            x - out.nodes.back() <= span_tol * std::max(std::fabs(x), std::fabs(out.nodes.back()));
        if (coincident)
            out.weights.back() += rule.weights[i];
        else {
            out.nodes.push_back(x);
            out.weights.push_back(rule.weights[i]);
        }
    }
    if (out.nodes.empty()) throw MeasureDegenerate("quadrature rule has no positive weights");
    return out;
}

QuadratureRule gauss_rule(const RecurrenceCoefficients& rc, int n) {
    check_valid(rc);
    if (n < 1 || static_cast<std::size_t>(n) > rc.n_terms())
        throw Error("gauss_rule: need 1 <= n <= n_terms coefficients");
    std::vector<double> d(rc.alpha.begin(), rc.alpha.begin() + n);
    std::vector<double> e(n, 0.0);
    for (int i = 0; i + 1 < n; ++i) e[i] = std::sqrt(rc.beta[i + 1]);
    std::vector<double> z(n, 0.0);
    z[0] = 1.0;

    const double eps = 2.22e-16;
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        while (true) {
            int mend = l;
            for (; mend < n - 1; ++mend) {
                const double dd = std::fabs(d[mend]) + std::fabs(d[mend + 1]);
                if (std::fabs(e[mend]) <= eps * dd) break;
            }
            if (mend == l) break;
            if (++iter > 60) throw EigenFailure("gauss_rule: QL iteration did not converge");
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[mend] - d[l] + e[l] / (g + std::copysign(r, g));
            double si = 1.0, co = 1.0, p = 0.0;
            for (int i = mend - 1; i >= l; --i) {
                double f = si * e[i];
                const double b = co * e[i];
                if (std::fabs(f) >= std::fabs(g)) {
                    co = g / f;
                    r = std::hypot(co, 1.0);
                    e[i + 1] = f * r;
                    si = 1.0 / r;
                    co *= si;
                } else {
                    si = f / g;
                    r = std::hypot(si, 1.0);
                    e[i + 1] = g * r;
                    co = 1.0 / r;
                    si *= co;
                }
                g = d[i + 1] - p;
                r = (d[i] - g) * si + 2.0 * co * b;
                p = si * r;
                d[i + 1] = g + p;
                g = co * r - b;
                f = z[i + 1];
                z[i + 1] = si * z[i] + co * f;
                z[i] = co * z[i] - si * f;
            }
            d[l] -= p;
            e[l] = g;
            e[mend] = 0.0;
        }
    }

    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return d[i] < d[j]; });
    QuadratureRule rule;
    rule.nodes.reserve(n);
    rule.weights.reserve(n);
    for (std::size_t i : idx) {
        rule.nodes.push_back(d[i]);
        rule.weights.push_back(rc.beta[0] * z[i] * z[i]);
    }
    return rule;
}

} // namespace chainmap
