#include "chainmap/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "chainmap/errors.hpp"
#include "numerics.hpp"

namespace chainmap {
namespace {

constexpr double kMassFloor = 1e-300; // star weights below this are dropped

std::string format_range(double lo, double hi) {
    std::ostringstream ss;
    ss << "[" << lo << ", " << hi << "]";
    return ss.str();
}

void scan_tabulated_gaps(const SpectralDensity& J, double eps_gap, Measure& m) {
    const auto& smp = J.samples;
    std::size_t i = 0;
    while (i < smp.size()) {
        if (smp[i].second == 0.0) {
            std::size_t j = i;
            while (j + 1 < smp.size() && smp[j + 1].second == 0.0) ++j;
            if (j > i && smp[j].first - smp[i].first > eps_gap)
                m.advisories.push_back("GappedSupport: J = 0 on " +
                                       format_range(smp[i].first, smp[j].first) +
                                       "; consider split_gapped");
            i = j + 1;
        } else {
            ++i;
        }
    }
}

Measure induced_discrete(const SpectralDensity& J) {
    Measure m;
    std::vector<PointMass> masses;
    double g = 1.0;
    switch (J.kind) {
        case Family::LogDiscretised: {
            const double s = J.s, delta = J.delta;
            const double zeta_s = (s + 1.0) / (s + 2.0) *
                                  (1.0 - std::pow(delta, -(s + 2.0))) /
                                  (1.0 - std::pow(delta, -(s + 1.0))) * J.omega_c;
            const double gamma_s2 = 2.0 * M_PI * J.alpha / (1.0 + s) * J.omega_c * J.omega_c *
                                    (1.0 - std::pow(delta, -(1.0 + s)));
            g = zeta_s;
            const double r = std::pow(delta, -(1.0 + s));
            double wk = gamma_s2 / M_PI;
            double xk = 1.0;
            while (wk >= kMassFloor * gamma_s2 / M_PI && xk > 0.0) {
                masses.push_back({xk, wk});
                wk *= r;
                xk /= delta;
            }
            break;
        }
        case Family::LinearDiscretised: {
            const int N = J.n_modes - 1;
            g = J.omega_c / (N + 1.0);
            // w_n = 2 alpha omega_c^2 / (N+1)^(s+1) * binom(s+n, n), by ratio recurrence
            double wn = 2.0 * J.alpha * J.omega_c * J.omega_c *
                        std::pow(N + 1.0, -(J.s + 1.0));
            for (int n = 0; n <= N; ++n) {
                masses.push_back({static_cast<double>(n), wn});
                wn *= (J.s + n + 1.0) / (n + 1.0);
            }
            break;
        }
        case Family::PointMasses: {
            if (J.masses.empty())
                throw NonIntegrable("induced_measure: empty point-mass density (zero measure)");
            g = omega_max(J);
            if (g <= 0.0) g = 1.0;
            for (const auto& [w, weight] : J.masses)
                masses.push_back({w / g, weight / M_PI});
            break;
        }
        default:
            throw Error("induced_discrete: not a discrete family");
    }
    m = Measure::from_point_masses(std::move(masses));
    m.dispersion_g = g;
    return m;
}

} // namespace

Measure Measure::from_weight(std::function<double(double)> w, double a, double b,
                             double exp_a, double exp_b) {
    Measure m;
    m.support = {SupportKind::Bounded, a, b};
    m.weight = std::move(w);
    m.endpoint_exponent_a = exp_a;
    m.endpoint_exponent_b = exp_b;
    m.mass = measure_mass_numeric(m);
    if (!(m.mass > 0.0) || !std::isfinite(m.mass))
        throw NonIntegrable("measure has non-positive or divergent total mass");
    return m;
}

Measure Measure::from_halfline_weight(std::function<double(double)> w, double exp_a) {
    Measure m;
    m.support = {SupportKind::HalfLine, 0.0, std::numeric_limits<double>::infinity()};
    m.weight = std::move(w);
    m.endpoint_exponent_a = exp_a;
    m.exp_tail = true;
    m.mass = measure_mass_numeric(m);
    if (!(m.mass > 0.0) || !std::isfinite(m.mass))
        throw NonIntegrable("measure has non-positive or divergent total mass");
    return m;
}

Measure Measure::from_point_masses(std::vector<PointMass> masses) {
    if (masses.empty())
        throw NonIntegrable("measure with no point masses (zero measure)");
    Measure m;
    std::sort(masses.begin(), masses.end(),
              [](const PointMass& a, const PointMass& b) { return a.x < b.x; });
    m.masses = std::move(masses);
    double lo = m.masses.front().x, hi = m.masses.back().x, total = 0.0;
    for (const auto& pm : m.masses) {
        if (!(pm.w > 0.0)) throw NonIntegrable("point mass with non-positive weight");
        total += pm.w;
    }
    m.support = {SupportKind::Bounded, lo, hi};
    m.mass = total;
    return m;
}

Measure induced_measure(const SpectralDensity& J, const MeasureOptions& opt) {
    validate(J);
    if (J.discrete()) return induced_discrete(J);

    Measure m;
    const double wmax = omega_max(J);
    const bool halfline = std::isinf(wmax);
    const double g = halfline ? J.omega_c : wmax;
    m.dispersion_g = g;

    const double c = g / M_PI;
    m.weight = [J, g, c](double x) { return c * evaluate(J, g * x); };

    switch (J.kind) {
        case Family::PowerLawHardCutoff: {
            const double lo = J.window ? J.window->first / g : 0.0;
            m.support = {SupportKind::Bounded, lo, 1.0};
            m.endpoint_exponent_a = (lo == 0.0) ? J.s : 0.0;
            if (!J.window) {
                // w(x) = 2 alpha omega_c^2 x^s on [0, 1]
                m.moment_form = ClosedMomentForm{ClosedMomentForm::Kind::PowerBounded,
                                                 2.0 * J.alpha * J.omega_c * J.omega_c, J.s,
                                                 0.0, 1.0};
            }
            break;
        }
        case Family::PowerLawExpCutoff: {
            if (J.window) {
                m.support = {SupportKind::Bounded, J.window->first / g, J.window->second / g};
                m.endpoint_exponent_a = (J.window->first == 0.0) ? J.s : 0.0;
            } else {
                m.support = {SupportKind::HalfLine, 0.0,
                             std::numeric_limits<double>::infinity()};
                m.endpoint_exponent_a = J.s;
                m.exp_tail = true;
                m.moment_form = ClosedMomentForm{ClosedMomentForm::Kind::PowerExp,
                                                 2.0 * J.alpha * J.omega_c * J.omega_c, J.s};
            }
            break;
        }
        case Family::Tabulated: {
            const double lo = J.samples.front().first / g;
            m.support = {SupportKind::Bounded, lo, 1.0};
            for (std::size_t i = 1; i + 1 < J.samples.size(); ++i)
                m.knots.push_back(J.samples[i].first / g);
            // the interpolant is linear out of a zero-valued edge sample
            m.endpoint_exponent_a = (J.samples.front().second == 0.0) ? 1.0 : 0.0;
            m.endpoint_exponent_b = (J.samples.back().second == 0.0) ? 1.0 : 0.0;
            scan_tabulated_gaps(J, opt.eps_gap_rel * wmax, m);
            break;
        }
        case Family::Gapped: {
            const double lo = J.segments.front().window->first / g;
            m.support = {SupportKind::Bounded, lo, 1.0};
            for (const auto& seg : J.segments) {
                m.knots.push_back(seg.window->first / g);
                m.knots.push_back(seg.window->second / g);
            }
            std::sort(m.knots.begin(), m.knots.end());
            m.knots.erase(std::remove_if(m.knots.begin(), m.knots.end(),
                                         [&](double k) {
                                             return k <= m.support.a || k >= m.support.b;
                                         }),
                          m.knots.end());
            for (std::size_t i = 0; i + 1 < J.segments.size(); ++i) {
                const double gap_lo = J.segments[i].window->second;
                const double gap_hi = J.segments[i + 1].window->first;
                if (gap_hi - gap_lo > opt.eps_gap_rel * wmax)
                    m.advisories.push_back("GappedSupport: J = 0 on " +
                                           format_range(gap_lo, gap_hi) +
                                           "; consider split_gapped");
            }
            break;
        }
        default:
            throw Error("induced_measure: unhandled family");
    }

    m.mass = eta0(J) / M_PI;
    if (!(m.mass > 0.0) || !std::isfinite(m.mass))
        throw NonIntegrable("induced measure has non-positive or divergent mass");
    if (J.kind == Family::Tabulated || J.kind == Family::Gapped) {
        // moment-finiteness check on raw inputs
        const double numeric = measure_mass_numeric(m, 1e-9);
        if (!std::isfinite(numeric) || std::fabs(numeric - m.mass) > 1e-6 * m.mass)
            throw NonIntegrable("numeric mass check failed for tabulated/gapped input");
    }
    return m;
}

bool has_exact_moments(const Measure& m) {
    return m.discrete() || m.moment_form.has_value();
}

double measure_moment(const Measure& m, int r) {
    if (m.discrete()) {
        double acc = 0.0;
        for (const auto& pm : m.masses) acc += pm.w * std::pow(pm.x, r);
        return acc;
    }
    if (!m.moment_form) throw Error("measure_moment: no closed moment form");
    const auto& f = *m.moment_form;
    switch (f.kind) {
        case ClosedMomentForm::Kind::PowerBounded:
            return f.c *
                   (std::pow(f.b, f.s + r + 1.0) - std::pow(f.a, f.s + r + 1.0)) /
                   (f.s + r + 1.0);
        case ClosedMomentForm::Kind::PowerExp:
            return f.c * std::tgamma(f.s + r + 1.0);
    }
    throw Error("measure_moment: unknown moment form");
}

double measure_mass_numeric(const Measure& m, double rel_tol) {
    if (m.discrete()) {
        double acc = 0.0;
        for (const auto& pm : m.masses) acc += pm.w;
        return acc;
    }
    const double a = m.support.a;
    double b = m.support.b;
    if (!m.bounded()) {
        // exp-tail truncation; the weight carries the e^-x factor
        b = a + 750.0;
    }
    double acc = 0.0;
    double prev = a;
    std::vector<double> cuts = m.knots;
    cuts.push_back(b);
    for (double cut : cuts) {
        if (cut <= prev) continue;
        acc += detail::integrate_adaptive(m.weight, prev, cut, rel_tol);
        prev = cut;
    }
    return acc;
}

} // namespace chainmap
