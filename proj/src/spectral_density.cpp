#include "chainmap/spectral_density.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "chainmap/errors.hpp"
#include "numerics.hpp"

namespace chainmap {
namespace {

double pow_law(double alpha, double s, double omega_c, double omega) {
    return 2.0 * M_PI * alpha * std::pow(omega_c, 1.0 - s) * std::pow(omega, s);
}

bool in_window(const SpectralDensity& J, double omega) {
    if (!J.window) return true;
    return omega >= J.window->first && omega <= J.window->second;
}

// Interpolated tabulated value; positivity-preserving (monotone cubic on
// log-values inside positive runs, linear through zero samples).
double tabulated_value(const std::vector<std::pair<double, double>>& samples, double omega);

double eta0_unwindowed(const SpectralDensity& J);

double eta0_numeric(const SpectralDensity& J, double lo, double hi) {
    return detail::integrate_adaptive([&](double w) { return evaluate(J, w); }, lo, hi, 1e-12);
}

} // namespace

const char* family_name(Family f) {
    switch (f) {
        case Family::PowerLawHardCutoff: return "hard_cutoff";
        case Family::PowerLawExpCutoff: return "exp_cutoff";
        case Family::LogDiscretised: return "log_discretised";
        case Family::LinearDiscretised: return "linear_discretised";
        case Family::Tabulated: return "tabulated";
        case Family::Gapped: return "gapped";
        case Family::PointMasses: return "point_masses";
    }
    return "unknown";
}

SpectralDensity SpectralDensity::hard_cutoff(double alpha, double s, double omega_c) {
    SpectralDensity J;
    J.kind = Family::PowerLawHardCutoff;
    J.alpha = alpha;
    J.s = s;
    J.omega_c = omega_c;
    validate(J);
    return J;
}

SpectralDensity SpectralDensity::exp_cutoff(double alpha, double s, double omega_c) {
    SpectralDensity J;
    J.kind = Family::PowerLawExpCutoff;
    J.alpha = alpha;
    J.s = s;
    J.omega_c = omega_c;
    validate(J);
    return J;
}

SpectralDensity SpectralDensity::log_discretised(double alpha, double s, double omega_c,
                                                 double delta) {
    SpectralDensity J;
    J.kind = Family::LogDiscretised;
    J.alpha = alpha;
    J.s = s;
    J.omega_c = omega_c;
    J.delta = delta;
    validate(J);
    return J;
}

SpectralDensity SpectralDensity::linear_discretised(double alpha, double s, double omega_c,
                                                    int n_modes) {
    SpectralDensity J;
    J.kind = Family::LinearDiscretised;
    J.alpha = alpha;
    J.s = s;
    J.omega_c = omega_c;
    J.n_modes = n_modes;
    validate(J);
    return J;
}

SpectralDensity SpectralDensity::tabulated(std::vector<std::pair<double, double>> samples) {
    SpectralDensity J;
    J.kind = Family::Tabulated;
    J.samples = std::move(samples);
    validate(J);
    return J;
}

SpectralDensity SpectralDensity::gapped(std::vector<SpectralDensity> segments) {
    SpectralDensity J;
    J.kind = Family::Gapped;
    J.segments = std::move(segments);
    validate(J);
    return J;
}

SpectralDensity SpectralDensity::point_masses(std::vector<std::pair<double, double>> masses) {
    SpectralDensity J;
    J.kind = Family::PointMasses;
    J.masses = std::move(masses);
    std::sort(J.masses.begin(), J.masses.end());
    validate(J);
    return J;
}

void validate(const SpectralDensity& J) {
    auto require = [](bool ok, const char* msg) {
        if (!ok) throw ConfigError(msg);
    };
    if (J.window) {
        require(J.window->first >= 0.0 && J.window->first < J.window->second &&
                    std::isfinite(J.window->second),
                "spectral density window must satisfy 0 <= lo < hi < inf");
    }
    switch (J.kind) {
        case Family::PowerLawHardCutoff:
        case Family::PowerLawExpCutoff:
            require(J.alpha > 0.0, "power-law density requires alpha > 0");
            require(J.s >= 0.0, "power-law density requires s >= 0");
            require(J.omega_c > 0.0, "power-law density requires omega_c > 0");
            break;
        case Family::LogDiscretised:
            require(J.alpha > 0.0, "log-discretised density requires alpha > 0");
            require(J.s >= 0.0, "log-discretised density requires s >= 0");
            require(J.omega_c > 0.0, "log-discretised density requires omega_c > 0");
            if (!(J.delta > 1.0))
                throw DeltaOutOfRange("log discretisation requires delta > 1");
            break;
        case Family::LinearDiscretised:
            require(J.alpha > 0.0, "linear-discretised density requires alpha > 0");
            require(J.s >= 0.0, "linear-discretised density requires s >= 0");
            require(J.omega_c > 0.0, "linear-discretised density requires omega_c > 0");
            require(J.n_modes >= 2, "linear discretisation requires n_modes >= 2");
            break;
        case Family::Tabulated: {
            require(J.samples.size() >= 2, "tabulated density requires at least 2 samples");
            double prev = -1.0;
            for (const auto& [w, j] : J.samples) {
                require(w >= 0.0, "tabulated density requires omega >= 0");
                require(w > prev, "tabulated samples must be strictly increasing in omega");
                if (j < 0.0) throw NegativeDensity("tabulated density has J(omega) < 0");
                prev = w;
            }
            break;
        }
        case Family::Gapped: {
            require(!J.segments.empty(), "gapped density requires at least one segment");
            double prev_hi = -1.0;
            for (const auto& seg : J.segments) {
                require(seg.kind != Family::Gapped, "gapped segments cannot nest");
                require(seg.window.has_value(), "gapped segments must carry a window");
                validate(seg);
                require(seg.window->first >= prev_hi,
                        "gapped segments must have disjoint, ordered supports");
                prev_hi = seg.window->second;
            }
            break;
        }
        case Family::PointMasses: {
            for (const auto& [w, weight] : J.masses) {
                require(w >= 0.0, "point masses require omega >= 0");
                require(weight > 0.0, "point masses require positive weights");
            }
            break;
        }
    }
}

double evaluate(const SpectralDensity& J, double omega) {
    if (omega < 0.0 || !in_window(J, omega)) return 0.0;
    switch (J.kind) {
        case Family::PowerLawHardCutoff:
            return omega <= J.omega_c ? pow_law(J.alpha, J.s, J.omega_c, omega) : 0.0;
        case Family::PowerLawExpCutoff:
            return pow_law(J.alpha, J.s, J.omega_c, omega) * std::exp(-omega / J.omega_c);
        case Family::Tabulated:
            return tabulated_value(J.samples, omega);
        case Family::Gapped: {
            for (const auto& seg : J.segments)
                if (in_window(seg, omega)) return evaluate(seg, omega);
            return 0.0;
        }
        case Family::LogDiscretised:
        case Family::LinearDiscretised:
        case Family::PointMasses:
            throw Error("evaluate: discrete spectral density has no pointwise value");
    }
    return 0.0;
}

namespace {

double eta0_unwindowed(const SpectralDensity& J) {
    switch (J.kind) {
        case Family::PowerLawHardCutoff:
            return 2.0 * M_PI * J.alpha * J.omega_c * J.omega_c / (J.s + 1.0);
        case Family::PowerLawExpCutoff:
            return 2.0 * M_PI * J.alpha * J.omega_c * J.omega_c * std::tgamma(J.s + 1.0);
        case Family::LogDiscretised:
            // full geometric sum of gamma_n^2; equals the continuum eta0
            return 2.0 * M_PI * J.alpha * J.omega_c * J.omega_c / (J.s + 1.0);
        case Family::LinearDiscretised: {
            // sum gamma_n^2 = 2 pi alpha omega_c^2 C(s+N+1, N) / (N+1)^(s+1)
            const int N = J.n_modes - 1;
            const double logc = std::lgamma(J.s + N + 2.0) - std::lgamma(J.s + 2.0) -
                                std::lgamma(N + 1.0) - (J.s + 1.0) * std::log(N + 1.0);
            return 2.0 * M_PI * J.alpha * J.omega_c * J.omega_c * std::exp(logc);
        }
        case Family::PointMasses: {
            if (J.masses.empty())
                throw NonIntegrable("eta0: empty point-mass density (zero measure)");
            double acc = 0.0;
            for (const auto& [w, weight] : J.masses) acc += weight;
            return acc;
        }
        case Family::Tabulated: {
            double acc = 0.0;
            for (std::size_t i = 0; i + 1 < J.samples.size(); ++i)
                acc += detail::integrate_adaptive(
                    [&](double w) { return tabulated_value(J.samples, w); },
                    J.samples[i].first, J.samples[i + 1].first, 1e-13, 24);
            return acc;
        }
        case Family::Gapped: {
            double acc = 0.0;
            for (const auto& seg : J.segments) acc += eta0(seg);
            return acc;
        }
    }
    throw Error("eta0: unknown family");
}

} // namespace

double eta0(const SpectralDensity& J) {
    validate(J);
    if (!J.window) return eta0_unwindowed(J);
    const auto [lo, hi] = *J.window;
    switch (J.kind) {
        case Family::PowerLawHardCutoff: {
            const double hi_eff = std::min(hi, J.omega_c);
            if (hi_eff <= lo) return 0.0;
            const double c = 2.0 * M_PI * J.alpha * std::pow(J.omega_c, 1.0 - J.s);
            return c * (std::pow(hi_eff, J.s + 1.0) - std::pow(lo, J.s + 1.0)) / (J.s + 1.0);
        }
        case Family::PointMasses: {
            double acc = 0.0;
            bool any = false;
            for (const auto& [w, weight] : J.masses)
                if (w >= lo && w <= hi) {
                    acc += weight;
                    any = true;
                }
            if (!any) throw NonIntegrable("eta0: window contains no point masses");
            return acc;
        }
        case Family::LogDiscretised:
        case Family::LinearDiscretised:
            throw Error("eta0: windows on discretised families are not supported");
        default:
            return eta0_numeric(J, lo, hi);
    }
}

std::vector<SpectralDensity> split_gapped(const SpectralDensity& J) {
    if (J.kind != Family::Gapped) return {J};
    return J.segments;
}

double omega_max(const SpectralDensity& J) {
    if (J.window) return J.window->second;
    switch (J.kind) {
        case Family::PowerLawHardCutoff:
        case Family::LogDiscretised:
            return J.omega_c;
        case Family::PowerLawExpCutoff:
            return std::numeric_limits<double>::infinity();
        case Family::LinearDiscretised:
            return J.omega_c * (J.n_modes - 1) / static_cast<double>(J.n_modes);
        case Family::Tabulated:
            return J.samples.back().first;
        case Family::PointMasses:
            if (J.masses.empty())
                throw NonIntegrable("omega_max: empty point-mass density");
            return J.masses.back().first;
        case Family::Gapped:
            return omega_max(J.segments.back());
    }
    throw Error("omega_max: unknown family");
}

SpectralDensity load_tabulated_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open table file: " + path);
    std::vector<std::pair<double, double>> samples;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        double w, j;
        if (ss >> w >> j) samples.emplace_back(w, j);
    }
    if (samples.size() < 2)
        throw ConfigError("table file has fewer than 2 samples: " + path);
    return SpectralDensity::tabulated(std::move(samples));
}

// ---------------------------- tabulated interpolant ----------------------------

namespace {

// Fritsch-Carlson monotone slopes for (t, y) data.
std::vector<double> pchip_slopes(const std::vector<double>& t, const std::vector<double>& y) {
    const std::size_t n = t.size();
    std::vector<double> m(n, 0.0);
    if (n == 1) return m;
    std::vector<double> h(n - 1), d(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = t[i + 1] - t[i];
        d[i] = (y[i + 1] - y[i]) / h[i];
    }
    if (n == 2) {
        m[0] = m[1] = d[0];
        return m;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (d[i - 1] * d[i] <= 0.0) {
            m[i] = 0.0;
        } else {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            m[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
        }
    }
    auto end_slope = [](double h0, double h1, double d0, double d1) {
        double m0 = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (m0 * d0 <= 0.0)
            m0 = 0.0;
        else if (d0 * d1 <= 0.0 && std::fabs(m0) > 3.0 * std::fabs(d0))
            m0 = 3.0 * d0;
        return m0;
    };
    m[0] = end_slope(h[0], h[1], d[0], d[1]);
    m[n - 1] = end_slope(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
    return m;
}

double hermite(double t, double t0, double t1, double y0, double y1, double m0, double m1) {
    const double h = t1 - t0;
    const double u = (t - t0) / h;
    const double u2 = u * u, u3 = u2 * u;
    return y0 * (2.0 * u3 - 3.0 * u2 + 1.0) + h * m0 * (u3 - 2.0 * u2 + u) +
           y1 * (-2.0 * u3 + 3.0 * u2) + h * m1 * (u3 - u2);
}

} // namespace

namespace {

double tabulated_value(const std::vector<std::pair<double, double>>& samples, double omega) {
    if (omega < samples.front().first || omega > samples.back().first) return 0.0;
    // locate interval
    std::size_t lo = 0, hi = samples.size() - 1;
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        if (samples[mid].first <= omega)
            lo = mid;
        else
            hi = mid;
    }
    const auto [w0, j0] = samples[lo];
    const auto [w1, j1] = samples[hi];
    if (j0 <= 0.0 || j1 <= 0.0) {
        // linear through zeros
        const double u = (omega - w0) / (w1 - w0);
        return j0 + u * (j1 - j0);
    }
    // maximal positive run containing [lo, hi]
    std::size_t run_lo = lo, run_hi = hi;
    while (run_lo > 0 && samples[run_lo - 1].second > 0.0) --run_lo;
    while (run_hi + 1 < samples.size() && samples[run_hi + 1].second > 0.0) ++run_hi;
    std::vector<double> t, y;
    t.reserve(run_hi - run_lo + 1);
    for (std::size_t i = run_lo; i <= run_hi; ++i) {
        t.push_back(samples[i].first);
        y.push_back(std::log(samples[i].second));
    }
    const auto m = pchip_slopes(t, y);
    const std::size_t k = lo - run_lo;
    return std::exp(hermite(omega, t[k], t[k + 1], y[k], y[k + 1], m[k], m[k + 1]));
}

} // namespace

} // namespace chainmap
