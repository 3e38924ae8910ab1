#include "chainmap/job.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "chainmap/asymptotics.hpp"
#include "chainmap/engines.hpp"
#include "chainmap/errors.hpp"
#include "chainmap/measure.hpp"
#include "chainmap/quadrature.hpp"

namespace chainmap {
namespace {

using nlohmann::json;

SpectralDensity parse_density(const json& j) {
    if (!j.is_object() || !j.contains("family"))
        throw ConfigError("spectral_density must be an object with a 'family' key");
    const std::string fam = j.at("family").get<std::string>();
    auto num = [&](const char* key) {
        if (!j.contains(key))
            throw ConfigError(std::string("spectral_density missing '") + key + "' for family " +
                              fam);
        return j.at(key).get<double>();
    };
    SpectralDensity d;
    if (fam == "hard_cutoff") {
        d = SpectralDensity::hard_cutoff(num("alpha"), num("s"), num("omega_c"));
    } else if (fam == "exp_cutoff") {
        d = SpectralDensity::exp_cutoff(num("alpha"), num("s"), num("omega_c"));
    } else if (fam == "log_discretised") {
        d = SpectralDensity::log_discretised(num("alpha"), num("s"), num("omega_c"),
                                             num("delta"));
    } else if (fam == "linear_discretised") {
        if (!j.contains("n_modes")) throw ConfigError("linear_discretised needs 'n_modes'");
        d = SpectralDensity::linear_discretised(num("alpha"), num("s"), num("omega_c"),
                                                j.at("n_modes").get<int>());
    } else if (fam == "tabulated") {
        if (j.contains("table_path")) {
            d = load_tabulated_file(j.at("table_path").get<std::string>());
        } else if (j.contains("samples")) {
            std::vector<std::pair<double, double>> samples;
            for (const auto& row : j.at("samples"))
                samples.emplace_back(row.at(0).get<double>(), row.at(1).get<double>());
            d = SpectralDensity::tabulated(std::move(samples));
        } else {
            throw ConfigError("tabulated needs 'table_path' or 'samples'");
        }
    } else if (fam == "point_masses") {
        if (!j.contains("masses")) throw ConfigError("point_masses needs 'masses'");
        std::vector<std::pair<double, double>> masses;
        for (const auto& row : j.at("masses"))
            masses.emplace_back(row.at(0).get<double>(), row.at(1).get<double>());
        d = SpectralDensity::point_masses(std::move(masses));
    } else if (fam == "gapped") {
        if (!j.contains("segments")) throw ConfigError("gapped needs 'segments'");
        std::vector<SpectralDensity> segments;
        for (const auto& seg : j.at("segments")) {
            SpectralDensity s = parse_density(seg);
            if (!seg.contains("omega_lo") || !seg.contains("omega_hi"))
                throw ConfigError("gapped segments need 'omega_lo' and 'omega_hi'");
            s.window = {{seg.at("omega_lo").get<double>(), seg.at("omega_hi").get<double>()}};
            validate(s);
            segments.push_back(std::move(s));
        }
        d = SpectralDensity::gapped(std::move(segments));
    } else {
        throw ConfigError("unknown spectral density family: " + fam);
    }
    if (j.contains("omega_lo") && j.contains("omega_hi") && fam != "gapped") {
        d.window = {{j.at("omega_lo").get<double>(), j.at("omega_hi").get<double>()}};
        validate(d);
    }
    return d;
}

bool has_closed_form(const SpectralDensity& J) {
    if (J.window) return false;
    switch (J.kind) {
        case Family::PowerLawHardCutoff:
        case Family::PowerLawExpCutoff:
        case Family::LogDiscretised:
        case Family::LinearDiscretised:
            return true;
        default:
            return false;
    }
}

ChainParameters closed_form_chain(const SpectralDensity& J, int sites) {
    switch (J.kind) {
        case Family::PowerLawHardCutoff:
            return jacobi_chain(J.alpha, J.s, J.omega_c, sites);
        case Family::PowerLawExpCutoff:
            return laguerre_chain(J.alpha, J.s, J.omega_c, sites);
        case Family::LogDiscretised:
            return littleq_chain(J.alpha, J.s, J.omega_c, J.delta, sites);
        case Family::LinearDiscretised:
            return hahn_chain(J.alpha, J.s, J.omega_c, J.n_modes - 1, sites);
        default:
            throw ConfigError("no closed-form chain for family " +
                              std::string(family_name(J.kind)));
    }
}

ChainParameters engine_chain(const SpectralDensity& J, int sites, const std::string& engine,
                             double tolerance) {
    const Measure m = induced_measure(J);
    EngineOptions opt;
    opt.tolerance = tolerance;
    // one extra coefficient pair gives the full set of `sites` hoppings
    int n = sites + 1;
    if (m.discrete() && m.masses.size() == static_cast<std::size_t>(sites)) n = sites;
    RecurrenceCoefficients rc;
    if (engine == "stieltjes")
        rc = stieltjes_discretised(m, n, opt);
    else if (engine == "lanczos")
        rc = lanczos_rkpw(m, n, opt);
    else if (engine == "moment-gram-schmidt")
        rc = moment_gram_schmidt(m, n);
    else
        throw ConfigError("unknown engine: " + engine);
    ChainParameters cp = chain_from_coefficients(rc, m.dispersion_g);
    cp.omega.resize(sites);
    cp.quad_points = rc.quad_points;
    if (!rc.est_error.empty())
        cp.max_est_error = *std::max_element(rc.est_error.begin(), rc.est_error.end());
    return cp;
}

void write_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw Error("cannot write " + tmp);
        out << content;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw Error("cannot rename " + tmp + " to " + path);
}

void emit_doubles(std::ostringstream& ss, const std::vector<double>& v) {
    ss << "[";
    for (std::size_t i = 0; i < v.size(); ++i) ss << (i ? ", " : "") << format_double(v[i]);
    ss << "]";
}

} // namespace

JobConfig parse_config_text(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const std::exception& ex) {
        throw ConfigError(std::string("config is not valid JSON: ") + ex.what());
    }
    JobConfig cfg;
    try {
        cfg.spectral_density = parse_density(j.at("spectral_density"));
        if (j.contains("chain_length")) cfg.chain_length = j.at("chain_length").get<int>();
        if (j.contains("engine")) cfg.engine = j.at("engine").get<std::string>();
        if (j.contains("tolerance")) cfg.tolerance = j.at("tolerance").get<double>();
        if (j.contains("output")) {
            const auto& o = j.at("output");
            if (o.contains("path")) cfg.output_path = o.at("path").get<std::string>();
            if (o.contains("format")) {
                const std::string f = o.at("format").get<std::string>();
                if (f == "csv")
                    cfg.output_format = OutputFormat::Csv;
                else if (f == "json")
                    cfg.output_format = OutputFormat::Json;
                else
                    throw ConfigError("output.format must be 'csv' or 'json'");
            }
        }
    } catch (const json::exception& ex) {
        throw ConfigError(std::string("malformed config: ") + ex.what());
    }
    if (cfg.chain_length < 1) throw ConfigError("chain_length must be >= 1");
    if (!(cfg.tolerance > 0.0) || cfg.tolerance > 1e-2)
        throw ConfigError("tolerance must lie in (0, 1e-2]");
    return cfg;
}

JobConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

ChainParameters compute_chain(const SpectralDensity& J, int sites, const std::string& engine,
                              double tolerance) {
    if (sites < 1) throw ConfigError("chain length must be >= 1");
    if (engine == "closed-form") return closed_form_chain(J, sites);
    if (engine == "auto")
        return has_closed_form(J) ? closed_form_chain(J, sites)
                                  : engine_chain(J, sites, "lanczos", tolerance);
    return engine_chain(J, sites, engine, tolerance);
}

std::string render_chain_csv(const ChainParameters& cp) {
    std::ostringstream ss;
    ss << "# c0=" << format_double(cp.c0) << " source=" << cp.source
       << " g=" << format_double(cp.g) << "\n";
    ss << "# provenance: engine=" << cp.source << " quad_points=" << cp.quad_points
       << " max_est_error=" << format_double(cp.max_est_error) << " gauge="
       << (std::count(cp.t_sign.begin(), cp.t_sign.end(), -1) ? "sign-flipped" : "as-derived")
       << "\n";
    ss << "n,omega,t\n";
    for (std::size_t n = 0; n < cp.sites(); ++n) {
        ss << n << "," << format_double(cp.omega[n]) << ",";
        if (n < cp.t.size()) ss << format_double(cp.t[n]);
        ss << "\n";
    }
    return ss.str();
}

std::string render_chain_json(const ChainParameters& cp) {
    std::ostringstream ss;
    ss << "{\n  \"c0\": " << format_double(cp.c0) << ",\n  \"g\": " << format_double(cp.g)
       << ",\n  \"source\": \"" << cp.source << "\",\n  \"provenance\": {\"engine\": \""
       << cp.source << "\", \"quad_points\": " << cp.quad_points << ", \"max_est_error\": "
       << format_double(cp.max_est_error) << "},\n  \"n\": " << cp.sites()
       << ",\n  \"omega\": ";
    emit_doubles(ss, cp.omega);
    ss << ",\n  \"t\": ";
    emit_doubles(ss, cp.t);
    ss << "\n}\n";
    return ss.str();
}

std::string render_szego_json(const SpectralDensity& J) {
    std::ostringstream ss;
    ss << "{\n  \"segments\": [\n";
    const auto segments = split_gapped(J);
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const SzegoReport rep = szego_check(induced_measure(segments[i]));
        ss << "    {\"in_class\": " << (rep.in_class ? "true" : "false")
           << ", \"szego_integral\": ";
        if (rep.integral_minus_inf)
            ss << "\"-inf\"";
        else
            ss << format_double(rep.szego_integral);
        ss << ", \"omega_inf\": " << format_double(rep.omega_inf)
           << ", \"t_inf\": " << format_double(rep.t_inf) << ", \"note\": \"" << rep.note
           << "\"}";
        ss << (i + 1 < segments.size() ? ",\n" : "\n");
    }
    ss << "  ]\n}\n";
    return ss.str();
}

int run(const JobConfig& cfg, std::string* error_message) {
    try {
        if (cfg.output_path.empty()) throw ConfigError("output.path is required for run");
        const auto segments = split_gapped(cfg.spectral_density);
        std::vector<std::pair<std::string, std::string>> artifacts;
        for (std::size_t i = 0; i < segments.size(); ++i) {
            const ChainParameters cp =
                compute_chain(segments[i], cfg.chain_length, cfg.engine, cfg.tolerance);
            std::string path = cfg.output_path;
            if (segments.size() > 1) path += ".seg" + std::to_string(i);
            artifacts.emplace_back(path, cfg.output_format == OutputFormat::Csv
                                             ? render_chain_csv(cp)
                                             : render_chain_json(cp));
        }
        artifacts.emplace_back(cfg.output_path + ".szego.json",
                               render_szego_json(cfg.spectral_density));
        // all computation succeeded; now write
        for (const auto& [path, content] : artifacts) write_atomic(path, content);
        return 0;
    } catch (const ConfigError& ex) {
        if (error_message) *error_message = ex.what();
        return 2;
    } catch (const NoConvergence& ex) {
        if (error_message) *error_message = ex.what();
        return 3;
    } catch (const MeasureDegenerate& ex) {
        if (error_message) *error_message = ex.what();
        return 4;
    } catch (const IndexBeyondModes& ex) {
        if (error_message) *error_message = ex.what();
        return 4;
    } catch (const PrecisionExhausted& ex) {
        if (error_message) *error_message = ex.what();
        return 3;
    } catch (const Error& ex) {
        if (error_message) *error_message = ex.what();
        return 1;
    }
}

std::string compare_engines(const JobConfig& cfg, const std::vector<std::string>& engines) {
    if (engines.size() < 2) throw ConfigError("compare needs at least 2 engines");
    std::vector<ChainParameters> chains;
    std::vector<std::string> notes;
    for (const auto& e : engines) {
        try {
            chains.push_back(compute_chain(cfg.spectral_density, cfg.chain_length, e,
                                           cfg.tolerance));
        } catch (const PrecisionExhausted& ex) {
            RecurrenceCoefficients rc;
            rc.alpha = ex.alpha;
            rc.beta = ex.beta;
            rc.est_error.assign(rc.alpha.size(), 1.0);
            rc.engine = EngineKind::MomentGramSchmidt;
            const Measure m = induced_measure(cfg.spectral_density);
            chains.push_back(chain_from_coefficients(rc, m.dispersion_g));
            notes.push_back("# note: engine " + e + " truncated at " +
                            std::to_string(rc.alpha.size()) +
                            " coefficients (precision exhausted)");
        }
    }
    std::size_t rows_omega = chains[0].omega.size(), rows_t = chains[0].t.size();
    for (const auto& c : chains) {
        rows_omega = std::min(rows_omega, c.omega.size());
        rows_t = std::min(rows_t, c.t.size());
    }
    std::ostringstream ss;
    ss << "# engines:";
    for (const auto& e : engines) ss << " " << e;
    ss << "\n";
    for (const auto& n : notes) ss << n << "\n";
    ss << "n,max_rel_omega,max_rel_t\n";
    auto rel = [](double x, double y) {
        const double scale = std::max({std::fabs(x), std::fabs(y), 1e-300});
        return std::fabs(x - y) / scale;
    };
    for (std::size_t n = 0; n < rows_omega; ++n) {
        double worst_o = 0.0, worst_t = 0.0;
        for (std::size_t i = 0; i < chains.size(); ++i)
            for (std::size_t j = i + 1; j < chains.size(); ++j) {
                worst_o = std::max(worst_o, rel(chains[i].omega[n], chains[j].omega[n]));
                if (n < rows_t)
                    worst_t = std::max(worst_t, rel(chains[i].t[n], chains[j].t[n]));
            }
        ss << n << "," << format_double(worst_o) << ",";
        if (n < rows_t) ss << format_double(worst_t);
        ss << "\n";
    }
    return ss.str();
}

std::string run_invariant_suite(const JobConfig& cfg, bool& all_ok) {
    std::ostringstream out;
    all_ok = true;
    auto report = [&](const char* name, bool ok, const std::string& detail = "") {
        out << (ok ? "OK   " : "FAIL ") << name;
        if (!ok && !detail.empty()) out << "  (" << detail << ")";
        out << "\n";
        all_ok = all_ok && ok;
    };

    const auto segments = split_gapped(cfg.spectral_density);
    int seg_idx = 0;
    for (const auto& J : segments) {
        const std::string tag =
            segments.size() > 1 ? " [seg" + std::to_string(seg_idx++) + "]" : "";
        const Measure m = induced_measure(J);
        const int n = std::min(cfg.chain_length + 1, 40);
        RecurrenceCoefficients st, lz;
        try {
            st = stieltjes_discretised(m, n);
            lz = lanczos_rkpw(m, n);
        } catch (const Error& ex) {
            report(("engines computable" + tag).c_str(), false, ex.what());
            continue;
        }
        report(("engines computable" + tag).c_str(), true);

        bool pos = true;
        for (std::size_t k = 1; k < lz.beta.size(); ++k) pos = pos && lz.beta[k] > 0.0;
        report(("beta positivity" + tag).c_str(), pos);

        if (m.bounded()) {
            bool bounds = true;
            const double bmax = std::max(m.support.a * m.support.a,
                                         m.support.b * m.support.b);
            for (std::size_t k = 0; k < lz.alpha.size(); ++k) {
                bounds = bounds && lz.alpha[k] >= m.support.a - 1e-12 &&
                         lz.alpha[k] <= m.support.b + 1e-12;
                if (k >= 1) bounds = bounds && lz.beta[k] <= bmax * (1.0 + 1e-12);
            }
            report(("alpha/beta support bounds" + tag).c_str(), bounds);
        }

        double agree = 0.0;
        for (std::size_t k = 0; k < st.alpha.size(); ++k) {
            const double scale = std::max({std::fabs(st.alpha[k]), std::sqrt(st.beta[k]),
                                           1e-300});
            agree = std::max(agree, std::fabs(st.alpha[k] - lz.alpha[k]) / scale -
                                        std::max(st.est_error[k], lz.est_error[k]));
            agree = std::max(agree, std::fabs(st.beta[k] - lz.beta[k]) / st.beta[k] -
                                        std::max(st.est_error[k], lz.est_error[k]));
        }
        report(("engine agreement within estimates" + tag).c_str(), agree <= 0.0);

        if (has_exact_moments(m)) {
            const int ng = std::min(n, 12);
            const QuadratureRule gr = gauss_rule(lz, ng);
            bool ok = true;
            for (int r = 0; r < 2 * ng; ++r) {
                double acc = 0.0;
                for (std::size_t i = 0; i < gr.size(); ++i)
                    acc += gr.weights[i] * std::pow(gr.nodes[i], r);
                const double ref = measure_moment(m, r);
                ok = ok && std::fabs(acc - ref) <= 1e-12 * std::max(std::fabs(ref), 1e-300);
            }
            report(("gauss rule reproduces moments" + tag).c_str(), ok);
        }

        if (m.bounded()) {
            const auto fwd = affine_transform(lz, {m.support.a, m.support.b}, {0.0, 1.0});
            const auto back = affine_transform(fwd, {0.0, 1.0}, {m.support.a, m.support.b});
            double worst = 0.0;
            for (std::size_t k = 0; k < lz.alpha.size(); ++k) {
                worst = std::max(worst, std::fabs(back.alpha[k] - lz.alpha[k]));
                worst = std::max(worst, std::fabs(back.beta[k] - lz.beta[k]) / lz.beta[k]);
            }
            report(("affine round-trip" + tag).c_str(), worst < 1e-14 * (1.0 + 1.0));
        }

        const double eta = eta0(J);
        const double c0 = std::sqrt(lz.beta[0]);
        report(("c0^2 = eta0/pi" + tag).c_str(),
               std::fabs(c0 * c0 * M_PI - eta) <= 1e-9 * eta);

        const auto on = to_orthonormal(lz);
        bool rt = true;
        for (std::size_t k = 0; k + 1 < lz.n_terms(); ++k) {
            rt = rt && std::fabs(on.B[k] * on.B[k] - lz.beta[k] * on.C[k] * on.C[k]) <=
                           1e-14 * std::max(1.0, lz.beta[k] * on.C[k] * on.C[k]);
        }
        report(("orthonormal conversion identity" + tag).c_str(), rt);
    }
    return out.str();
}

} // namespace chainmap
