#include "chainmap/recurrence.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

#include "chainmap/errors.hpp"

namespace chainmap {

const char* engine_name(EngineKind e) {
    switch (e) {
        case EngineKind::ClosedForm: return "closed-form";
        case EngineKind::StieltjesDiscretised: return "stieltjes";
        case EngineKind::LanczosRKPW: return "lanczos";
        case EngineKind::ModifiedChebyshev: return "modified-chebyshev";
        case EngineKind::MomentGramSchmidt: return "moment-gram-schmidt";
    }
    return "unknown";
}

void check_valid(const RecurrenceCoefficients& rc) {
    if (rc.alpha.empty() || rc.alpha.size() != rc.beta.size())
        throw Error("recurrence coefficients: inconsistent array sizes");
    if (!(rc.beta[0] > 0.0))
        throw MeasureDegenerate("recurrence coefficients: beta[0] (total mass) <= 0");
    for (std::size_t k = 1; k < rc.beta.size(); ++k)
        if (!(rc.beta[k] > 0.0))
            throw MeasureDegenerate("recurrence coefficients: beta[" + std::to_string(k) +
                                    "] <= 0");
}

OrthonormalCoefficients to_orthonormal(const RecurrenceCoefficients& rc) {
    check_valid(rc);
    OrthonormalCoefficients out;
    const std::size_t n = rc.n_terms();
    if (n < 2) return out;
    out.A.resize(n - 1);
    out.B.resize(n - 1);
    out.C.resize(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double rb = std::sqrt(rc.beta[k + 1]);
        out.A[k] = rc.alpha[k] / rb;
        out.B[k] = std::sqrt(rc.beta[k] / rc.beta[k + 1]);
        out.C[k] = 1.0 / rb;
    }
    return out;
}

RecurrenceCoefficients affine_transform(const RecurrenceCoefficients& rc,
                                        Interval from, Interval to) {
    check_valid(rc);
    if (!std::isfinite(from.a) || !std::isfinite(from.b) || !std::isfinite(to.a) ||
        !std::isfinite(to.b))
        throw UnboundedSupport("affine_transform requires bounded intervals");
    if (!(from.b > from.a) || !(to.b > to.a))
        throw Error("affine_transform: degenerate interval");
    const double m = (to.b - to.a) / (from.b - from.a);
    const double c = to.a - m * from.a;
    RecurrenceCoefficients out = rc;
    out.beta[0] = m * rc.beta[0];
    for (std::size_t k = 0; k < rc.n_terms(); ++k) {
        out.alpha[k] = m * rc.alpha[k] + c;
        if (k >= 1) out.beta[k] = m * m * rc.beta[k];
    }
    out.support = {{to.a, to.b}};
    return out;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

std::string to_text(const RecurrenceCoefficients& rc) {
    std::ostringstream ss;
    ss << "# engine=" << engine_name(rc.engine) << " n=" << rc.n_terms() << "\n";
    ss << "# alpha beta\n";
    for (std::size_t k = 0; k < rc.n_terms(); ++k)
        ss << format_double(rc.alpha[k]) << " " << format_double(rc.beta[k]) << "\n";
    return ss.str();
}

RecurrenceCoefficients from_text(const std::string& text) {
    RecurrenceCoefficients rc;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            const auto epos = line.find("engine=");
            if (epos != std::string::npos) {
                std::string name = line.substr(epos + 7);
                name = name.substr(0, name.find(' '));
                for (EngineKind e :
                     {EngineKind::ClosedForm, EngineKind::StieltjesDiscretised,
                      EngineKind::LanczosRKPW, EngineKind::ModifiedChebyshev,
                      EngineKind::MomentGramSchmidt})
                    if (name == engine_name(e)) rc.engine = e;
            }
            line.erase(hash);
        }
        std::istringstream ss(line);
        double a, b;
        if (ss >> a >> b) {
            rc.alpha.push_back(a);
            rc.beta.push_back(b);
        }
    }
    if (rc.alpha.empty()) throw Error("from_text: no coefficient rows");
    rc.est_error.assign(rc.alpha.size(), 0.0);
    return rc;
}

std::string to_json(const RecurrenceCoefficients& rc) {
    // hand-formatted so numbers are exactly %.16e
    std::ostringstream ss;
    ss << "{\n  \"engine\": \"" << engine_name(rc.engine) << "\",\n";
    ss << "  \"n\": " << rc.n_terms() << ",\n";
    auto emit = [&ss](const char* key, const std::vector<double>& v) {
        ss << "  \"" << key << "\": [";
        for (std::size_t i = 0; i < v.size(); ++i)
            ss << (i ? ", " : "") << format_double(v[i]);
        ss << "]";
    };
    emit("alpha", rc.alpha);
    ss << ",\n";
    emit("beta", rc.beta);
    ss << ",\n";
    emit("est_error", rc.est_error);
    ss << "\n}\n";
    return ss.str();
}

RecurrenceCoefficients from_json(const std::string& json) {
    const auto j = nlohmann::json::parse(json);
    RecurrenceCoefficients rc;
    const std::string name = j.at("engine").get<std::string>();
    for (EngineKind e : {EngineKind::ClosedForm, EngineKind::StieltjesDiscretised,
                         EngineKind::LanczosRKPW, EngineKind::ModifiedChebyshev,
                         EngineKind::MomentGramSchmidt})
        if (name == engine_name(e)) rc.engine = e;
    rc.alpha = j.at("alpha").get<std::vector<double>>();
    rc.beta = j.at("beta").get<std::vector<double>>();
    if (j.contains("est_error"))
        rc.est_error = j.at("est_error").get<std::vector<double>>();
    else
        rc.est_error.assign(rc.alpha.size(), 0.0);
    return rc;
}

} // namespace chainmap
