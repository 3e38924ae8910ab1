// chainmap — map spectral densities onto nearest-neighbour chain coefficients

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "chainmap/asymptotics.hpp"
#include "chainmap/chain.hpp"
#include "chainmap/errors.hpp"
#include "chainmap/job.hpp"
#include "chainmap/kernels.hpp"
#include "chainmap/measure.hpp"
#include "chainmap/oracle.hpp"
#include "chainmap/recurrence.hpp"

namespace {

int cmd_map(const std::string& config_path, int n_override, const std::string& engine_override,
            const std::string& out_override, const std::string& format_override) {
    chainmap::JobConfig cfg;
    try {
        cfg = chainmap::parse_config_file(config_path);
        if (n_override > 0) cfg.chain_length = n_override;
        if (!engine_override.empty()) cfg.engine = engine_override;
        if (!out_override.empty()) cfg.output_path = out_override;
        if (!format_override.empty()) {
            if (format_override == "csv")
                cfg.output_format = chainmap::OutputFormat::Csv;
            else if (format_override == "json")
                cfg.output_format = chainmap::OutputFormat::Json;
            else
                throw chainmap::ConfigError("--format must be csv or json");
        }
    } catch (const chainmap::Error& ex) {
        std::cerr << "config error: " << ex.what() << "\n";
        return 2;
    }
    std::string err;
    const int status = chainmap::run(cfg, &err);
    if (status != 0)
        std::cerr << "chainmap map failed (exit " << status << "): " << err << "\n";
    return status;
}

int cmd_check(const std::string& config_path) {
    try {
        const auto cfg = chainmap::parse_config_file(config_path);
        bool ok = false;
        std::cout << chainmap::run_invariant_suite(cfg, ok);
        return ok ? 0 : 1;
    } catch (const chainmap::ConfigError& ex) {
        std::cerr << "config error: " << ex.what() << "\n";
        return 2;
    } catch (const chainmap::Error& ex) {
        std::cerr << "check failed: " << ex.what() << "\n";
        return 1;
    }
}

int cmd_star(const std::string& config_path) {
    try {
        const auto cfg = chainmap::parse_config_file(config_path);
        const auto sm = chainmap::star_model(cfg.spectral_density);
        std::cout << "n,zeta,gamma\n";
        for (std::size_t k = 0; k < sm.zeta.size(); ++k)
            std::cout << k << "," << chainmap::format_double(sm.zeta[k]) << ","
                      << chainmap::format_double(sm.gamma[k]) << "\n";
        return 0;
    } catch (const chainmap::ConfigError& ex) {
        std::cerr << "config error: " << ex.what() << "\n";
        return 2;
    } catch (const chainmap::Error& ex) {
        std::cerr << "star failed: " << ex.what() << "\n";
        return 1;
    }
}

int cmd_szego(const std::string& config_path) {
    try {
        const auto cfg = chainmap::parse_config_file(config_path);
        std::cout << chainmap::render_szego_json(cfg.spectral_density);
        return 0;
    } catch (const chainmap::ConfigError& ex) {
        std::cerr << "config error: " << ex.what() << "\n";
        return 2;
    } catch (const chainmap::Error& ex) {
        std::cerr << "szego failed: " << ex.what() << "\n";
        return 1;
    }
}

int cmd_oracle(const std::string& case_name, const std::string& out_path) {
    try {
        std::string content;
        if (case_name == "all")
            content = chainmap::oracle::render_fixture();
        else
            content = chainmap::oracle::render_case(case_name) + "\n";
        if (out_path.empty()) {
            std::cout << content;
        } else {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) throw chainmap::Error("cannot write " + out_path);
            out << content;
        }
        return 0;
    } catch (const chainmap::Error& ex) {
        std::cerr << "oracle failed: " << ex.what() << "\n";
        return 1;
    }
}

int cmd_compare(const std::string& config_path, std::vector<std::string> engines, int n) {
    try {
        auto cfg = chainmap::parse_config_file(config_path);
        if (n > 0) cfg.chain_length = n;
        std::cout << chainmap::compare_engines(cfg, engines);
        return 0;
    } catch (const chainmap::ConfigError& ex) {
        std::cerr << "config error: " << ex.what() << "\n";
        return 2;
    } catch (const chainmap::Error& ex) {
        std::cerr << "compare failed: " << ex.what() << "\n";
        return 1;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"chainmap: spectral density to semi-infinite chain coefficients"};
    app.require_subcommand(1);

    std::string config, engine, out, format, oracle_case = "all";
    int n = 0;
    std::vector<std::string> engines;

    auto* map = app.add_subcommand("map", "compute chain coefficients and write artifacts");
    map->add_option("--config", config, "job config (JSON)")->required();
    map->add_option("--n", n, "chain length override");
    map->add_option("--engine", engine, "auto|stieltjes|lanczos|closed-form");
    map->add_option("--out", out, "output path override");
    map->add_option("--format", format, "csv|json");

    auto* check = app.add_subcommand("check", "run the invariant suite on a config");
    check->add_option("--config", config, "job config (JSON)")->required();

    auto* star = app.add_subcommand("star", "emit the discretised star model (zeta, gamma)");
    star->add_option("--config", config, "job config (JSON)")->required();

    auto* szego = app.add_subcommand("szego", "print the Szego report as JSON");
    szego->add_option("--config", config, "job config (JSON)")->required();

    auto* oracle = app.add_subcommand("oracle", "regenerate the derived-values fixture");
    oracle->add_option("--case", oracle_case, "fixture section or 'all'");
    oracle->add_option("--out", out, "write to file instead of stdout");

    auto* compare = app.add_subcommand("compare", "per-n disagreement table between engines");
    compare->add_option("--config", config, "job config (JSON)")->required();
    compare->add_option("--engines", engines, "two or more engines")
        ->required()
        ->delimiter(',');
    compare->add_option("--n", n, "chain length override");

    CLI11_PARSE(app, argc, argv);

    if (map->parsed()) return cmd_map(config, n, engine, out, format);
    if (check->parsed()) return cmd_check(config);
    if (star->parsed()) return cmd_star(config);
    if (szego->parsed()) return cmd_szego(config);
    if (oracle->parsed()) return cmd_oracle(oracle_case, out);
    if (compare->parsed()) return cmd_compare(config, engines, n);
    return 1;
}
