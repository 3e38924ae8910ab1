// job.hpp — batch front-end: config parsing, engine dispatch, artifact export

#pragma once

#include <string>
#include <vector>

#include "chainmap/chain.hpp"
#include "chainmap/spectral_density.hpp"

namespace chainmap {

enum class OutputFormat { Csv, Json };

struct JobConfig {
    SpectralDensity spectral_density;
    int chain_length = 1;
    std::string engine = "auto"; // auto | stieltjes | lanczos | closed-form | moment-gram-schmidt
    double tolerance = 1e-12;
    std::string output_path;
    OutputFormat output_format = OutputFormat::Csv;
};

JobConfig parse_config_file(const std::string& path);
JobConfig parse_config_text(const std::string& json_text);

// Chain of `sites` sites for one (non-gapped) density with the given engine
// policy; engine "auto" takes the closed form when the family has one.
ChainParameters compute_chain(const SpectralDensity& J, int sites, const std::string& engine,
                              double tolerance);

// Artifact rendering (deterministic bytes, %.16e numbers).
std::string render_chain_csv(const ChainParameters& cp);
std::string render_chain_json(const ChainParameters& cp);
std::string render_szego_json(const SpectralDensity& J);

// Full job: one chain file per gapped segment plus a szego report file.
// Returns the process exit status (0 ok, 2 config, 3 no convergence,
// 4 degenerate measure); writes are atomic (temp file + rename).
int run(const JobConfig& cfg, std::string* error_message = nullptr);

// Per-n max relative disagreement table between >= 2 engines.
std::string compare_engines(const JobConfig& cfg, const std::vector<std::string>& engines);

// Invariant suite behind `chainmap check`; returns "OK <name>" / "FAIL <name>"
// lines and sets `all_ok`.
std::string run_invariant_suite(const JobConfig& cfg, bool& all_ok);

} // namespace chainmap
