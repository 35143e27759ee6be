// experiments.hpp — Named experiments, config validation, CSV result tables

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace oqs {

enum class Experiment {
    E1_unitarity,
    E2_oracle_bosonic,
    E3_shorttime_scaling,
    E4_stochastic_match,
    E5_spin_env,
    E6_largeN_scaling,
    E7_spectrum_spread,
};

std::vector<Experiment> all_experiments();
std::string to_string(Experiment e);
// one-line summary for list-experiments
std::string describe(Experiment e);

struct ScenarioConfig {
    Experiment experiment = Experiment::E1_unitarity;
    nlohmann::json parameters; // experiment-specific block, defaults applied
    std::uint64_t seed = 0;
    std::string output_path;   // empty: do not write a file
};

// Schema violations, all reported at once with a path per offending key.
struct ValidationError : std::runtime_error {
    explicit ValidationError(std::vector<std::string> issues_in);
    std::vector<std::string> issues;
};

// Parse + validate a JSON config text; applies per-experiment defaults.
ScenarioConfig validate(const std::string& config_text);
ScenarioConfig validate_json(const nlohmann::json& config);

struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    nlohmann::json metadata;            // config echo, code version, runtime
    bool passed = true;
    std::vector<std::string> failures;  // tolerance breaches, human readable

    std::string csv_body() const;       // header + data rows, byte-stable
    std::string csv_full() const;       // '#' metadata lines followed by the body
};

// Runs the experiment; deterministic given (config, seed). Writes the CSV to
// config.output_path when set.
ResultTable run(const ScenarioConfig& config);

// least-squares slope of log(y) against log(x)
double fit_loglog_slope(std::span<const double> x, std::span<const double> y);

inline constexpr const char* kVersion = "0.1.0";

} // namespace oqs
