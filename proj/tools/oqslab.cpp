// oqslab — batch driver for the open-dynamics experiments

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "oqs/experiments.hpp"
#include "oqs/fock_oracle.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitUsage = 2;
constexpr int kExitTolerance = 3;
constexpr int kExitResource = 4;

std::string read_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) {
        throw std::runtime_error("cannot read config file: " + path);
    }
    std::ostringstream ss;
    ss << file.rdbuf();
    return ss.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"oqslab — two-mode open dynamics, Gaussian-noise channels, and large-N checks"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed_override = 0;
    bool have_seed_override = false;

    auto* run_cmd = app.add_subcommand("run", "run an experiment from a JSON config");
    run_cmd->add_option("config", config_path, "path to the scenario config")->required();
    run_cmd->add_option("--out", out_dir, "directory for the CSV output");
    run_cmd->add_option("--seed", seed_override, "override the config seed")
        ->each([&](const std::string&) { have_seed_override = true; });

    auto* validate_cmd = app.add_subcommand("validate", "validate a JSON config");
    validate_cmd->add_option("config", config_path, "path to the scenario config")->required();

    auto* list_cmd = app.add_subcommand("list-experiments", "list the available experiments");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (list_cmd->parsed()) {
            for (oqs::Experiment e : oqs::all_experiments()) {
                std::printf("%-22s %s\n", oqs::to_string(e).c_str(), oqs::describe(e).c_str());
            }
            return kExitPass;
        }

        oqs::ScenarioConfig config = oqs::validate(read_file(config_path));
        if (validate_cmd->parsed()) {
            std::printf("valid: %s\n", oqs::to_string(config.experiment).c_str());
            std::printf("seed: %llu\n", static_cast<unsigned long long>(config.seed));
            std::printf("parameters: %s\n", config.parameters.dump(2).c_str());
            return kExitPass;
        }

        if (have_seed_override) {
            config.seed = seed_override;
        }
        if (!out_dir.empty()) {
            std::filesystem::create_directories(out_dir);
            config.output_path = (std::filesystem::path(out_dir) /
                                  (oqs::to_string(config.experiment) + ".csv"))
                                     .string();
        }

        const oqs::ResultTable table = oqs::run(config);
        if (!config.output_path.empty()) {
            std::printf("wrote %s\n", config.output_path.c_str());
        } else {
            std::fputs(table.csv_full().c_str(), stdout);
        }
        if (!table.passed) {
            for (const std::string& failure : table.failures) {
                std::fprintf(stderr, "tolerance failure: %s\n", failure.c_str());
            }
            return kExitTolerance;
        }
        return kExitPass;
    } catch (const oqs::ValidationError& e) {
        for (const std::string& issue : e.issues) {
            std::fprintf(stderr, "config error: %s\n", issue.c_str());
        }
        return kExitUsage;
    } catch (const oqs::ResourceError& e) {
        std::fprintf(stderr, "resource error: %s\n", e.what());
        return kExitResource;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
}
