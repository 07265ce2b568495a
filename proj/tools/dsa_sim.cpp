#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dsa/harness.hpp"
#include "dsa/oracles.hpp"
#include "dsa/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitValidation = 2;
constexpr int kExitRuntimeAbort = 3;

void prefix_outputs(dsa::Scenario& s, const std::string& out_dir) {
    auto prefix = [&](std::string& path) {
        if (path.empty()) return;
        std::filesystem::path p(path);
        if (p.is_relative()) path = (std::filesystem::path(out_dir) / p).string();
    };
    prefix(s.output.trajectory_csv);
    prefix(s.output.summary_path);
    prefix(s.output.min_dist_csv);
}

void apply_seed(dsa::Scenario& s, std::uint64_t seed) {
    if (auto* ui = std::get_if<dsa::UniformInit>(&s.init)) ui->seed = seed;
}

int execute(dsa::Scenario& scenario, const std::string& out_dir, bool quiet,
            bool serial) {
    prefix_outputs(scenario, out_dir);
    dsa::RunOptions options;
    if (serial) options.exec = dsa::ExecMode::Serial;
    const auto summary = dsa::run(scenario, options);
    dsa::write_outputs(scenario, summary);
    if (!quiet) dsa::write_summary_text(std::cout, summary);
    if (summary.aborted) {
        std::cerr << "run aborted: " << summary.abort_reason << "\n";
        return kExitRuntimeAbort;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Distributed Simplex Architecture simulator"};
    app.require_subcommand(1);

    std::string out_dir = ".";
    std::uint64_t seed = 1;
    bool seed_given = false;
    std::vector<std::string> overrides;
    bool quiet = false;
    bool serial = false;
    app.add_option("--out-dir", out_dir, "Directory for output files");
    app.add_option("--seed", seed, "Override the scenario RNG seed")
        ->each([&](const std::string&) { seed_given = true; });
    app.add_option("--set", overrides,
                   "Scenario override, dotted key=value (repeatable)");
    app.add_flag("--quiet", quiet, "Suppress the summary on stdout");
    app.add_flag("--serial", serial, "Disable the parallel per-agent loop");

    std::string scenario_path;
    auto* cmd_run = app.add_subcommand("run", "Run a scenario file");
    cmd_run->add_option("scenario", scenario_path, "Scenario JSON file")->required();

    std::string validate_path;
    auto* cmd_validate = app.add_subcommand("validate", "Validate a scenario file");
    cmd_validate->add_option("scenario", validate_path, "Scenario JSON file")->required();

    std::string demo_name;
    auto* cmd_demo = app.add_subcommand("demo", "Run a built-in experiment");
    cmd_demo->add_option("name", demo_name, "flocking | flocking-nodsa | waypoint")
        ->required();

    std::string suite_name;
    auto* cmd_oracle = app.add_subcommand("oracle", "Run a cross-check suite");
    cmd_oracle->add_option("suite", suite_name,
                           "partition | liederiv | lp-grid | euler")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_run->parsed()) {
            std::ifstream in(scenario_path);
            if (!in) {
                std::cerr << "cannot open scenario file: " << scenario_path << "\n";
                return kExitIo;
            }
            nlohmann::json j;
            try {
                in >> j;
                for (const auto& o : overrides) dsa::apply_override(j, o);
                auto scenario = dsa::scenario_from_json(j);
                if (seed_given) apply_seed(scenario, seed);
                return execute(scenario, out_dir, quiet, serial);
            } catch (const nlohmann::json::exception& e) {
                std::cerr << "invalid scenario JSON: " << e.what() << "\n";
                return kExitValidation;
            }
        }
        if (cmd_validate->parsed()) {
            auto scenario = dsa::load_scenario(validate_path);
            dsa::initial_states(scenario);  // also checks recoverability
            if (!quiet) std::cout << "scenario is valid\n";
            return kExitOk;
        }
        if (cmd_demo->parsed()) {
            auto scenario = dsa::demo_scenario(demo_name, seed);
            if (!overrides.empty()) {
                auto j = dsa::scenario_to_json(scenario);
                for (const auto& o : overrides) dsa::apply_override(j, o);
                scenario = dsa::scenario_from_json(j);
                if (seed_given) apply_seed(scenario, seed);
            }
            const std::string stem = demo_name + "-seed" + std::to_string(seed);
            if (scenario.output.trajectory_csv.empty())
                scenario.output.trajectory_csv = stem + "-trajectory.csv";
            if (scenario.output.summary_path.empty())
                scenario.output.summary_path = stem + "-summary.txt";
            if (scenario.output.min_dist_csv.empty())
                scenario.output.min_dist_csv = stem + "-mindist.csv";
            return execute(scenario, out_dir, quiet, serial);
        }
        if (cmd_oracle->parsed()) {
            const int rc = dsa::oracle::run_suite(suite_name, std::cout);
            return rc == 2 ? kExitValidation : rc;
        }
    } catch (const dsa::ScenarioError& e) {
        std::cerr << "scenario error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitOk;
}
