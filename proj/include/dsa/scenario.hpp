#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "dsa/controllers.hpp"
#include "dsa/mas.hpp"

namespace dsa {

struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ReynoldsConfig {
    ReynoldsWeights weights;
};

struct WaypointConfig {
    std::vector<std::vector<Vec2>> plans;  // one per agent
    WaypointGains gains;
    double capture_radius = 0.1;
};

struct UniformInit {
    Vec2 pos_min, pos_max;
    Vec2 vel_min, vel_max;
    std::uint64_t seed = 1;
    double h_margin = 0.5;
};

struct ExplicitInit {
    std::vector<AgentState> states;
};

struct OutputConfig {
    std::string trajectory_csv;  // empty = skip
    std::string summary_path;    // empty = stdout only
    std::string min_dist_csv;    // per-agent min neighbor distance series
};

/// Full experiment description. All numeric fields in SI units.
struct Scenario {
    int n = 0;
    PhysicalLimits limits{};
    double gamma = 1.0;  // class-K gain of alpha(h) = gamma h^3
    int m = 3;           // RSC multiplier
    std::variant<ReynoldsConfig, WaypointConfig> controller;
    bool dsa_enabled = true;
    double duration = 0.0;  // s
    std::variant<UniformInit, ExplicitInit> init;
    OutputConfig output;

    int step_count() const { return static_cast<int>(duration / limits.eta); }

    /// Throws ScenarioError naming the violated invariant.
    void validate() const;
};

Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& s);
Scenario load_scenario(const std::string& path);

/// Apply a dotted "key.path=value" override to a scenario JSON document.
void apply_override(nlohmann::json& j, const std::string& assignment);

/// Built-in experiments: "flocking", "flocking-nodsa", "waypoint".
Scenario demo_scenario(const std::string& name, std::uint64_t seed);
std::vector<std::string> demo_names();

/// Sample (or copy) the initial agent states. Uniform initializations are
/// rejection-resampled until every pair has h >= h_margin and distance
/// >= d_min; explicit initializations must be recoverable when DSA is on.
std::vector<AgentState> initial_states(const Scenario& s);

}  // namespace dsa
