#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dsa/decision.hpp"
#include "dsa/scenario.hpp"

namespace dsa {

enum class ExecMode { Serial, Parallel };

struct RunOptions {
    ExecMode exec = ExecMode::Parallel;
    bool record_trajectory = true;
};

struct AgentRecord {
    Vec2 position;
    Vec2 velocity;
    Vec2 action;
    Mode mode = Mode::AC;
};

/// One record per step, including step 0 (initial state, zero actions).
struct StepRecord {
    int step = 0;
    double time = 0.0;
    std::vector<AgentRecord> agents;
    double min_pair_distance = 0.0;  // +inf with fewer than two agents
    double min_pair_h = 0.0;
    int bc_count = 0;
};

struct RunSummary {
    int steps = 0;
    double min_pair_distance = 0.0;
    double min_pair_h = 0.0;
    int violation_count = 0;  // steps with some pair strictly below d_min
    std::vector<double> bc_fraction;
    double mean_bc_fraction = 0.0;
    int switch_count = 0;
    int lp_fallback_count = 0;
    double wall_time_s = 0.0;
    bool aborted = false;
    std::string abort_reason;
    bool plans_completed = true;  // waypoint runs: all agents finished
    std::vector<StepRecord> trajectory;
};

/// Synchronous DSA loop: per step, every agent reads the pre-step snapshot,
/// updates its DM, computes the selected controller's action, then all
/// agents integrate together. Throws std::ios_base::failure on output I/O
/// errors; a NaN state sets `aborted` with a diagnostic.
RunSummary run(const Scenario& scenario, const RunOptions& options = {});

double mean_bc_fraction(const RunSummary& summary);

void write_trajectory_csv(std::ostream& out, const RunSummary& summary,
                          double eta);
void write_min_distance_csv(std::ostream& out, const RunSummary& summary,
                            double eta, const PhysicalLimits& limits);
void write_summary_text(std::ostream& out, const RunSummary& summary);

/// Write the scenario's configured output files; no-op for empty paths.
void write_outputs(const Scenario& scenario, const RunSummary& summary);

}  // namespace dsa
