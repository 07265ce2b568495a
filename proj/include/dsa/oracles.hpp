#pragma once

#include <iosfwd>
#include <random>
#include <string>
#include <utility>

#include "dsa/baseline.hpp"
#include "dsa/cbf.hpp"

// Independent reference computations used to cross-check the analytic
// implementations: brute-force integration, finite differences and dense
// grid enumeration. Nothing here shares a code path with what it verifies.
namespace dsa::oracle {

/// N-substep midpoint (kick-drift) integration under a constant action;
/// no velocity clipping.
AgentState midpoint_substep(const AgentState& state, Vec2 action, double eta,
                            int substeps);

/// Closed-form double-integrator update without clipping; dt may be negative.
AgentState exact_step_unclipped(const AgentState& state, Vec2 action, double dt);

/// Central finite difference of h along the pair trajectory under constant
/// actions (a_i, a_j), time perturbation +-delta.
double finite_diff_hdot(const PairwiseCbf& cbf, const AgentState& s_i,
                        const AgentState& s_j, Vec2 a_i, Vec2 a_j, double delta);

struct GridResult {
    bool feasible = false;
    double best_objective = 0.0;
    Vec2 best_point;
    double increment = 0.0;  // objective change across one grid cell diagonal
};

/// Best objective over a resolution x resolution grid of the action square
/// [-R, R]^2 restricted to the admissible set.
GridResult grid_best_objective(Vec2 gradient, const AdmissibleSet& admissible,
                               int resolution);

/// Random point in the disk of the given radius.
Vec2 sample_disk(std::mt19937_64& rng, double radius);

/// Random pair state at flocking scales: distance in
/// (d_min + gap, dist_max), velocities in the v_max disk, with h >= min_h.
std::pair<AgentState, AgentState> sample_pair(std::mt19937_64& rng,
                                              const PhysicalLimits& limits,
                                              const PairwiseCbf& cbf,
                                              double min_h, double gap,
                                              double dist_max);

/// Named randomized cross-check suites for the CLI: "partition",
/// "liederiv", "lp-grid", "euler". Returns 0 on pass, 1 on failure,
/// 2 for an unknown name.
int run_suite(const std::string& name, std::ostream& out);

}  // namespace dsa::oracle
