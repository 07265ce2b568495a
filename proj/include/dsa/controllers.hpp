#pragma once

#include <span>
#include <utility>
#include <vector>

#include "dsa/mas.hpp"

namespace dsa {

/// Weights of the three Reynolds interaction terms.
struct ReynoldsWeights {
    double w_s;   // separation
    double w_c;   // cohesion
    double w_al;  // alignment
};

/// Reynolds flocking acceleration: weighted sum of separation (inverse-square
/// repulsion), cohesion (towards the neighbor centroid) and alignment
/// (towards the mean neighbor velocity), clipped to the a_max disk.
/// Returns zero with no neighbors.
Vec2 reynolds_action(const AgentState& self,
                     std::span<const AgentState> neighbor_states,
                     const ReynoldsWeights& weights, const PhysicalLimits& limits);

struct WaypointGains {
    double k_p = 2.0;
    double k_d = 1.5;
};

struct WaypointPlan {
    std::vector<Vec2> waypoints;
    int current_index = 0;
    double capture_radius = 0.1;  // m

    bool completed() const {
        return current_index >= static_cast<int>(waypoints.size());
    }
};

/// PD acceleration towards the current waypoint, advancing the index while
/// within the capture radius; brakes to rest once the plan is completed.
std::pair<Vec2, WaypointPlan> waypoint_action(const AgentState& self,
                                              WaypointPlan plan,
                                              const WaypointGains& gains,
                                              const PhysicalLimits& limits);

}  // namespace dsa
