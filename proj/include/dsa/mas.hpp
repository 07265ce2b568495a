#pragma once

#include <span>
#include <vector>

#include "dsa/vec2.hpp"

namespace dsa {

/// State of one agent: s_i = [position, velocity].
struct AgentState {
    Vec2 position;  // m
    Vec2 velocity;  // m/s

    bool finite() const { return position.finite() && velocity.finite(); }
};

/// Synchronous snapshot of the whole system.
struct MasState {
    std::vector<AgentState> agents;
    double time = 0.0;
    int step_index = 0;
};

/// Actuation and sensing bounds shared by all agents.
struct PhysicalLimits {
    double a_max;         // m/s^2
    double v_max;         // m/s
    double sense_radius;  // m
    double d_min;         // m, collision threshold
    double eta;           // s, control period

    bool valid() const {
        return a_max > 0 && v_max > 0 && sense_radius > 0 && d_min > 0 &&
               eta > 0 && d_min < sense_radius;
    }
};

/// One control period of the double integrator under a zero-order-hold
/// action. Exact update; velocity norm clipped to v_max afterwards.
AgentState step_dynamics(const AgentState& state, Vec2 action,
                         const PhysicalLimits& limits);

/// Indices j != i with strict distance < sense_radius, ascending.
std::vector<int> neighbors(const MasState& state, int agent_index,
                           const PhysicalLimits& limits);

/// Gather the states of the given indices.
std::vector<AgentState> gather_states(const MasState& state,
                                      std::span<const int> indices);

}  // namespace dsa
