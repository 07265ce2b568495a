#include "dsa/mas.hpp"

#include <algorithm>
#include <stdexcept>

namespace dsa {

AgentState step_dynamics(const AgentState& state, Vec2 action,
                         const PhysicalLimits& limits) {
    if (!state.finite() || !action.finite())
        throw std::domain_error("step_dynamics: non-finite state or action");
    if (action.norm() > limits.a_max + 1e-9)
        throw std::invalid_argument("step_dynamics: action exceeds a_max");

    const double eta = limits.eta;
    AgentState next;
    next.position = state.position + state.velocity * eta + action * (0.5 * eta * eta);
    next.velocity = clip_norm(state.velocity + action * eta, limits.v_max);
    return next;
}

std::vector<int> neighbors(const MasState& state, int agent_index,
                           const PhysicalLimits& limits) {
    if (agent_index < 0 || agent_index >= static_cast<int>(state.agents.size()))
        throw std::out_of_range("neighbors: agent_index out of range");

    std::vector<int> out;
    const Vec2 p = state.agents[agent_index].position;
    const double r2 = limits.sense_radius * limits.sense_radius;
    for (int j = 0; j < static_cast<int>(state.agents.size()); ++j) {
        if (j == agent_index) continue;
        if ((state.agents[j].position - p).norm_sq() < r2) out.push_back(j);
    }
    return out;
}

std::vector<AgentState> gather_states(const MasState& state,
                                      std::span<const int> indices) {
    std::vector<AgentState> out;
    out.reserve(indices.size());
    for (int j : indices) out.push_back(state.agents[j]);
    return out;
}

}  // namespace dsa
