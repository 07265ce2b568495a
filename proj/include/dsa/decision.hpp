#pragma once

#include <span>

#include "dsa/cbf.hpp"

namespace dsa {

enum class Mode { AC, BC };

/// Per-agent switching automaton state.
struct DmState {
    Mode mode = Mode::AC;
    int last_switch_step = -1;
};

struct SwitchParams {
    int m = 3;  // RSC multiplier, > 1
    double eta; // s
};

/// Recoverable-set shrinkage over one control period: the magnitude of the
/// worst-case (most negative) Lie derivative reachable with both actions in
/// the a_max disk, clamped at zero when h cannot decrease.
double threshold_lambda(const PairwiseCbf& cbf, const AgentState& s_i,
                        const AgentState& s_j, const PhysicalLimits& limits);

/// Forward switching condition: some neighbor's barrier is below its
/// one-step threshold. Neighbors inside d_min + kDomainEps force true.
bool fsc(const PairwiseCbf& cbf, const AgentState& self,
         std::span<const AgentState> neighbor_states, const PhysicalLimits& limits,
         const SwitchParams& params);

/// Reverse switching condition: every neighbor's barrier exceeds m times its
/// threshold. Vacuously true with no neighbors.
bool rsc(const PairwiseCbf& cbf, const AgentState& self,
         std::span<const AgentState> neighbor_states, const PhysicalLimits& limits,
         const SwitchParams& params);

/// AC -> BC on FSC, BC -> AC on RSC, otherwise unchanged.
DmState dm_step(DmState dm, bool fsc_val, bool rsc_val, int step);

}  // namespace dsa
