#include "dsa/decision.hpp"

#include <algorithm>
#include <cmath>

namespace dsa {

double threshold_lambda(const PairwiseCbf& cbf, const AgentState& s_i,
                        const AgentState& s_j, const PhysicalLimits& limits) {
    const auto lie = lie_decomposition(cbf, s_i, s_j);
    // Worst case over both a_max disks: each agent contributes
    // -|coeff| * a_max to hdot; for this CBF |coeff_i| = |coeff_j| = 1.
    const double worst_rate =
        lie.drift - (lie.coeff_i.norm() + lie.coeff_j.norm()) * limits.a_max;
    return limits.eta * std::max(0.0, -worst_rate);
}

bool fsc(const PairwiseCbf& cbf, const AgentState& self,
         std::span<const AgentState> neighbor_states, const PhysicalLimits& limits,
         const SwitchParams& params) {
    (void)params;
    for (const auto& other : neighbor_states) {
        const double dist = (self.position - other.position).norm();
        if (dist <= cbf.d_min + kDomainEps) return true;
        const double h = eval_h(cbf, self, other);
        if (h < threshold_lambda(cbf, self, other, limits)) return true;
    }
    return false;
}

bool rsc(const PairwiseCbf& cbf, const AgentState& self,
         std::span<const AgentState> neighbor_states, const PhysicalLimits& limits,
         const SwitchParams& params) {
    for (const auto& other : neighbor_states) {
        const double dist = (self.position - other.position).norm();
        if (dist <= cbf.d_min + kDomainEps) return false;
        const double h = eval_h(cbf, self, other);
        if (!(h > params.m * threshold_lambda(cbf, self, other, limits)))
            return false;
    }
    return true;
}

DmState dm_step(DmState dm, bool fsc_val, bool rsc_val, int step) {
    if (dm.mode == Mode::BC && rsc_val) return {Mode::AC, step};
    if (dm.mode == Mode::AC && fsc_val) return {Mode::BC, step};
    return dm;
}

}  // namespace dsa
