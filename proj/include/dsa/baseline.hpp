#pragma once

#include <span>
#include <vector>

#include "dsa/cbf.hpp"

namespace dsa {

/// Weight floor for the 1/h terms of the BC utility.
inline constexpr double kWeightEps = 1e-3;

/// Linear utility of the BC: maximize gradient . u over the admissible set.
/// `constant` is the action-independent part, kept for diagnostics.
struct BcObjective {
    Vec2 gradient;
    double constant = 0.0;
};

enum class LpStatus { Optimal, FeasibleFallback, InfeasibleFallback };

struct LpSolution {
    Vec2 action;
    LpStatus status;
    std::vector<int> active_constraints;
};

/// Weighted sum of Lie-derivative objectives over the neighbors, with each
/// neighbor's action predicted as zero. Neighbors must satisfy
/// |dp| > d_min + kDomainEps; exclude closer ones upstream.
BcObjective build_objective(const PairwiseCbf& cbf, const AgentState& self,
                            std::span<const AgentState> neighbor_states);

/// Exact 2-D LP over (half-planes ∩ disk) by candidate enumeration.
/// Deterministic: ties broken by smallest norm, then lexicographic (x, y).
LpSolution solve_bc(const BcObjective& objective, const AdmissibleSet& admissible);

}  // namespace dsa
