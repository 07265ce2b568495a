#pragma once

#include <span>
#include <utility>
#include <vector>

#include "dsa/mas.hpp"
#include "dsa/vec2.hpp"

namespace dsa {

/// Distance from the boundary (d_min + kDomainEps) below which a neighbor
/// is handled by the fallback constraint instead of the Lie derivative,
/// whose coefficients are singular there.
inline constexpr double kDomainEps = 1e-6;

/// Pairwise braking barrier
///   h(s_i, s_j) = sqrt(4 a_max (|dp| - d_min)) - dv
/// with dv the approach speed along the connecting line (positive when
/// closing), and class-K gain alpha(h) = gamma h^3.
struct PairwiseCbf {
    double a_max;
    double d_min;
    double gamma;
};

/// hdot(a_i, a_j) = drift + coeff_i . a_i + coeff_j . a_j.
/// drift holds only the action-independent (L_f h) terms.
struct LieDecomposition {
    double drift;
    Vec2 coeff_i;
    Vec2 coeff_j;
};

/// Linear constraint normal . u <= offset, normal stored unit-length.
struct HalfPlane {
    Vec2 normal;
    double offset;

    bool satisfied(Vec2 u, double tol = 0.0) const {
        return normal.dot(u) <= offset + tol;
    }
};

/// Binary constraint in the normalized form [P Q][u_i; u_j] <= b.
struct BinaryConstraint {
    Vec2 p;
    Vec2 q;
    double b;
};

/// Intersection of half-planes with the a_max action disk.
struct AdmissibleSet {
    std::vector<HalfPlane> halfplanes;
    double action_bound;

    bool contains(Vec2 u, double tol = 1e-9) const {
        if (u.norm() > action_bound + tol) return false;
        for (const auto& hp : halfplanes)
            if (!hp.satisfied(u, tol)) return false;
        return true;
    }
};

/// Barrier value; signed real extension below d_min.
double eval_h(const PairwiseCbf& cbf, const AgentState& s_i, const AgentState& s_j);

/// Requires |dp| > d_min (singular at the boundary).
LieDecomposition lie_decomposition(const PairwiseCbf& cbf, const AgentState& s_i,
                                   const AgentState& s_j);

/// hdot >= -gamma h^3 rewritten as [P Q][u_i; u_j] <= b.
BinaryConstraint pairwise_constraint(const PairwiseCbf& cbf, const AgentState& s_i,
                                     const AgentState& s_j);

/// Equal split of a binary constraint into the two agents' halves.
std::pair<HalfPlane, HalfPlane> partition(Vec2 p, Vec2 q, double b);

/// One half-plane per neighbor plus the action disk. Neighbors inside
/// d_min + kDomainEps contribute the "accelerate away at half throttle"
/// fallback half-plane.
AdmissibleSet admissible_set(const PairwiseCbf& cbf, const AgentState& self,
                             std::span<const AgentState> neighbor_states,
                             const PhysicalLimits& limits);

}  // namespace dsa
