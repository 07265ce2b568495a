#include "dsa/cbf.hpp"

#include <cmath>
#include <stdexcept>

namespace dsa {

namespace {

struct PairGeometry {
    Vec2 dp;      // p_i - p_j
    Vec2 dv;      // v_i - v_j
    double dist;  // |dp|
};

PairGeometry pair_geometry(const AgentState& s_i, const AgentState& s_j) {
    PairGeometry g;
    g.dp = s_i.position - s_j.position;
    g.dv = s_i.velocity - s_j.velocity;
    g.dist = g.dp.norm();
    if (g.dist <= 0.0)
        throw std::domain_error("pairwise CBF undefined for coincident positions");
    return g;
}

}  // namespace

double eval_h(const PairwiseCbf& cbf, const AgentState& s_i, const AgentState& s_j) {
    const auto g = pair_geometry(s_i, s_j);
    // Approach speed along the connecting line, positive when closing.
    const double approach = -g.dp.dot(g.dv) / g.dist;
    const double margin = g.dist - cbf.d_min;
    const double root = std::sqrt(4.0 * cbf.a_max * std::abs(margin));
    return (margin >= 0.0 ? root : -root) - approach;
}

LieDecomposition lie_decomposition(const PairwiseCbf& cbf, const AgentState& s_i,
                                   const AgentState& s_j) {
    const auto g = pair_geometry(s_i, s_j);
    if (g.dist <= cbf.d_min)
        throw std::domain_error("lie_decomposition: |dp| <= d_min (singular)");

    const double vp = g.dv.dot(g.dp);
    const double d = g.dist;
    const double drift = -(vp * vp) / (d * d * d) + g.dv.norm_sq() / d +
                         2.0 * cbf.a_max * vp /
                             (d * std::sqrt(4.0 * cbf.a_max * (d - cbf.d_min)));

    LieDecomposition out;
    out.drift = drift;
    out.coeff_i = g.dp / d;
    out.coeff_j = -out.coeff_i;
    return out;
}

BinaryConstraint pairwise_constraint(const PairwiseCbf& cbf, const AgentState& s_i,
                                     const AgentState& s_j) {
    const auto lie = lie_decomposition(cbf, s_i, s_j);
    const double h = eval_h(cbf, s_i, s_j);
    BinaryConstraint c;
    c.p = -lie.coeff_i;
    c.q = -lie.coeff_j;
    c.b = lie.drift + cbf.gamma * h * h * h;
    return c;
}

std::pair<HalfPlane, HalfPlane> partition(Vec2 p, Vec2 q, double b) {
    return {HalfPlane{p, b / 2.0}, HalfPlane{q, b / 2.0}};
}

AdmissibleSet admissible_set(const PairwiseCbf& cbf, const AgentState& self,
                             std::span<const AgentState> neighbor_states,
                             const PhysicalLimits& limits) {
    AdmissibleSet set;
    set.action_bound = limits.a_max;
    set.halfplanes.reserve(neighbor_states.size());

    for (const auto& other : neighbor_states) {
        const Vec2 dp = self.position - other.position;
        const double dist = dp.norm();
        if (dist <= 0.0)
            throw std::domain_error("admissible_set: coincident positions");

        if (dist <= cbf.d_min + kDomainEps) {
            // Already in violation territory; require acceleration away at
            // half throttle instead of the singular Lie constraint.
            set.halfplanes.push_back(HalfPlane{-(dp / dist), -limits.a_max / 2.0});
            continue;
        }

        const auto bc = pairwise_constraint(cbf, self, other);
        auto [own, theirs] = partition(bc.p, bc.q, bc.b);
        (void)theirs;
        // bc.p is unit-length up to rounding; store an exactly normalized row.
        const double n = own.normal.norm();
        set.halfplanes.push_back(HalfPlane{own.normal / n, own.offset / n});
    }
    return set;
}

}  // namespace dsa
