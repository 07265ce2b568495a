#include "dsa/controllers.hpp"

#include <cmath>

namespace dsa {

namespace {
// Separation magnitude substituted for a coincident neighbor, along +x.
constexpr double kCoincidentRepulsion = 1e3;
constexpr double kCoincidentDist = 1e-12;
}  // namespace

Vec2 reynolds_action(const AgentState& self,
                     std::span<const AgentState> neighbor_states,
                     const ReynoldsWeights& weights, const PhysicalLimits& limits) {
    if (neighbor_states.empty()) return {0.0, 0.0};

    Vec2 centroid{0, 0};
    Vec2 mean_vel{0, 0};
    Vec2 separation{0, 0};
    for (const auto& other : neighbor_states) {
        centroid += other.position;
        mean_vel += other.velocity;
        const Vec2 dp = self.position - other.position;
        const double d2 = dp.norm_sq();
        if (d2 < kCoincidentDist * kCoincidentDist) {
            separation += Vec2{kCoincidentRepulsion, 0.0};
        } else {
            separation += dp / d2;
        }
    }
    const double n = static_cast<double>(neighbor_states.size());
    const Vec2 cohesion = centroid / n - self.position;
    const Vec2 alignment = mean_vel / n - self.velocity;

    const Vec2 a = separation * weights.w_s + cohesion * weights.w_c +
                   alignment * weights.w_al;
    return clip_norm(a, limits.a_max);
}

std::pair<Vec2, WaypointPlan> waypoint_action(const AgentState& self,
                                              WaypointPlan plan,
                                              const WaypointGains& gains,
                                              const PhysicalLimits& limits) {
    while (!plan.completed() &&
           (plan.waypoints[plan.current_index] - self.position).norm() <
               plan.capture_radius) {
        ++plan.current_index;
    }
    if (plan.completed()) {
        // Brake to rest at the final configuration.
        return {clip_norm(self.velocity * -gains.k_d, limits.a_max), plan};
    }
    const Vec2 to_wp = plan.waypoints[plan.current_index] - self.position;
    const Vec2 a = to_wp * gains.k_p - self.velocity * gains.k_d;
    return {clip_norm(a, limits.a_max), plan};
}

}  // namespace dsa
