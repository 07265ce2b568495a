#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dsa/controllers.hpp"
#include "dsa/oracles.hpp"

using namespace dsa;

namespace {
const PhysicalLimits kLimits{5.0, 2.5, 4.0, 2.0, 0.1};
const ReynoldsWeights kWeights{3.0, 1.5, 0.5};
}

TEST_CASE("reynolds: no neighbors") {
    CHECK(reynolds_action({{1, 2}, {3, 4}}, {}, kWeights, kLimits) == Vec2{0, 0});
}

TEST_CASE("reynolds: single neighbor, equal velocities") {
    const AgentState self{{0, 0}, {1, 1}};
    const std::vector<AgentState> nb{{{2, 0}, {1, 1}}};
    // a_s = (-2,0)/4, a_c = (2,0), a_al = 0
    const Vec2 a = reynolds_action(self, nb, kWeights, kLimits);
    CHECK(a.x == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(a.y == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("reynolds: symmetric ring cancels") {
    const AgentState self{{0, 0}, {0.5, -0.5}};
    std::vector<AgentState> nb;
    for (int k = 0; k < 8; ++k) {
        const double th = 2.0 * M_PI * k / 8.0;
        nb.push_back({{3.0 * std::cos(th), 3.0 * std::sin(th)}, {0.5, -0.5}});
    }
    CHECK(reynolds_action(self, nb, kWeights, kLimits).norm() <= 1e-12);
}

TEST_CASE("reynolds: output clipped to the a_max disk") {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> pos(-10.0, 10.0);
    for (int t = 0; t < 500; ++t) {
        AgentState self{{pos(rng), pos(rng)}, oracle::sample_disk(rng, 2.5)};
        std::vector<AgentState> nb;
        for (int k = 0; k < 5; ++k)
            nb.push_back({{pos(rng), pos(rng)}, oracle::sample_disk(rng, 2.5)});
        CHECK(reynolds_action(self, nb, kWeights, kLimits).norm() <=
              kLimits.a_max + 1e-12);
    }
}

TEST_CASE("reynolds: coincident neighbor repels along +x") {
    const AgentState self{{1, 1}, {0, 0}};
    const std::vector<AgentState> nb{{{1, 1}, {0, 0}}};
    const Vec2 a = reynolds_action(self, nb, kWeights, kLimits);
    CHECK(a.x > 0.0);
    CHECK(a.norm() <= kLimits.a_max + 1e-12);
}

TEST_CASE("waypoint: on last waypoint at rest") {
    const PhysicalLimits limits{0.8, 0.2, 1.0, 0.2, 0.05};
    WaypointPlan plan{{{5, 5}}, 0, 0.1};
    const AgentState self{{5, 5}, {0, 0}};
    const auto [a, next] = waypoint_action(self, plan, {}, limits);
    CHECK(next.completed());
    CHECK(a == Vec2{0, 0});
}

TEST_CASE("waypoint: clipped pull towards a distant waypoint") {
    const PhysicalLimits limits{0.8, 0.2, 1.0, 0.2, 0.05};
    WaypointPlan plan{{{10, 0}}, 0, 0.1};
    const auto [a, next] = waypoint_action({{0, 0}, {0, 0}}, plan,
                                           {1.0, 1.5}, limits);
    CHECK(next.current_index == 0);
    CHECK(a.x == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(a.y == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("waypoint: brakes after the final waypoint") {
    const PhysicalLimits limits{0.8, 0.2, 1.0, 0.2, 0.05};
    WaypointPlan plan{{{1, 0}}, 1, 0.1};  // already completed
    const auto [a, next] = waypoint_action({{2, 0}, {0.2, 0}}, plan,
                                           {2.0, 1.0}, limits);
    CHECK(next.completed());
    CHECK(a.x == doctest::Approx(-0.2).epsilon(1e-12));
    CHECK(a.y == 0.0);
}

TEST_CASE("waypoint: empty plan behaves as completed") {
    const PhysicalLimits limits{0.8, 0.2, 1.0, 0.2, 0.05};
    const auto [a, next] = waypoint_action({{0, 0}, {0.1, 0}}, WaypointPlan{},
                                           {2.0, 1.5}, limits);
    CHECK(next.completed());
    CHECK(a.x < 0.0);
}

TEST_CASE("waypoint: progression is monotone over a run") {
    const PhysicalLimits limits{0.8, 0.2, 1.0, 0.2, 0.05};
    WaypointPlan plan{{{1, 0}, {2, 0.5}, {3, 0}}, 0, 0.1};
    AgentState self{{0, 0}, {0, 0}};
    int last_index = 0;
    for (int step = 0; step < 2000; ++step) {
        auto [a, next] = waypoint_action(self, plan, {2.0, 1.5}, limits);
        CHECK(next.current_index >= last_index);
        last_index = next.current_index;
        plan = next;
        self = step_dynamics(self, a, limits);
    }
    CHECK(plan.completed());
}
