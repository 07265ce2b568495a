#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dsa/baseline.hpp"
#include "dsa/oracles.hpp"

using namespace dsa;

namespace {
const PhysicalLimits kLimits{5.0, 2.5, 4.0, 2.0, 0.1};
const PairwiseCbf kCbf{5.0, 2.0, 1.0};
}

TEST_CASE("build_objective: empty sum") {
    const auto obj = build_objective(kCbf, {{0, 0}, {0, 0}}, {});
    CHECK(obj.gradient == Vec2{0, 0});
    CHECK(obj.constant == 0.0);
}

TEST_CASE("build_objective: single neighbor gives pure repulsion direction") {
    const AgentState self{{0, 0}, {0.3, -0.2}};
    const std::vector<AgentState> nb{{{3, 0}, {-0.5, 0.1}}};
    const auto obj = build_objective(kCbf, self, nb);
    // gradient parallel to dp = (-3, 0)
    CHECK(obj.gradient.x < 0.0);
    CHECK(obj.gradient.y == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("build_objective: symmetric neighbors cancel") {
    const AgentState self{{0, 0}, {0, 0}};
    const std::vector<AgentState> nb{{{3, 0}, {0, 0}}, {{-3, 0}, {0, 0}}};
    const auto obj = build_objective(kCbf, self, nb);
    CHECK(obj.gradient.norm() <= 1e-12);
}

TEST_CASE("build_objective: rejects neighbors inside the domain boundary") {
    const AgentState self{{0, 0}, {0, 0}};
    const std::vector<AgentState> nb{{{2.0, 0}, {0, 0}}};
    CHECK_THROWS_AS(build_objective(kCbf, self, nb), std::domain_error);
}

TEST_CASE("solve_bc: unconstrained disk maximum") {
    AdmissibleSet adm;
    adm.action_bound = 5.0;
    const auto sol = solve_bc({{1, 0}, 0.0}, adm);
    CHECK(sol.status == LpStatus::Optimal);
    CHECK(sol.action.x == doctest::Approx(5.0));
    CHECK(sol.action.y == doctest::Approx(0.0));
}

TEST_CASE("solve_bc: chord optimum with documented tie-break") {
    AdmissibleSet adm;
    adm.action_bound = 5.0;
    adm.halfplanes.push_back({{1, 0}, 1.0});
    const auto sol = solve_bc({{1, 0}, 0.0}, adm);
    CHECK(sol.status == LpStatus::Optimal);
    CHECK(sol.action.x == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sol.action.y == doctest::Approx(-std::sqrt(24.0)).epsilon(1e-12));
}

TEST_CASE("solve_bc: zero gradient returns the min-norm feasible point") {
    AdmissibleSet adm;
    adm.action_bound = 5.0;
    SUBCASE("origin feasible") {
        adm.halfplanes.push_back({{1, 0}, 1.0});
        const auto sol = solve_bc({}, adm);
        CHECK(sol.status == LpStatus::FeasibleFallback);
        CHECK(sol.action == Vec2{0, 0});
    }
    SUBCASE("origin cut off") {
        adm.halfplanes.push_back({{-1, 0}, -2.0});  // requires x >= 2
        const auto sol = solve_bc({}, adm);
        CHECK(sol.status == LpStatus::FeasibleFallback);
        CHECK(sol.action.x == doctest::Approx(2.0).epsilon(1e-9));
        CHECK(sol.action.y == doctest::Approx(0.0).epsilon(1e-9));
    }
}

TEST_CASE("solve_bc: infeasible set falls back to minimax violation") {
    AdmissibleSet adm;
    adm.action_bound = 1.0;
    adm.halfplanes.push_back({{1, 0}, -3.0});   // x <= -3
    adm.halfplanes.push_back({{-1, 0}, -3.0});  // x >= 3
    const auto sol = solve_bc({{0, 1}, 0.0}, adm);
    CHECK(sol.status == LpStatus::InfeasibleFallback);
    CHECK(sol.action.norm() <= 1.0 + 1e-9);
    // equal violation of both constraints: x = 0
    CHECK(sol.action.x == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("solve_bc: random instances against the grid oracle") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> slack(0.0, 2.5);
    std::uniform_int_distribution<int> n_hp(0, 6);
    const double radius = 5.0;
    for (int t = 0; t < 100; ++t) {
        AdmissibleSet adm;
        adm.action_bound = radius;
        const Vec2 witness = oracle::sample_disk(rng, radius);
        const int k = n_hp(rng);
        for (int c = 0; c < k; ++c) {
            Vec2 nrm{unit(rng), unit(rng)};
            if (nrm.norm_sq() < 1e-6) nrm = {1, 0};
            nrm = nrm.normalized();
            adm.halfplanes.push_back({nrm, nrm.dot(witness) + slack(rng)});
        }
        const BcObjective obj{{unit(rng) * 3.0, unit(rng) * 3.0}, 0.0};
        const auto sol = solve_bc(obj, adm);
        REQUIRE(adm.contains(sol.action, 1e-9));
        const auto grid = oracle::grid_best_objective(obj.gradient, adm, 400);
        if (grid.feasible)
            CHECK(obj.gradient.dot(sol.action) >=
                  grid.best_objective - grid.increment);
    }
}

TEST_CASE("solve_bc: deterministic") {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int t = 0; t < 50; ++t) {
        AdmissibleSet adm;
        adm.action_bound = 5.0;
        for (int c = 0; c < 4; ++c) {
            const Vec2 nrm = Vec2{unit(rng), unit(rng)}.normalized();
            adm.halfplanes.push_back({nrm, unit(rng) * 3.0});
        }
        const BcObjective obj{{unit(rng), unit(rng)}, 0.0};
        const auto s1 = solve_bc(obj, adm);
        const auto s2 = solve_bc(obj, adm);
        CHECK(s1.action.x == s2.action.x);
        CHECK(s1.action.y == s2.action.y);
        CHECK(s1.status == s2.status);
        CHECK(s1.active_constraints == s2.active_constraints);
    }
}

TEST_CASE("solve_bc: accelerates away from a single nearby neighbor") {
    // small h, zero drift: stationary pair just outside the boundary
    const AgentState self{{2.1, 0}, {0, 0}};
    const std::vector<AgentState> nb{{{0, 0}, {0, 0}}};
    const auto adm = admissible_set(kCbf, self, nb, kLimits);
    const auto obj = build_objective(kCbf, self, nb);
    const auto sol = solve_bc(obj, adm);
    const Vec2 dp_unit{1, 0};  // dp = self - neighbor, normalized
    CHECK(sol.action.dot(dp_unit) > 0.0);
}
