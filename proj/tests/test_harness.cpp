#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dsa/harness.hpp"

using namespace dsa;
using nlohmann::json;

namespace {

Scenario two_agent_scenario(Vec2 p0, Vec2 v0, Vec2 p1, Vec2 v1, double duration) {
    json j = {
        {"n", 2},
        {"limits", {{"a_max", 5.0}, {"v_max", 2.5}, {"sense_radius", 4.0},
                    {"d_min", 2.0}, {"eta", 0.1}}},
        {"cbf", {{"gamma", 1.0}, {"m", 3}}},
        {"controller", {{"type", "reynolds"}, {"w_s", 3.0}, {"w_c", 1.5}, {"w_al", 0.5}}},
        {"dsa_enabled", true},
        {"duration", duration},
        {"init", {{"type", "explicit"},
                  {"states", json::array({json::array({p0.x, p0.y, v0.x, v0.y}),
                                          json::array({p1.x, p1.y, v1.x, v1.y})})}}}};
    return scenario_from_json(j);
}

std::string trajectory_string(const RunSummary& s, double eta) {
    std::ostringstream out;
    write_trajectory_csv(out, s, eta);
    return out.str();
}

}  // namespace

TEST_CASE("run: single agent never switches") {
    auto s = two_agent_scenario({0, 0}, {0, 0}, {100, 0}, {0, 0}, 2.0);
    s.n = 1;
    std::get<ExplicitInit>(s.init).states.resize(1);
    const auto summary = run(s);
    CHECK(!summary.aborted);
    CHECK(summary.switch_count == 0);
    CHECK(summary.mean_bc_fraction == 0.0);
    CHECK(std::isinf(summary.min_pair_distance));
}

TEST_CASE("run: agents outside sensing range stay idle") {
    const auto s = two_agent_scenario({0, 0}, {0, 0}, {10, 0}, {0, 0}, 2.0);
    const auto summary = run(s);
    CHECK(!summary.aborted);
    CHECK(summary.switch_count == 0);
    REQUIRE(!summary.trajectory.empty());
    const auto& last = summary.trajectory.back();
    CHECK(last.agents[0].position == Vec2{0, 0});
    CHECK(last.agents[1].position == Vec2{10, 0});
    CHECK(summary.min_pair_distance == 10.0);
}

TEST_CASE("run: one record per step including step zero") {
    const auto s = two_agent_scenario({0, 0}, {0, 0}, {10, 0}, {0, 0}, 1.0);
    const auto summary = run(s);
    REQUIRE(summary.trajectory.size() == 11);
    CHECK(summary.trajectory.front().step == 0);
    CHECK(summary.trajectory.front().agents[0].action == Vec2{0, 0});
    CHECK(summary.trajectory.back().step == 10);
}

TEST_CASE("run: deterministic trajectories") {
    const auto s = demo_scenario("flocking", 4);
    auto copy = s;
    copy.duration = 5.0;
    const auto a = run(copy);
    const auto b = run(copy);
    CHECK(trajectory_string(a, copy.limits.eta) == trajectory_string(b, copy.limits.eta));
}

TEST_CASE("run: serial and parallel agent loops agree exactly") {
    auto s = demo_scenario("flocking", 2);
    s.duration = 5.0;
    const auto a = run(s, {ExecMode::Serial, true});
    const auto b = run(s, {ExecMode::Parallel, true});
    CHECK(trajectory_string(a, s.limits.eta) == trajectory_string(b, s.limits.eta));
    CHECK(a.min_pair_distance == b.min_pair_distance);
    CHECK(a.switch_count == b.switch_count);
}

TEST_CASE("run: disabling DSA changes nothing when FSC never fires") {
    // two neighbors flying directly apart
    auto with_dsa = two_agent_scenario({0, 0}, {-2.5, 0}, {3.9, 0}, {2.5, 0}, 3.0);
    auto without = with_dsa;
    without.dsa_enabled = false;
    const auto a = run(with_dsa);
    const auto b = run(without);
    CHECK(a.switch_count == 0);
    CHECK(trajectory_string(a, 0.1) == trajectory_string(b, 0.1));
}

TEST_CASE("run: DSA intervenes on a head-on pair and prevents the collision") {
    // approaching but recoverable: h > 0 at start
    const auto s = two_agent_scenario({0, 0}, {1.5, 0}, {3.6, 0}, {-1.5, 0}, 6.0);
    const auto summary = run(s);
    CHECK(!summary.aborted);
    CHECK(summary.violation_count == 0);
    CHECK(summary.min_pair_distance >= s.limits.d_min - 1e-9);
    CHECK(summary.switch_count > 0);
    CHECK(summary.mean_bc_fraction > 0.0);
}

TEST_CASE("trajectory csv: header and field count") {
    const auto s = two_agent_scenario({0, 0}, {0, 0}, {10, 0}, {0, 0}, 0.5);
    const auto summary = run(s);
    std::istringstream in(trajectory_string(summary, s.limits.eta));
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "step,time,agent_id,px,py,vx,vy,ax,ay,mode");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        CHECK(std::count(line.begin(), line.end(), ',') == 9);
    }
    CHECK(rows == 2 * 6);  // 2 agents, steps 0..5
}
