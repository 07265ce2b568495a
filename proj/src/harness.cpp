#include "dsa/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <ostream>

#include "dsa/baseline.hpp"
#include "dsa/cbf.hpp"

namespace dsa {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Non-throwing barrier value for metrics; -inf on coincident positions.
double metric_h(const PairwiseCbf& cbf, const AgentState& a, const AgentState& b) {
    if ((a.position - b.position).norm_sq() <= 0.0) return -kInf;
    return eval_h(cbf, a, b);
}

struct PairStats {
    double min_dist = kInf;
    double min_h = kInf;
};

PairStats pair_stats(const std::vector<AgentState>& agents, const PairwiseCbf& cbf) {
    PairStats st;
    for (std::size_t i = 0; i < agents.size(); ++i) {
        for (std::size_t j = i + 1; j < agents.size(); ++j) {
            st.min_dist = std::min(
                st.min_dist, (agents[i].position - agents[j].position).norm());
            st.min_h = std::min(st.min_h, metric_h(cbf, agents[i], agents[j]));
        }
    }
    return st;
}

struct AgentOutcome {
    Vec2 action;
    DmState dm;
    WaypointPlan plan;
    bool lp_fallback = false;
    bool failed = false;
    std::string error;
};

void format_double(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    out += buf;
}

}  // namespace

RunSummary run(const Scenario& scenario, const RunOptions& options) {
    scenario.validate();
    const auto t0 = std::chrono::steady_clock::now();

    const PhysicalLimits limits = scenario.limits;
    const PairwiseCbf cbf{limits.a_max, limits.d_min, scenario.gamma};
    const SwitchParams params{scenario.m, limits.eta};

    MasState mas;
    mas.agents = initial_states(scenario);

    const int n = scenario.n;
    std::vector<DmState> dms(n);
    std::vector<WaypointPlan> plans(n);
    const auto* wp_cfg = std::get_if<WaypointConfig>(&scenario.controller);
    if (wp_cfg) {
        for (int i = 0; i < n; ++i)
            plans[i] = WaypointPlan{wp_cfg->plans[i], 0, wp_cfg->capture_radius};
    }
    const auto* rey_cfg = std::get_if<ReynoldsConfig>(&scenario.controller);

    RunSummary summary;
    summary.bc_fraction.assign(n, 0.0);
    std::vector<int> bc_steps(n, 0);

    const int total_steps = scenario.step_count();
    summary.steps = total_steps;
    summary.min_pair_distance = kInf;
    summary.min_pair_h = kInf;

    auto record_step = [&](const std::vector<Vec2>& actions) {
        const auto st = pair_stats(mas.agents, cbf);
        summary.min_pair_distance = std::min(summary.min_pair_distance, st.min_dist);
        summary.min_pair_h = std::min(summary.min_pair_h, st.min_h);
        if (st.min_dist < limits.d_min) ++summary.violation_count;

        StepRecord rec;
        rec.step = mas.step_index;
        rec.time = mas.time;
        rec.min_pair_distance = st.min_dist;
        rec.min_pair_h = st.min_h;
        rec.agents.resize(n);
        for (int i = 0; i < n; ++i) {
            rec.agents[i] = {mas.agents[i].position, mas.agents[i].velocity,
                             actions[i], dms[i].mode};
            if (dms[i].mode == Mode::BC) ++rec.bc_count;
        }
        if (options.record_trajectory) summary.trajectory.push_back(std::move(rec));
    };

    record_step(std::vector<Vec2>(n));  // step 0: initial state, zero actions

    std::vector<AgentOutcome> outcomes(n);
    for (int step = 1; step <= total_steps && !summary.aborted; ++step) {
        const MasState& snapshot = mas;  // read-only within the agent loop

        const bool parallel = options.exec == ExecMode::Parallel;
#pragma omp parallel for schedule(static) if (parallel)
        for (int i = 0; i < n; ++i) {
            AgentOutcome& out = outcomes[i];
            out = AgentOutcome{};
            try {
                const auto nb_idx = neighbors(snapshot, i, limits);
                const auto nb = gather_states(snapshot, nb_idx);
                const AgentState& self = snapshot.agents[i];

                DmState dm = dms[i];
                if (scenario.dsa_enabled) {
                    const bool f = fsc(cbf, self, nb, limits, params);
                    const bool r = rsc(cbf, self, nb, limits, params);
                    dm = dm_step(dm, f, r, step);
                }
                out.dm = dm;
                out.plan = plans[i];

                if (dm.mode == Mode::BC) {
                    const auto adm = admissible_set(cbf, self, nb, limits);
                    std::vector<AgentState> in_domain;
                    for (const auto& o : nb)
                        if ((self.position - o.position).norm() >
                            cbf.d_min + kDomainEps)
                            in_domain.push_back(o);
                    const auto obj = build_objective(cbf, self, in_domain);
                    const auto sol = solve_bc(obj, adm);
                    out.action = sol.action;
                    out.lp_fallback = sol.status == LpStatus::InfeasibleFallback;
                } else if (rey_cfg) {
                    out.action = reynolds_action(self, nb, rey_cfg->weights, limits);
                } else {
                    auto [a, plan] = waypoint_action(self, plans[i], wp_cfg->gains, limits);
                    out.action = a;
                    out.plan = std::move(plan);
                }
            } catch (const std::exception& e) {
                out.failed = true;
                out.error = e.what();
            }
        }

        std::vector<Vec2> actions(n);
        for (int i = 0; i < n; ++i) {
            if (outcomes[i].failed) {
                summary.aborted = true;
                summary.abort_reason = outcomes[i].error;
                break;
            }
            if (outcomes[i].dm.mode != dms[i].mode) ++summary.switch_count;
            dms[i] = outcomes[i].dm;
            plans[i] = outcomes[i].plan;
            if (outcomes[i].lp_fallback) ++summary.lp_fallback_count;
            if (dms[i].mode == Mode::BC) ++bc_steps[i];
            actions[i] = outcomes[i].action;
        }
        if (summary.aborted) break;

        for (int i = 0; i < n; ++i)
            mas.agents[i] = step_dynamics(mas.agents[i], actions[i], limits);
        mas.step_index = step;
        mas.time = step * limits.eta;

        for (const auto& a : mas.agents) {
            if (!a.finite()) {
                summary.aborted = true;
                summary.abort_reason = "non-finite agent state at step " +
                                       std::to_string(step);
                break;
            }
        }
        if (summary.aborted) break;

        record_step(actions);
    }

    for (int i = 0; i < n; ++i)
        summary.bc_fraction[i] = static_cast<double>(bc_steps[i]) / total_steps;
    summary.mean_bc_fraction =
        std::accumulate(summary.bc_fraction.begin(), summary.bc_fraction.end(), 0.0) / n;
    if (wp_cfg) {
        for (const auto& p : plans)
            if (!p.completed()) summary.plans_completed = false;
    }

    summary.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return summary;
}

double mean_bc_fraction(const RunSummary& summary) {
    return summary.mean_bc_fraction;
}

void write_trajectory_csv(std::ostream& out, const RunSummary& summary, double eta) {
    out << "step,time,agent_id,px,py,vx,vy,ax,ay,mode\n";
    std::string line;
    for (const auto& rec : summary.trajectory) {
        for (std::size_t i = 0; i < rec.agents.size(); ++i) {
            const auto& a = rec.agents[i];
            line.clear();
            line += std::to_string(rec.step);
            line += ',';
            format_double(line, rec.step * eta);
            line += ',';
            line += std::to_string(i);
            for (double v : {a.position.x, a.position.y, a.velocity.x, a.velocity.y,
                             a.action.x, a.action.y}) {
                line += ',';
                format_double(line, v);
            }
            line += ',';
            line += (a.mode == Mode::BC ? '1' : '0');
            line += '\n';
            out << line;
        }
    }
}

void write_min_distance_csv(std::ostream& out, const RunSummary& summary,
                            double eta, const PhysicalLimits& limits) {
    (void)limits;
    out << "step,time,agent_id,min_neighbor_dist\n";
    std::string line;
    for (const auto& rec : summary.trajectory) {
        const int n = static_cast<int>(rec.agents.size());
        for (int i = 0; i < n; ++i) {
            double best = kInf;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                best = std::min(best, (rec.agents[i].position -
                                       rec.agents[j].position).norm());
            }
            line.clear();
            line += std::to_string(rec.step);
            line += ',';
            format_double(line, rec.step * eta);
            line += ',';
            line += std::to_string(i);
            line += ',';
            format_double(line, best);
            line += '\n';
            out << line;
        }
    }
}

void write_summary_text(std::ostream& out, const RunSummary& summary) {
    auto num = [](double v) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.9g", v);
        return std::string(buf);
    };
    out << "steps: " << summary.steps << '\n'
        << "min_pair_distance: " << num(summary.min_pair_distance) << '\n'
        << "min_pair_h: " << num(summary.min_pair_h) << '\n'
        << "violation_count: " << summary.violation_count << '\n'
        << "mean_bc_fraction: " << num(summary.mean_bc_fraction) << '\n';
    out << "bc_fraction_per_agent:";
    for (double f : summary.bc_fraction) out << ' ' << num(f);
    out << '\n'
        << "switch_count: " << summary.switch_count << '\n'
        << "lp_fallback_count: " << summary.lp_fallback_count << '\n'
        << "plans_completed: " << (summary.plans_completed ? "true" : "false") << '\n'
        << "aborted: " << (summary.aborted ? "true" : "false") << '\n';
    if (summary.aborted) out << "abort_reason: " << summary.abort_reason << '\n';
    out << "wall_time_s: " << num(summary.wall_time_s) << '\n';
}

void write_outputs(const Scenario& scenario, const RunSummary& summary) {
    auto open = [](const std::string& path) {
        std::ofstream f(path);
        if (!f) throw std::ios_base::failure("cannot open output file: " + path);
        return f;
    };
    if (!scenario.output.trajectory_csv.empty()) {
        auto f = open(scenario.output.trajectory_csv);
        write_trajectory_csv(f, summary, scenario.limits.eta);
        if (!f) throw std::ios_base::failure("write failed: " + scenario.output.trajectory_csv);
    }
    if (!scenario.output.min_dist_csv.empty()) {
        auto f = open(scenario.output.min_dist_csv);
        write_min_distance_csv(f, summary, scenario.limits.eta, scenario.limits);
    }
    if (!scenario.output.summary_path.empty()) {
        auto f = open(scenario.output.summary_path);
        write_summary_text(f, summary);
    }
}

}  // namespace dsa
