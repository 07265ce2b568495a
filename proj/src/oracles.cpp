#include "dsa/oracles.hpp"

#include <cmath>
#include <ostream>

namespace dsa::oracle {

AgentState midpoint_substep(const AgentState& state, Vec2 action, double eta,
                            int substeps) {
    const double dt = eta / substeps;
    AgentState s = state;
    for (int k = 0; k < substeps; ++k) {
        s.position += (s.velocity + action * (0.5 * dt)) * dt;
        s.velocity += action * dt;
    }
    return s;
}

AgentState exact_step_unclipped(const AgentState& state, Vec2 action, double dt) {
    AgentState s;
    s.position = state.position + state.velocity * dt + action * (0.5 * dt * dt);
    s.velocity = state.velocity + action * dt;
    return s;
}

double finite_diff_hdot(const PairwiseCbf& cbf, const AgentState& s_i,
                        const AgentState& s_j, Vec2 a_i, Vec2 a_j, double delta) {
    const double h_plus = eval_h(cbf, exact_step_unclipped(s_i, a_i, delta),
                                 exact_step_unclipped(s_j, a_j, delta));
    const double h_minus = eval_h(cbf, exact_step_unclipped(s_i, a_i, -delta),
                                  exact_step_unclipped(s_j, a_j, -delta));
    return (h_plus - h_minus) / (2.0 * delta);
}

GridResult grid_best_objective(Vec2 gradient, const AdmissibleSet& admissible,
                               int resolution) {
    GridResult res;
    const double radius = admissible.action_bound;
    const double cell = 2.0 * radius / (resolution - 1);
    res.increment = gradient.norm() * cell * std::sqrt(2.0);
    for (int iy = 0; iy < resolution; ++iy) {
        const double y = -radius + iy * cell;
        for (int ix = 0; ix < resolution; ++ix) {
            const Vec2 u{-radius + ix * cell, y};
            if (!admissible.contains(u, 0.0)) continue;
            const double f = gradient.dot(u);
            if (!res.feasible || f > res.best_objective) {
                res.feasible = true;
                res.best_objective = f;
                res.best_point = u;
            }
        }
    }
    return res;
}

Vec2 sample_disk(std::mt19937_64& rng, double radius) {
    std::uniform_real_distribution<double> coord(-radius, radius);
    for (;;) {
        const Vec2 v{coord(rng), coord(rng)};
        if (v.norm_sq() <= radius * radius) return v;
    }
}

std::pair<AgentState, AgentState> sample_pair(std::mt19937_64& rng,
                                              const PhysicalLimits& limits,
                                              const PairwiseCbf& cbf,
                                              double min_h, double gap,
                                              double dist_max) {
    std::uniform_real_distribution<double> dist(cbf.d_min + gap, dist_max);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    for (;;) {
        const double d = dist(rng);
        const double th = angle(rng);
        AgentState a{{0.0, 0.0}, sample_disk(rng, limits.v_max)};
        AgentState b{{d * std::cos(th), d * std::sin(th)},
                     sample_disk(rng, limits.v_max)};
        if (eval_h(cbf, a, b) >= min_h) return {a, b};
    }
}

namespace {

int suite_partition(std::ostream& out) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> coef(-5.0, 5.0);
    int failures = 0;
    for (int t = 0; t < 100000; ++t) {
        const Vec2 p{coef(rng), coef(rng)};
        const Vec2 q{coef(rng), coef(rng)};
        const double b = coef(rng);
        const Vec2 ui{coef(rng), coef(rng)};
        const Vec2 uj{coef(rng), coef(rng)};
        const auto [hi, hj] = partition(p, q, b);
        if (hi.satisfied(ui) && hj.satisfied(uj)) {
            if (p.dot(ui) + q.dot(uj) > b) ++failures;
        }
    }
    out << "partition soundness: " << failures << " counterexamples in 100000 samples\n";
    return failures == 0 ? 0 : 1;
}

int suite_liederiv(std::ostream& out) {
    const PhysicalLimits limits{5.0, 2.5, 4.0, 2.0, 0.1};
    const PairwiseCbf cbf{limits.a_max, limits.d_min, 1.0};
    std::mt19937_64 rng(7);
    int failures = 0;
    double worst = 0.0;
    for (int t = 0; t < 10000; ++t) {
        const auto [si, sj] = sample_pair(rng, limits, cbf, 0.0, 0.05, limits.sense_radius);
        const Vec2 ai = sample_disk(rng, limits.a_max);
        const Vec2 aj = sample_disk(rng, limits.a_max);
        const auto lie = lie_decomposition(cbf, si, sj);
        const double analytic = lie.drift + lie.coeff_i.dot(ai) + lie.coeff_j.dot(aj);
        const double fd = finite_diff_hdot(cbf, si, sj, ai, aj, 1e-7 * limits.eta);
        const double err = std::abs(analytic - fd);
        const double rel = err / std::max(1e-6, std::abs(fd));
        worst = std::max(worst, std::min(rel, err));
        if (rel > 1e-4 && err > 1e-6) ++failures;
    }
    out << "lie derivative vs finite differences: " << failures
        << " mismatches in 10000 states (worst " << worst << ")\n";
    return failures == 0 ? 0 : 1;
}

int suite_lp_grid(std::ostream& out) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> slackd(0.0, 2.5);
    std::uniform_int_distribution<int> n_hp(0, 6);
    const double radius = 5.0;
    int failures = 0;
    for (int t = 0; t < 200; ++t) {
        AdmissibleSet adm;
        adm.action_bound = radius;
        const Vec2 witness = sample_disk(rng, radius);
        const int k = n_hp(rng);
        for (int c = 0; c < k; ++c) {
            Vec2 nrm{unit(rng), unit(rng)};
            if (nrm.norm_sq() < 1e-6) nrm = {1.0, 0.0};
            nrm = nrm.normalized();
            adm.halfplanes.push_back({nrm, nrm.dot(witness) + slackd(rng)});
        }
        const BcObjective obj{{unit(rng) * 3.0, unit(rng) * 3.0}, 0.0};
        const auto sol = solve_bc(obj, adm);
        if (!adm.contains(sol.action, 1e-9)) {
            ++failures;
            continue;
        }
        const auto grid = grid_best_objective(obj.gradient, adm, 400);
        if (grid.feasible &&
            obj.gradient.dot(sol.action) < grid.best_objective - grid.increment)
            ++failures;
    }
    out << "bc solver vs 400x400 grid: " << failures << " failures in 200 instances\n";
    return failures == 0 ? 0 : 1;
}

int suite_euler(std::ostream& out) {
    const PhysicalLimits limits{5.0, 100.0, 4.0, 2.0, 0.1};  // clip inactive
    std::mt19937_64 rng(5);
    int failures = 0;
    for (int t = 0; t < 1000; ++t) {
        const AgentState s{{sample_disk(rng, 10.0)}, {sample_disk(rng, 2.5)}};
        const Vec2 a = sample_disk(rng, limits.a_max);
        const auto exact = step_dynamics(s, a, limits);
        const auto euler = midpoint_substep(s, a, limits.eta, 1000);
        if ((exact.position - euler.position).norm() > 1e-6) ++failures;
    }
    out << "exact step vs 1000-substep midpoint: " << failures << " failures in 1000 states\n";
    return failures == 0 ? 0 : 1;
}

}  // namespace

int run_suite(const std::string& name, std::ostream& out) {
    if (name == "partition") return suite_partition(out);
    if (name == "liederiv") return suite_liederiv(out);
    if (name == "lp-grid") return suite_lp_grid(out);
    if (name == "euler") return suite_euler(out);
    out << "unknown oracle suite '" << name
        << "'; valid names: partition, liederiv, lp-grid, euler\n";
    return 2;
}

}  // namespace dsa::oracle
