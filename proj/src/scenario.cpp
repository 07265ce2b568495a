#include "dsa/scenario.hpp"

#include <fstream>
#include <random>

#include "dsa/cbf.hpp"

namespace dsa {

using nlohmann::json;

void Scenario::validate() const {
    if (n < 1) throw ScenarioError("n must be >= 1");
    if (!(limits.a_max > 0)) throw ScenarioError("limits.a_max must be > 0");
    if (!(limits.v_max > 0)) throw ScenarioError("limits.v_max must be > 0");
    if (!(limits.sense_radius > 0)) throw ScenarioError("limits.sense_radius must be > 0");
    if (!(limits.d_min > 0)) throw ScenarioError("limits.d_min must be > 0");
    if (!(limits.eta > 0)) throw ScenarioError("limits.eta must be > 0");
    if (!(limits.d_min < limits.sense_radius))
        throw ScenarioError("limits.d_min must be < limits.sense_radius");
    if (!(gamma > 0)) throw ScenarioError("cbf.gamma must be > 0");
    if (m < 2) throw ScenarioError("cbf.m must be >= 2");
    if (!(duration > 0)) throw ScenarioError("duration must be > 0");
    if (step_count() < 1) throw ScenarioError("duration must cover at least one step");

    if (const auto* wp = std::get_if<WaypointConfig>(&controller)) {
        if (static_cast<int>(wp->plans.size()) != n)
            throw ScenarioError("controller.plans must have one plan per agent");
        if (!(wp->capture_radius > 0))
            throw ScenarioError("controller.capture_radius must be > 0");
    }
    if (const auto* ex = std::get_if<ExplicitInit>(&init)) {
        if (static_cast<int>(ex->states.size()) != n)
            throw ScenarioError("init.states must have one state per agent");
        for (const auto& st : ex->states)
            if (!st.finite()) throw ScenarioError("init.states contains non-finite values");
    }
}

namespace {

Vec2 vec2_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw ScenarioError("expected a [x, y] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

json vec2_to_json(Vec2 v) { return json::array({v.x, v.y}); }

}  // namespace

Scenario scenario_from_json(const json& j) {
    Scenario s;
    try {
        s.n = j.at("n").get<int>();
        const auto& jl = j.at("limits");
        s.limits.a_max = jl.at("a_max").get<double>();
        s.limits.v_max = jl.at("v_max").get<double>();
        s.limits.sense_radius = jl.at("sense_radius").get<double>();
        s.limits.d_min = jl.at("d_min").get<double>();
        s.limits.eta = jl.at("eta").get<double>();

        if (j.contains("cbf")) {
            s.gamma = j["cbf"].value("gamma", 1.0);
            s.m = j["cbf"].value("m", 3);
        }

        const auto& jc = j.at("controller");
        const std::string type = jc.at("type").get<std::string>();
        if (type == "reynolds") {
            ReynoldsConfig rc;
            rc.weights.w_s = jc.at("w_s").get<double>();
            rc.weights.w_c = jc.at("w_c").get<double>();
            rc.weights.w_al = jc.at("w_al").get<double>();
            s.controller = rc;
        } else if (type == "waypoint") {
            WaypointConfig wc;
            wc.gains.k_p = jc.value("k_p", 2.0);
            wc.gains.k_d = jc.value("k_d", 1.5);
            wc.capture_radius = jc.value("capture_radius", 0.1);
            for (const auto& plan : jc.at("plans")) {
                std::vector<Vec2> wps;
                for (const auto& w : plan) wps.push_back(vec2_from_json(w));
                wc.plans.push_back(std::move(wps));
            }
            s.controller = wc;
        } else {
            throw ScenarioError("controller.type must be 'reynolds' or 'waypoint'");
        }

        s.dsa_enabled = j.value("dsa_enabled", true);
        s.duration = j.at("duration").get<double>();

        const auto& ji = j.at("init");
        const std::string itype = ji.at("type").get<std::string>();
        if (itype == "uniform") {
            UniformInit ui;
            ui.pos_min = vec2_from_json(ji.at("pos_min"));
            ui.pos_max = vec2_from_json(ji.at("pos_max"));
            ui.vel_min = vec2_from_json(ji.at("vel_min"));
            ui.vel_max = vec2_from_json(ji.at("vel_max"));
            ui.seed = ji.value("seed", std::uint64_t{1});
            ui.h_margin = ji.value("h_margin", 0.5);
            s.init = ui;
        } else if (itype == "explicit") {
            ExplicitInit ei;
            for (const auto& st : ji.at("states")) {
                if (!st.is_array() || st.size() != 4)
                    throw ScenarioError("init.states entries must be [px, py, vx, vy]");
                ei.states.push_back(
                    {{st[0].get<double>(), st[1].get<double>()},
                     {st[2].get<double>(), st[3].get<double>()}});
            }
            s.init = ei;
        } else {
            throw ScenarioError("init.type must be 'uniform' or 'explicit'");
        }

        if (j.contains("output")) {
            const auto& jo = j["output"];
            s.output.trajectory_csv = jo.value("trajectory_csv", "");
            s.output.summary_path = jo.value("summary", "");
            s.output.min_dist_csv = jo.value("min_dist_csv", "");
        }
    } catch (const json::exception& e) {
        throw ScenarioError(std::string("scenario parse error: ") + e.what());
    }
    s.validate();
    return s;
}

json scenario_to_json(const Scenario& s) {
    json j;
    j["n"] = s.n;
    j["limits"] = {{"a_max", s.limits.a_max},
                   {"v_max", s.limits.v_max},
                   {"sense_radius", s.limits.sense_radius},
                   {"d_min", s.limits.d_min},
                   {"eta", s.limits.eta}};
    j["cbf"] = {{"gamma", s.gamma}, {"m", s.m}};
    if (const auto* rc = std::get_if<ReynoldsConfig>(&s.controller)) {
        j["controller"] = {{"type", "reynolds"},
                           {"w_s", rc->weights.w_s},
                           {"w_c", rc->weights.w_c},
                           {"w_al", rc->weights.w_al}};
    } else {
        const auto& wc = std::get<WaypointConfig>(s.controller);
        json plans = json::array();
        for (const auto& plan : wc.plans) {
            json p = json::array();
            for (Vec2 w : plan) p.push_back(vec2_to_json(w));
            plans.push_back(p);
        }
        j["controller"] = {{"type", "waypoint"},
                           {"k_p", wc.gains.k_p},
                           {"k_d", wc.gains.k_d},
                           {"capture_radius", wc.capture_radius},
                           {"plans", plans}};
    }
    j["dsa_enabled"] = s.dsa_enabled;
    j["duration"] = s.duration;
    if (const auto* ui = std::get_if<UniformInit>(&s.init)) {
        j["init"] = {{"type", "uniform"},
                     {"pos_min", vec2_to_json(ui->pos_min)},
                     {"pos_max", vec2_to_json(ui->pos_max)},
                     {"vel_min", vec2_to_json(ui->vel_min)},
                     {"vel_max", vec2_to_json(ui->vel_max)},
                     {"seed", ui->seed},
                     {"h_margin", ui->h_margin}};
    } else {
        const auto& ei = std::get<ExplicitInit>(s.init);
        json states = json::array();
        for (const auto& st : ei.states)
            states.push_back(json::array(
                {st.position.x, st.position.y, st.velocity.x, st.velocity.y}));
        j["init"] = {{"type", "explicit"}, {"states", states}};
    }
    j["output"] = {{"trajectory_csv", s.output.trajectory_csv},
                   {"summary", s.output.summary_path},
                   {"min_dist_csv", s.output.min_dist_csv}};
    return j;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open scenario file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ScenarioError(std::string("invalid scenario JSON: ") + e.what());
    }
    return scenario_from_json(j);
}

void apply_override(json& j, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ScenarioError("override must be key.path=value: " + assignment);
    const std::string key = assignment.substr(0, eq);
    const std::string raw = assignment.substr(eq + 1);

    json* node = &j;
    std::size_t start = 0;
    while (true) {
        const auto dot = key.find('.', start);
        const std::string part = key.substr(start, dot - start);
        if (part.empty()) throw ScenarioError("empty key component in override: " + key);
        if (dot == std::string::npos) {
            json value = json::parse(raw, nullptr, false);
            if (value.is_discarded()) value = raw;  // plain string
            (*node)[part] = value;
            return;
        }
        node = &(*node)[part];
        start = dot + 1;
    }
}

std::vector<std::string> demo_names() {
    return {"flocking", "flocking-nodsa", "waypoint"};
}

Scenario demo_scenario(const std::string& name, std::uint64_t seed) {
    if (name == "flocking" || name == "flocking-nodsa") {
        Scenario s;
        s.n = 15;
        s.limits = {5.0, 2.5, 4.0, 2.0, 0.1};
        s.gamma = 1.0;
        s.m = 3;
        s.controller = ReynoldsConfig{{3.0, 1.5, 0.5}};
        s.dsa_enabled = (name == "flocking");
        s.duration = 50.0;
        UniformInit ui;
        ui.pos_min = {-10, -10};
        ui.pos_max = {10, 10};
        ui.vel_min = {-1, -1};
        ui.vel_max = {1, 1};
        ui.seed = seed;
        s.init = ui;
        return s;
    }
    if (name == "waypoint") {
        Scenario s;
        s.n = 4;
        s.limits = {0.8, 0.2, 1.0, 0.2, 0.05};
        s.gamma = 1.0;
        s.m = 3;
        WaypointConfig wc;
        wc.gains = {2.0, 1.5};
        wc.capture_radius = 0.1;
        ExplicitInit ei;
        // Four agents at rest in a column; each visits one waypoint per
        // column, rows crossed so the straight-line paths intersect.
        const double row = 0.5;
        for (int k = 0; k < 4; ++k) {
            ei.states.push_back({{0.0, row * k}, {0.0, 0.0}});
            std::vector<Vec2> plan;
            for (int c = 0; c < 4; ++c)
                plan.push_back({1.0 + c, row * ((k + c) % 4)});
            wc.plans.push_back(std::move(plan));
        }
        s.controller = wc;
        s.init = ei;
        s.dsa_enabled = true;
        s.duration = 37.0;
        (void)seed;  // fully deterministic layout
        return s;
    }
    throw ScenarioError("unknown demo '" + name + "'; valid names: flocking, flocking-nodsa, waypoint");
}

std::vector<AgentState> initial_states(const Scenario& s) {
    const PairwiseCbf cbf{s.limits.a_max, s.limits.d_min, s.gamma};

    auto recoverable = [&](const std::vector<AgentState>& states, double h_min) {
        for (std::size_t i = 0; i < states.size(); ++i) {
            for (std::size_t k = i + 1; k < states.size(); ++k) {
                const double dist =
                    (states[i].position - states[k].position).norm();
                if (dist < s.limits.d_min) return false;
                if (eval_h(cbf, states[i], states[k]) < h_min) return false;
            }
        }
        return true;
    };

    if (const auto* ex = std::get_if<ExplicitInit>(&s.init)) {
        if (s.dsa_enabled && !recoverable(ex->states, 0.0))
            throw ScenarioError("explicit initial state is not recoverable");
        return ex->states;
    }

    const auto& ui = std::get<UniformInit>(s.init);
    std::mt19937_64 rng(ui.seed);
    std::uniform_real_distribution<double> px(ui.pos_min.x, ui.pos_max.x);
    std::uniform_real_distribution<double> py(ui.pos_min.y, ui.pos_max.y);
    std::uniform_real_distribution<double> vx(ui.vel_min.x, ui.vel_max.x);
    std::uniform_real_distribution<double> vy(ui.vel_min.y, ui.vel_max.y);

    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::vector<AgentState> states;
        states.reserve(s.n);
        for (int i = 0; i < s.n; ++i)
            states.push_back({{px(rng), py(rng)},
                              {vx(rng), vy(rng)}});
        if (recoverable(states, ui.h_margin)) return states;
    }
    throw ScenarioError("could not sample a recoverable initial state in 10000 attempts");
}

}  // namespace dsa
