#include "reosched/json_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "reosched/errors.hpp"

namespace reosched {

namespace {
using Json = nlohmann::ordered_json;

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IngestionError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& text) {
    // Write-then-rename so partially written outputs are never observed.
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary);
        if (!f) throw IngestionError("cannot open '" + tmp + "' for writing");
        f << text;
    }
    std::rename(tmp.c_str(), path.c_str());
}

const Json& need(const Json& j, const char* key, const std::string& where) {
    const auto it = j.find(key);
    if (it == j.end()) throw SchemaError(std::string("missing field '") + key + "' in " + where);
    return *it;
}

} // namespace

const char* formulation_name(Formulation f) {
    switch (f) {
        case Formulation::Eossp: return "eossp";
        case Formulation::Reossp: return "reossp";
        case Formulation::Rhp: return "rhp";
    }
    return "?";
}

Formulation formulation_from_name(const std::string& name) {
    if (name == "eossp") return Formulation::Eossp;
    if (name == "reossp") return Formulation::Reossp;
    if (name == "rhp") return Formulation::Rhp;
    throw SchemaError("unknown formulation '" + name + "'");
}

const char* milp_status_name(MilpStatus s) {
    switch (s) {
        case MilpStatus::Optimal: return "optimal";
        case MilpStatus::FeasibleLimitHit: return "feasible_limit_hit";
        case MilpStatus::Infeasible: return "infeasible";
        case MilpStatus::Unbounded: return "unbounded";
        case MilpStatus::NoSolutionLimitHit: return "no_solution_limit_hit";
    }
    return "?";
}

std::string schedule_to_json(const Schedule& sched, std::uint64_t scenario_seed) {
    Json j;
    j["schema_version"] = 1;
    j["formulation"] = formulation_name(sched.formulation);
    j["scenario_seed"] = scenario_seed;
    j["stage_begin"] = sched.stage_begin;
    j["stage_end"] = sched.stage_end;
    j["steps_per_stage"] = sched.steps_per_stage;
    j["objective_z"] = sched.objective_z;
    j["merit_gb"] = sched.merit_z_gb;
    j["satellites"] = Json::array();
    for (const SatellitePlan& plan : sched.sats) {
        Json sat;
        sat["maneuvers"] = Json::array();
        for (const Maneuver& mv : plan.maneuvers) {
            sat["maneuvers"].push_back(Json{{"stage", mv.stage},
                                            {"from_slot", mv.from_slot + 1},
                                            {"to_slot", mv.to_slot + 1},
                                            {"dv_mps", mv.dv_mps}});
        }
        sat["stages"] = Json::array();
        for (std::size_t si = 0; si < plan.stages.size(); ++si) {
            const StageTasks& st = plan.stages[si];
            Json stage;
            stage["stage"] = sched.stage_begin + static_cast<int>(si);
            Json tasks = Json::array();
            for (int t = 1; t <= sched.steps_per_stage; ++t) {
                if (st.observe_target[t - 1] >= 0) {
                    tasks.push_back(Json{{"t", t}, {"type", "observe"}, {"index", st.observe_target[t - 1] + 1}});
                }
                if (st.downlink_station[t - 1] >= 0) {
                    tasks.push_back(Json{{"t", t}, {"type", "downlink"}, {"index", st.downlink_station[t - 1] + 1}});
                }
                if (st.charging[t - 1]) {
                    tasks.push_back(Json{{"t", t}, {"type", "charge"}});
                }
            }
            stage["tasks"] = std::move(tasks);
            stage["data_mb"] = st.data_mb;
            stage["battery_kj"] = st.battery_kj;
            sat["stages"].push_back(std::move(stage));
        }
        j["satellites"].push_back(std::move(sat));
    }
    return j.dump(2) + "\n";
}

Schedule schedule_from_json(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("schedule is not valid JSON: ") + e.what());
    }
    const int version = need(j, "schema_version", "schedule").get<int>();
    if (version != 1) throw SchemaError("unsupported schedule schema_version");
    Schedule sched;
    sched.formulation = formulation_from_name(need(j, "formulation", "schedule").get<std::string>());
    sched.stage_begin = need(j, "stage_begin", "schedule").get<int>();
    sched.stage_end = need(j, "stage_end", "schedule").get<int>();
    sched.steps_per_stage = need(j, "steps_per_stage", "schedule").get<int>();
    sched.objective_z = need(j, "objective_z", "schedule").get<double>();
    sched.merit_z_gb = need(j, "merit_gb", "schedule").get<double>();
    for (const Json& sat : need(j, "satellites", "schedule")) {
        SatellitePlan plan;
        for (const Json& mv : need(sat, "maneuvers", "satellite")) {
            plan.maneuvers.push_back({need(mv, "stage", "maneuver").get<int>(),
                                      need(mv, "from_slot", "maneuver").get<int>() - 1,
                                      need(mv, "to_slot", "maneuver").get<int>() - 1,
                                      need(mv, "dv_mps", "maneuver").get<double>()});
        }
        for (const Json& stage : need(sat, "stages", "satellite")) {
            StageTasks st;
            st.resize(sched.steps_per_stage);
            for (const Json& task : need(stage, "tasks", "stage")) {
                const int t = need(task, "t", "task").get<int>();
                if (t < 1 || t > sched.steps_per_stage) throw SchemaError("task step out of range");
                const std::string type = need(task, "type", "task").get<std::string>();
                if (type == "observe") {
                    st.observe_target[t - 1] =
                        static_cast<std::int16_t>(need(task, "index", "task").get<int>() - 1);
                } else if (type == "downlink") {
                    st.downlink_station[t - 1] =
                        static_cast<std::int16_t>(need(task, "index", "task").get<int>() - 1);
                } else if (type == "charge") {
                    st.charging[t - 1] = 1;
                } else {
                    throw SchemaError("unknown task type '" + type + "'");
                }
            }
            st.data_mb = need(stage, "data_mb", "stage").get<std::vector<double>>();
            st.battery_kj = need(stage, "battery_kj", "stage").get<std::vector<double>>();
            if (static_cast<int>(st.data_mb.size()) != sched.steps_per_stage ||
                static_cast<int>(st.battery_kj.size()) != sched.steps_per_stage) {
                throw SchemaError("storage series length mismatch");
            }
            plan.stages.push_back(std::move(st));
        }
        if (static_cast<int>(plan.stages.size()) != sched.num_stages()) {
            throw SchemaError("stage count mismatch in schedule");
        }
        sched.sats.push_back(std::move(plan));
    }
    return sched;
}

void save_schedule(const std::string& path, const Schedule& sched, std::uint64_t scenario_seed) {
    spit(path, schedule_to_json(sched, scenario_seed));
}

Schedule load_schedule(const std::string& path) { return schedule_from_json(slurp(path)); }

std::string metrics_to_json(const RunMetrics& m) {
    Json j;
    j["schema_version"] = 1;
    j["formulation"] = formulation_name(m.formulation);
    j["status"] = milp_status_name(m.status);
    j["objective_z"] = m.objective_z;
    j["merit_gb"] = m.merit_gb;
    j["bound"] = m.bound;
    j["gap"] = m.gap;
    j["nodes"] = m.nodes;
    j["wall_time_s"] = m.wall_time_s;
    j["total_dv_mps"] = m.total_dv_mps;
    j["per_satellite_dv_mps"] = m.per_satellite_dv_mps;
    j["dv_budget_mps"] = m.dv_budget_mps;
    j["seed"] = m.seed;
    return j.dump(2) + "\n";
}

RunMetrics metrics_from_json(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("metrics file is not valid JSON: ") + e.what());
    }
    RunMetrics m;
    m.formulation = formulation_from_name(need(j, "formulation", "metrics").get<std::string>());
    const std::string status = need(j, "status", "metrics").get<std::string>();
    if (status == "optimal") m.status = MilpStatus::Optimal;
    else if (status == "feasible_limit_hit") m.status = MilpStatus::FeasibleLimitHit;
    else if (status == "infeasible") m.status = MilpStatus::Infeasible;
    else if (status == "unbounded") m.status = MilpStatus::Unbounded;
    else if (status == "no_solution_limit_hit") m.status = MilpStatus::NoSolutionLimitHit;
    else throw SchemaError("unknown status '" + status + "'");
    m.objective_z = need(j, "objective_z", "metrics").get<double>();
    m.merit_gb = need(j, "merit_gb", "metrics").get<double>();
    m.bound = need(j, "bound", "metrics").get<double>();
    m.gap = need(j, "gap", "metrics").get<double>();
    m.nodes = need(j, "nodes", "metrics").get<std::int64_t>();
    m.wall_time_s = need(j, "wall_time_s", "metrics").get<double>();
    m.total_dv_mps = need(j, "total_dv_mps", "metrics").get<double>();
    m.per_satellite_dv_mps = need(j, "per_satellite_dv_mps", "metrics").get<std::vector<double>>();
    m.dv_budget_mps = need(j, "dv_budget_mps", "metrics").get<double>();
    m.seed = need(j, "seed", "metrics").get<std::uint64_t>();
    return m;
}

void save_metrics(const std::string& path, const RunMetrics& m) { spit(path, metrics_to_json(m)); }

RunMetrics load_metrics(const std::string& path) { return metrics_from_json(slurp(path)); }

std::string trace_to_json(const std::vector<SubproblemTrace>& trace) {
    Json j;
    j["schema_version"] = 1;
    j["subproblems"] = Json::array();
    for (const SubproblemTrace& t : trace) {
        j["subproblems"].push_back(Json{{"control_stage", t.control_stage},
                                        {"objective", t.objective},
                                        {"gap", t.gap},
                                        {"wall_time_s", t.wall_time_s},
                                        {"nodes", t.nodes},
                                        {"committed_dv_mps", t.committed_dv_mps},
                                        {"status", milp_status_name(t.status)}});
    }
    return j.dump(2) + "\n";
}

void save_trace(const std::string& path, const std::vector<SubproblemTrace>& trace) {
    spit(path, trace_to_json(trace));
}

} // namespace reosched
