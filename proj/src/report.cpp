#include "reosched/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace reosched {

namespace {
using Json = nlohmann::ordered_json;

std::string fixed2(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}
} // namespace

std::optional<double> gamma_improvement(double z_a, double z_b) {
    if (z_b == 0.0) return std::nullopt;
    return 100.0 * (z_a - z_b) / z_b;
}

BudgetSummary summarize_budget(const std::vector<double>& ledger, double budget_per_sat) {
    BudgetSummary s;
    s.dv_mps = ledger;
    s.pct.reserve(ledger.size());
    for (double dv : ledger) {
        s.total_dv_mps += dv;
        s.pct.push_back(budget_per_sat > 0 ? 100.0 * dv / budget_per_sat : 0.0);
    }
    const double total_budget = budget_per_sat * static_cast<double>(ledger.size());
    s.total_pct = total_budget > 0 ? 100.0 * s.total_dv_mps / total_budget : 0.0;
    return s;
}

BudgetSummary summarize_budget(const Schedule& schedule, const PhysicalConstants& constants) {
    return summarize_budget(schedule.cost_ledger(), constants.dv_budget_mps);
}

ComparisonReport build_report(const std::vector<RunMetrics>& runs) {
    ComparisonReport rep;
    const RunMetrics* by_form[3] = {nullptr, nullptr, nullptr};
    for (const RunMetrics& run : runs) {
        ComparisonEntry e;
        e.formulation = run.formulation;
        e.z = run.objective_z;
        e.merit_gb = run.merit_gb;
        e.wall_time_s = run.wall_time_s;
        e.total_dv_mps = run.total_dv_mps;
        e.per_sat_dv_mps = run.per_satellite_dv_mps;
        e.dv_budget_mps = run.dv_budget_mps;
        e.status = milp_status_name(run.status);
        rep.entries.push_back(std::move(e));
        by_form[static_cast<int>(run.formulation)] = &run;
    }
    const RunMetrics* eossp = by_form[static_cast<int>(Formulation::Eossp)];
    const RunMetrics* reossp = by_form[static_cast<int>(Formulation::Reossp)];
    const RunMetrics* rhp = by_form[static_cast<int>(Formulation::Rhp)];
    const auto add_gamma = [&](const char* label, const RunMetrics* a, const RunMetrics* b) {
        if (a == nullptr || b == nullptr) return;
        rep.gammas.push_back({label, gamma_improvement(a->objective_z, b->objective_z),
                              gamma_improvement(a->merit_gb, b->merit_gb)});
    };
    add_gamma("reossp over eossp", reossp, eossp);
    add_gamma("rhp over eossp", rhp, eossp);
    add_gamma("rhp over reossp", rhp, reossp);
    return rep;
}

std::string report_to_json(const ComparisonReport& rep) {
    Json j;
    j["schema_version"] = 1;
    j["runs"] = Json::array();
    for (const ComparisonEntry& e : rep.entries) {
        j["runs"].push_back(Json{{"formulation", formulation_name(e.formulation)},
                                 {"z", e.z},
                                 {"merit_gb", e.merit_gb},
                                 {"wall_time_s", e.wall_time_s},
                                 {"total_dv_mps", e.total_dv_mps},
                                 {"per_satellite_dv_mps", e.per_sat_dv_mps},
                                 {"dv_budget_mps", e.dv_budget_mps},
                                 {"status", e.status}});
    }
    j["gamma"] = Json::array();
    for (const GammaEntry& g : rep.gammas) {
        Json entry;
        entry["over"] = g.over;
        if (g.z_pct) entry["z_pct"] = *g.z_pct; else entry["z_pct"] = nullptr;
        if (g.merit_pct) entry["merit_pct"] = *g.merit_pct; else entry["merit_pct"] = nullptr;
        j["gamma"].push_back(std::move(entry));
    }
    return j.dump(2) + "\n";
}

std::string render_report_text(const ComparisonReport& rep) {
    std::string out;
    char line[256];
    std::snprintf(line, sizeof(line), "%-8s %10s %10s %12s %12s %8s  %s\n", "run", "z", "Z (GB)",
                  "time (min)", "dv (m/s)", "dv (%)", "status");
    out += line;
    for (const ComparisonEntry& e : rep.entries) {
        const double budget_total = e.dv_budget_mps * static_cast<double>(e.per_sat_dv_mps.size());
        const double pct = budget_total > 0 ? 100.0 * e.total_dv_mps / budget_total : 0.0;
        std::snprintf(line, sizeof(line), "%-8s %10s %10s %12s %12s %8s  %s\n",
                      formulation_name(e.formulation), fixed2(e.z).c_str(),
                      fixed2(e.merit_gb).c_str(), fixed2(e.wall_time_s / 60.0).c_str(),
                      fixed2(e.total_dv_mps).c_str(), fixed2(pct).c_str(), e.status.c_str());
        out += line;
    }
    for (const GammaEntry& g : rep.gammas) {
        out += "gamma " + g.over + ": z " + (g.z_pct ? fixed2(*g.z_pct) + "%" : "n/a") +
               ", Z " + (g.merit_pct ? fixed2(*g.merit_pct) + "%" : "n/a") + "\n";
    }
    return out;
}

std::string render_stage_table(const ScenarioInstance& inst, const Schedule& sched) {
    std::string out;
    char line[512];
    const bool slot_resolved = sched.formulation != Formulation::Eossp;
    const SlotGrid& slots = inst.slot_grid();

    out += "satellite  state        ";
    for (int s = sched.stage_begin; s <= sched.stage_end; ++s) {
        std::snprintf(line, sizeof(line), " S=%-7d", s);
        out += line;
    }
    out += "\n";
    for (int k = 0; k < static_cast<int>(sched.sats.size()); ++k) {
        const SatellitePlan& plan = sched.sats[k];
        std::vector<std::pair<std::string, std::vector<std::string>>> rows;
        if (slot_resolved) {
            std::vector<std::string> inc, raan, phase, cost;
            for (const Maneuver& mv : plan.maneuvers) {
                const OrbitalElements& el = slots.slot(mv.stage, k, mv.to_slot);
                inc.push_back(fixed2(el.inclination_deg));
                raan.push_back(fixed2(el.raan_deg));
                phase.push_back(fixed2(el.arg_latitude_deg));
                cost.push_back(fixed2(mv.dv_mps));
            }
            rows.push_back({"i, deg", inc});
            rows.push_back({"raan, deg", raan});
            rows.push_back({"u, deg", phase});
            rows.push_back({"cost, m/s", cost});
        }
        std::vector<std::string> obs, down, charge;
        for (const StageTasks& st : plan.stages) {
            obs.push_back(std::to_string(st.observations()));
            down.push_back(std::to_string(st.downlinks()));
            charge.push_back(std::to_string(st.charges()));
        }
        rows.insert(rows.end() - (slot_resolved ? 1 : 0),
                    {{"observations", obs}, {"downlinks", down}, {"charging", charge}});
        for (const auto& [label, cells] : rows) {
            std::snprintf(line, sizeof(line), "%-10d %-12s ", k + 1, label.c_str());
            out += line;
            for (const std::string& cell : cells) {
                std::snprintf(line, sizeof(line), " %-8s", cell.c_str());
                out += line;
            }
            out += "\n";
        }
    }
    return out;
}

} // namespace reosched
