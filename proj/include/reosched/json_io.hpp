#ifndef REOSCHED_JSON_IO_HPP
#define REOSCHED_JSON_IO_HPP

#include <string>

#include "reosched/branch_bound.hpp"
#include "reosched/rhp.hpp"
#include "reosched/schedule.hpp"

namespace reosched {

const char* formulation_name(Formulation f);
Formulation formulation_from_name(const std::string& name);
const char* milp_status_name(MilpStatus s);

// Schedule JSON (schema v1): meta, per-satellite maneuvers, per-stage tasks,
// and the full storage series. Deterministic field order and number
// formatting, so identical schedules serialize to identical bytes. Wall
// times and other run metrics deliberately live in the separate metrics
// file.
std::string schedule_to_json(const Schedule& schedule, std::uint64_t scenario_seed);
Schedule schedule_from_json(const std::string& text);

void save_schedule(const std::string& path, const Schedule& schedule, std::uint64_t scenario_seed);
Schedule load_schedule(const std::string& path);

// Per-run metrics (timings, bound, gap, node count, delta-v usage).
struct RunMetrics {
    Formulation formulation = Formulation::Eossp;
    MilpStatus status = MilpStatus::Optimal;
    double objective_z = 0.0;
    double merit_gb = 0.0;
    double bound = 0.0;
    double gap = 0.0;
    std::int64_t nodes = 0;
    double wall_time_s = 0.0;
    double total_dv_mps = 0.0;
    std::vector<double> per_satellite_dv_mps;
    double dv_budget_mps = 0.0;
    std::uint64_t seed = 0;
};
std::string metrics_to_json(const RunMetrics& metrics);
RunMetrics metrics_from_json(const std::string& text);
void save_metrics(const std::string& path, const RunMetrics& metrics);
RunMetrics load_metrics(const std::string& path);

// Rolling-horizon trace: one record per subproblem.
std::string trace_to_json(const std::vector<SubproblemTrace>& trace);
void save_trace(const std::string& path, const std::vector<SubproblemTrace>& trace);

} // namespace reosched

#endif // REOSCHED_JSON_IO_HPP
