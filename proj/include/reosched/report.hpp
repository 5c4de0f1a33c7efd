#ifndef REOSCHED_REPORT_HPP
#define REOSCHED_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include "reosched/instance.hpp"
#include "reosched/json_io.hpp"
#include "reosched/schedule.hpp"

namespace reosched {

// Percent improvement of A over B: 100 (z_A - z_B) / z_B; undefined when the
// baseline is zero.
std::optional<double> gamma_improvement(double z_a, double z_b);

struct BudgetSummary {
    std::vector<double> dv_mps;  // per satellite
    std::vector<double> pct;     // percent of the per-satellite budget
    double total_dv_mps = 0.0;
    double total_pct = 0.0;      // percent of the summed budget
};
BudgetSummary summarize_budget(const std::vector<double>& ledger_mps, double budget_per_sat_mps);
BudgetSummary summarize_budget(const Schedule& schedule, const PhysicalConstants& constants);

// One formulation's reported line in a comparison.
struct ComparisonEntry {
    Formulation formulation = Formulation::Eossp;
    double z = 0.0;
    double merit_gb = 0.0;
    double wall_time_s = 0.0;
    double total_dv_mps = 0.0;
    std::vector<double> per_sat_dv_mps;
    double dv_budget_mps = 0.0;
    std::string status;
};

struct GammaEntry {
    std::string over;                    // e.g. "reossp over eossp"
    std::optional<double> z_pct;         // objective-based improvement
    std::optional<double> merit_pct;     // figure-of-merit-based improvement
};

struct ComparisonReport {
    std::vector<ComparisonEntry> entries;
    std::vector<GammaEntry> gammas;
};

// Pairs up every formulation present (rhp/reossp over eossp, rhp over
// reossp) and computes both gamma flavors.
ComparisonReport build_report(const std::vector<RunMetrics>& runs);

std::string report_to_json(const ComparisonReport& report);
std::string render_report_text(const ComparisonReport& report);

// Observation / downlink / charging occurrences per stage per satellite,
// plus occupied-slot elements and maneuver costs for the slot-resolved
// formulations.
std::string render_stage_table(const ScenarioInstance& instance, const Schedule& schedule);

} // namespace reosched

#endif // REOSCHED_REPORT_HPP
