#ifndef REOSCHED_RHP_HPP
#define REOSCHED_RHP_HPP

#include <vector>

#include "reosched/branch_bound.hpp"
#include "reosched/formulations.hpp"
#include "reosched/instance.hpp"
#include "reosched/schedule.hpp"

namespace reosched {

struct SubproblemTrace {
    int control_stage = 0;
    double objective = 0.0; // raw subproblem objective (lookahead included)
    double gap = 0.0;
    double wall_time_s = 0.0;
    std::int64_t nodes = 0;
    double committed_dv_mps = 0.0; // delta-v committed by this subproblem
    MilpStatus status = MilpStatus::Optimal;
};

struct RhpResult {
    Schedule schedule;                     // assembled full-horizon schedule
    std::vector<SubproblemTrace> trace;    // one entry per subproblem
    std::vector<double> committed_stage_z; // z per stage, committed tasks only
    double z_total = 0.0;                  // sum of the committed stage contributions
    double merit_gb = 0.0;
};

// The rolling-horizon driver: solves RHP(s, L) for s = 1..S-L, committing
// stage s (the final subproblem commits its whole window), rolling the carry
// forward between solves, and assembling the full-horizon schedule. The
// assembled schedule is checked against the full constraint set before it is
// returned. The headline objective counts committed stages only; lookahead
// decisions are tentative and discarded.
//
// When divide_time_evenly is set, limits.time_limit_s is split across the
// S-L subproblems; otherwise each subproblem gets the full budget.
RhpResult run_rhp(const ScenarioInstance& instance, int lookahead, const SolveLimits& limits,
                  bool divide_time_evenly = true);

// Concatenates single-stage committed pieces (stage s in piece order) into a
// full schedule with storage trajectories continuous across the seams.
// Throws AssemblyError on a missing or duplicated stage.
Schedule assemble(const ScenarioInstance& instance, const std::vector<Schedule>& pieces);

} // namespace reosched

#endif // REOSCHED_RHP_HPP
