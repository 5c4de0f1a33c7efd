#ifndef REOSCHED_FORMULATIONS_HPP
#define REOSCHED_FORMULATIONS_HPP

#include <vector>

#include "reosched/instance.hpp"
#include "reosched/milp_model.hpp"
#include "reosched/schedule.hpp"

namespace reosched {

// Rolled-forward state entering a control stage of the rolling-horizon
// procedure: residual budget, occupied slot, and storage levels.
struct CarryState {
    std::vector<double> residual_budget_mps; // per satellite
    std::vector<int> origin_slot;            // slot index in the (cursor-1) grid
    std::vector<double> d1_mb;               // data entering the control stage
    std::vector<double> b1_kj;               // battery entering the control stage
    int stage_cursor = 1;                    // next control stage s
};

// Carry for stage 1: full budget, stage-0 singleton, D_min data, full battery.
CarryState initial_carry(const ScenarioInstance& instance);

// Baseline model over the flat visibility view: binary y/q/h, continuous d/b,
// objective sum(C q + y). Initial conditions d_1 = D_min, b_1 = B_max.
MilpModel build_eossp(const ScenarioInstance& instance);

// Slot-resolved model with maneuver binaries over finite-cost arcs, flow
// continuity, budget, slot-coupled visibility, split data/battery tracking.
MilpModel build_reossp(const ScenarioInstance& instance);

// One RHP(s, L) subproblem spanning stages s..s+L with carry-provided origin,
// budget, and initial storages.
MilpModel build_rhp_subproblem(const ScenarioInstance& instance, int control_stage, int lookahead,
                               const CarryState& carry);

// Rolls the carry forward over the committed stage (exactly the updating
// equations: budget minus spent delta-v, arrival slot becomes the origin,
// storage levels advanced by committed tasks and the per-stage housekeeping
// drain). Throws InternalError if the residual budget would go negative.
CarryState update_carry_state(const ScenarioInstance& instance, const CarryState& carry,
                              const Schedule& schedule, int committed_stage);

// Maps a schedule into a full model-coordinate vector (binaries from the
// tasks and maneuvers, continuous storage levels from the stored series).
std::vector<double> embed_schedule(const MilpModel& model, const Schedule& schedule);

} // namespace reosched

#endif // REOSCHED_FORMULATIONS_HPP
