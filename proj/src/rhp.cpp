#include "reosched/rhp.hpp"

#include <algorithm>
#include <string>

#include "reosched/errors.hpp"
#include "reosched/greedy.hpp"
#include "reosched/validator.hpp"

namespace reosched {

namespace {

// Copies one stage of a subproblem extract into a standalone single-stage
// piece (tasks plus the maneuver entering the stage).
Schedule slice_stage(const Schedule& sub, int stage) {
    Schedule piece;
    piece.formulation = Formulation::Rhp;
    piece.stage_begin = piece.stage_end = stage;
    piece.steps_per_stage = sub.steps_per_stage;
    piece.sats.resize(sub.sats.size());
    for (std::size_t k = 0; k < sub.sats.size(); ++k) {
        piece.sats[k].stages.push_back(sub.stage(static_cast<int>(k), stage));
        for (const Maneuver& mv : sub.sats[k].maneuvers) {
            if (mv.stage == stage) piece.sats[k].maneuvers.push_back(mv);
        }
    }
    return piece;
}

} // namespace

Schedule assemble(const ScenarioInstance& inst, const std::vector<Schedule>& pieces) {
    const int stages = inst.grid.stages;
    const int sats = inst.num_satellites();
    std::vector<const Schedule*> by_stage(stages + 1, nullptr);
    for (const Schedule& piece : pieces) {
        if (piece.stage_begin != piece.stage_end) {
            throw AssemblyError("assemble expects single-stage pieces");
        }
        const int s = piece.stage_begin;
        if (s < 1 || s > stages) throw AssemblyError("piece stage " + std::to_string(s) + " out of range");
        if (by_stage[s] != nullptr) throw AssemblyError("stage " + std::to_string(s) + " committed twice");
        by_stage[s] = &piece;
    }
    for (int s = 1; s <= stages; ++s) {
        if (by_stage[s] == nullptr) throw AssemblyError("stage " + std::to_string(s) + " missing");
    }

    Schedule out;
    out.formulation = Formulation::Rhp;
    out.stage_begin = 1;
    out.stage_end = stages;
    out.steps_per_stage = inst.grid.steps_per_stage;
    out.sats.resize(sats);
    for (int k = 0; k < sats; ++k) {
        out.sats[k].stages.resize(stages);
        for (int s = 1; s <= stages; ++s) {
            const Schedule& piece = *by_stage[s];
            out.sats[k].stages[s - 1] = piece.sats[k].stages.front();
            for (const Maneuver& mv : piece.sats[k].maneuvers) out.sats[k].maneuvers.push_back(mv);
        }
        std::sort(out.sats[k].maneuvers.begin(), out.sats[k].maneuvers.end(),
                  [](const Maneuver& a, const Maneuver& b) { return a.stage < b.stage; });
    }

    // Storage trajectories are re-derived from the global initial conditions,
    // which keeps them continuous across the seams by construction.
    const std::vector<double> d1(sats, inst.constants.d_min_mb);
    const std::vector<double> b1(sats, inst.constants.b_max_kj);
    resimulate_storage(inst, out, d1, b1);

    const Score sc = score(out, inst.constants);
    out.objective_z = sc.z;
    out.merit_z_gb = sc.merit_gb;
    return out;
}

RhpResult run_rhp(const ScenarioInstance& inst, int lookahead, const SolveLimits& limits,
                  bool divide_time_evenly) {
    const int stages = inst.grid.stages;
    if (lookahead < 1 || lookahead > stages - 1) {
        throw ConfigError("lookahead must lie in [1, S-1]");
    }
    const int subproblems = stages - lookahead;
    SolveLimits sub_limits = limits;
    if (divide_time_evenly && limits.time_limit_s > 0) {
        sub_limits.time_limit_s = limits.time_limit_s / subproblems;
    }

    RhpResult result;
    result.committed_stage_z.assign(stages + 1, 0.0);
    std::vector<Schedule> pieces;
    CarryState carry = initial_carry(inst);

    for (int s = 1; s <= subproblems; ++s) {
        const MilpModel model = build_rhp_subproblem(inst, s, lookahead, carry);
        const Schedule warm = greedy_heuristic_window(inst, carry, lookahead);
        const std::vector<double> warm_vec = embed_schedule(model, warm);
        const MilpSolution sol = solve_milp(model, sub_limits, &warm_vec);
        if (!sol.has_solution) {
            throw InfeasibleModelError("subproblem at control stage " + std::to_string(s) +
                                       " produced no feasible schedule (status " +
                                       std::to_string(static_cast<int>(sol.status)) + ")");
        }
        const Schedule sub = extract_schedule(model, sol.values, inst);

        SubproblemTrace trace;
        trace.control_stage = s;
        trace.objective = sol.objective;
        trace.gap = sol.gap;
        trace.wall_time_s = sol.wall_time_s;
        trace.nodes = sol.nodes;
        trace.status = sol.status;

        const int commit_end = s == subproblems ? stages : s;
        for (int cs = s; cs <= commit_end; ++cs) {
            Schedule piece = slice_stage(sub, cs);
            for (int k = 0; k < inst.num_satellites(); ++k) {
                for (const Maneuver& mv : piece.sats[k].maneuvers) trace.committed_dv_mps += mv.dv_mps;
            }
            const Score sc = score(piece, inst.constants);
            result.committed_stage_z[cs] = sc.z;
            carry = update_carry_state(inst, carry, sub, cs);
            pieces.push_back(std::move(piece));
        }
        result.trace.push_back(trace);
    }

    result.schedule = assemble(inst, pieces);
    const std::vector<Violation> violations = validate_schedule(inst, result.schedule);
    if (!violations.empty()) {
        throw InternalError("assembled schedule failed validation: " + violations.front().where);
    }
    result.z_total = result.schedule.objective_z;
    result.merit_gb = result.schedule.merit_z_gb;
    return result;
}

} // namespace reosched
