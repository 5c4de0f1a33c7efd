#include "reosched/greedy.hpp"

#include <cmath>

namespace reosched {

namespace {

// True when, starting from battery level b at (stage, step), charging
// whenever the Sun allows and doing nothing else keeps the level above the
// floor through the end of the window. Charge-when-possible dominates any
// other task-free policy pointwise, so this is exact for the no-task tail.
bool battery_tail_survives(const ScenarioInstance& inst, bool slot_resolved, int slot, int sat,
                           int stage_begin, int stage_end, int start_stage, int start_step,
                           double b) {
    const PhysicalConstants& c = inst.constants;
    const VisibilityTensors& vis = inst.visibility();
    const int steps = inst.grid.steps_per_stage;
    int s = start_stage, t = start_step;
    (void)stage_begin;
    while (s <= stage_end) {
        if (b < c.b_min_kj - 1e-9) return false;
        const bool sun = slot_resolved ? vis.h(s, t, slot, sat)
                                       : vis.flat_h(inst.grid.global_step(s, t), sat);
        double gain = 0.0;
        if (sun && b + c.b_charge_kj <= c.b_max_kj + 1e-9) gain = c.b_charge_kj;
        if (b - c.b_time_kj < c.b_min_kj - 1e-9) return false;
        b += gain - c.b_time_kj;
        if (++t > steps) {
            t = 1;
            ++s;
            if (slot_resolved && s <= stage_end) b -= c.b_recon_kj; // stay-put arc still pays
        }
    }
    return b >= c.b_min_kj - 1e-9;
}

Schedule greedy_window(const ScenarioInstance& inst, Formulation kind, const CarryState& carry,
                       int stage_begin, int stage_end) {
    const PhysicalConstants& c = inst.constants;
    const VisibilityTensors& vis = inst.visibility();
    const int sats = inst.num_satellites();
    const int steps = inst.grid.steps_per_stage;
    const bool slot_resolved = kind != Formulation::Eossp;

    Schedule sched;
    sched.formulation = kind;
    sched.stage_begin = stage_begin;
    sched.stage_end = stage_end;
    sched.steps_per_stage = steps;
    sched.sats.resize(sats);
    for (int k = 0; k < sats; ++k) {
        sched.sats[k].stages.resize(stage_end - stage_begin + 1);
        for (StageTasks& st : sched.sats[k].stages) st.resize(steps);
    }

    for (int k = 0; k < sats; ++k) {
        int slot = slot_resolved ? carry.origin_slot[k] : 0;
        double d = carry.d1_mb[k];
        double b = carry.b1_kj[k];
        for (int s = stage_begin; s <= stage_end; ++s) {
            if (slot_resolved) {
                // Stay on the current orbit: zero delta-v, battery cost only.
                // Stage grids repeat, so the slot index carries over.
                sched.sats[k].maneuvers.push_back({s, slot, slot, 0.0});
                b -= c.b_recon_kj;
            }
            StageTasks& st = sched.stage(k, s);
            for (int t = 1; t <= steps; ++t) {
                st.data_mb[t - 1] = d;
                st.battery_kj[t - 1] = b;
                const int global_t = inst.grid.global_step(s, t);
                const auto sees_station = [&](int g) {
                    return slot_resolved ? vis.w(s, t, slot, k, g) : vis.flat_w(global_t, k, g);
                };
                const auto sees_target = [&](int p) {
                    return slot_resolved ? vis.v(s, t, slot, k, p) : vis.flat_v(global_t, k, p);
                };
                const bool sun = slot_resolved ? vis.h(s, t, slot, k) : vis.flat_h(global_t, k);

                const auto safe_after = [&](double b_next) {
                    if (t < steps) {
                        return battery_tail_survives(inst, slot_resolved, slot, k, stage_begin,
                                                     stage_end, s, t + 1, b_next);
                    }
                    if (s < stage_end) {
                        return battery_tail_survives(inst, slot_resolved, slot, k, stage_begin,
                                                     stage_end, s + 1, 1,
                                                     b_next - (slot_resolved ? c.b_recon_kj : 0.0));
                    }
                    return b_next >= c.b_min_kj - 1e-9;
                };

                bool done = false;
                // Downlink first (heaviest objective weight), then observe,
                // then charge.
                for (int g = 0; g < inst.num_stations() && !done; ++g) {
                    if (!sees_station(g)) continue;
                    if (d - c.d_comm_mb < c.d_min_mb - 1e-9) continue;
                    const double b_floor = b - c.b_comm_kj - c.b_time_kj;
                    if (b_floor < c.b_min_kj - 1e-9 || !safe_after(b_floor)) continue;
                    st.downlink_station[t - 1] = static_cast<std::int16_t>(g);
                    d -= c.d_comm_mb;
                    b = b_floor;
                    done = true;
                }
                for (int p = 0; p < inst.num_targets() && !done; ++p) {
                    if (!sees_target(p)) continue;
                    if (d + c.d_obs_mb > c.d_max_mb + 1e-9) continue;
                    const double b_floor = b - c.b_obs_kj - c.b_time_kj;
                    if (b_floor < c.b_min_kj - 1e-9 || !safe_after(b_floor)) continue;
                    st.observe_target[t - 1] = static_cast<std::int16_t>(p);
                    d += c.d_obs_mb;
                    b = b_floor;
                    done = true;
                }
                if (!done && sun && b + c.b_charge_kj <= c.b_max_kj + 1e-9) {
                    const double b_next = b + c.b_charge_kj - c.b_time_kj;
                    st.charging[t - 1] = 1;
                    b = b_next;
                    done = true;
                }
                if (!done) b -= c.b_time_kj;
            }
        }
    }

    const Score sc = score(sched, c);
    sched.objective_z = sc.z;
    sched.merit_z_gb = sc.merit_gb;
    return sched;
}

} // namespace

Schedule greedy_heuristic(const ScenarioInstance& inst, Formulation kind) {
    CarryState carry = initial_carry(inst);
    return greedy_window(inst, kind, carry, 1, inst.grid.stages);
}

Schedule greedy_heuristic_window(const ScenarioInstance& inst, const CarryState& carry,
                                 int lookahead) {
    return greedy_window(inst, Formulation::Rhp, carry, carry.stage_cursor,
                         carry.stage_cursor + lookahead);
}

} // namespace reosched
