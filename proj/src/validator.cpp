#include "reosched/validator.hpp"

#include <cmath>

namespace reosched {

namespace {

constexpr double kTol = 1e-6;

std::string at(int s, int k, int t) {
    return "stage " + std::to_string(s) + ", sat " + std::to_string(k + 1) +
           (t > 0 ? ", step " + std::to_string(t) : "");
}

} // namespace

const char* violation_class_name(ViolationClass c) {
    switch (c) {
        case ViolationClass::TargetVisibility: return "target-visibility";
        case ViolationClass::StationVisibility: return "station-visibility";
        case ViolationClass::SunVisibility: return "sun-visibility";
        case ViolationClass::TaskExclusivity: return "task-exclusivity";
        case ViolationClass::DataTracking: return "data-tracking";
        case ViolationClass::DataCapacity: return "data-capacity";
        case ViolationClass::DataFloor: return "data-floor";
        case ViolationClass::BatteryTracking: return "battery-tracking";
        case ViolationClass::BatteryCapacity: return "battery-capacity";
        case ViolationClass::BatteryFloor: return "battery-floor";
        case ViolationClass::FlowPath: return "flow-path";
        case ViolationClass::ManeuverBudget: return "maneuver-budget";
        case ViolationClass::CarryConsistency: return "carry-consistency";
    }
    return "?";
}

std::vector<Violation> validate_schedule(const ScenarioInstance& inst, const Schedule& sched) {
    std::vector<Violation> out;
    const auto flag = [&](ViolationClass cls, std::string where) {
        out.push_back({cls, std::move(where)});
    };

    const PhysicalConstants& c = inst.constants;
    const VisibilityTensors& vis = inst.visibility();
    const int sats = inst.num_satellites();
    const int steps = inst.grid.steps_per_stage;
    const bool slot_resolved = sched.formulation != Formulation::Eossp;
    if (static_cast<int>(sched.sats.size()) != sats || sched.steps_per_stage != steps) {
        flag(ViolationClass::CarryConsistency, "schedule dimensions do not match the scenario");
        return out;
    }

    // Maneuver path, arc costs, and budget.
    std::vector<std::vector<int>> slot_of(sats, std::vector<int>(sched.num_stages(), 0));
    if (slot_resolved) {
        const CostTensor& costs = inst.costs();
        const SlotGrid& slots = inst.slot_grid();
        for (int k = 0; k < sats; ++k) {
            double spent = 0.0;
            int prev = sched.stage_begin == 1 ? 0 : -1;
            if (sched.stage_begin != 1 && !sched.sats[k].maneuvers.empty()) {
                prev = sched.sats[k].maneuvers.front().from_slot; // partial schedules
            }
            int expected_stage = sched.stage_begin;
            for (const Maneuver& mv : sched.sats[k].maneuvers) {
                if (mv.stage != expected_stage) {
                    flag(ViolationClass::FlowPath, "maneuver sequence skips stage " +
                                                       std::to_string(expected_stage) + " for sat " +
                                                       std::to_string(k + 1));
                    break;
                }
                if (mv.from_slot != prev) {
                    flag(ViolationClass::FlowPath,
                         "stage " + std::to_string(mv.stage) + " departs slot " +
                             std::to_string(mv.from_slot + 1) + " but sat " + std::to_string(k + 1) +
                             " occupies slot " + std::to_string(prev + 1));
                }
                if (mv.to_slot < 0 || mv.to_slot >= slots.count(mv.stage, k) || mv.from_slot < 0 ||
                    mv.from_slot >= slots.count(mv.stage - 1, k)) {
                    flag(ViolationClass::FlowPath, "maneuver indexes a slot outside the grid");
                    break;
                }
                const double cost =
                    costs.at(mv.stage, k, mv.from_slot, mv.to_slot, slots.count(mv.stage, k));
                if (cost >= kInfeasibleCost) {
                    flag(ViolationClass::FlowPath, "infeasible arc chosen at stage " +
                                                       std::to_string(mv.stage) + " for sat " +
                                                       std::to_string(k + 1));
                } else if (std::fabs(cost - mv.dv_mps) > kTol) {
                    flag(ViolationClass::CarryConsistency,
                         "ledger cost " + std::to_string(mv.dv_mps) + " differs from transfer cost " +
                             std::to_string(cost) + " at stage " + std::to_string(mv.stage) +
                             " for sat " + std::to_string(k + 1));
                }
                spent += mv.dv_mps;
                slot_of[k][mv.stage - sched.stage_begin] = mv.to_slot;
                prev = mv.to_slot;
                ++expected_stage;
            }
            if (expected_stage != sched.stage_end + 1) {
                flag(ViolationClass::FlowPath, "sat " + std::to_string(k + 1) + " covers stages up to " +
                                                   std::to_string(expected_stage - 1) + " of " +
                                                   std::to_string(sched.stage_end));
            }
            if (spent > inst.constants.dv_budget_mps + kTol) {
                flag(ViolationClass::ManeuverBudget,
                     "sat " + std::to_string(k + 1) + " spent " + std::to_string(spent) +
                         " m/s of " + std::to_string(inst.constants.dv_budget_mps));
            }
        }
    } else {
        for (int k = 0; k < sats; ++k) {
            if (!sched.sats[k].maneuvers.empty()) {
                flag(ViolationClass::FlowPath, "baseline schedule carries maneuvers");
            }
        }
    }

    // Task visibility and exclusivity.
    for (int k = 0; k < sats; ++k) {
        for (int s = sched.stage_begin; s <= sched.stage_end; ++s) {
            const StageTasks& st = sched.stage(k, s);
            const int j_occ = slot_resolved ? slot_of[k][s - sched.stage_begin] : 0;
            for (int t = 1; t <= steps; ++t) {
                const int p = st.observe_target[t - 1];
                const int g = st.downlink_station[t - 1];
                const bool h = st.charging[t - 1] != 0;
                const int global_t = inst.grid.global_step(s, t);
                if (p >= 0) {
                    const bool visible = slot_resolved ? vis.v(s, t, j_occ, k, p)
                                                       : vis.flat_v(global_t, k, p);
                    if (!visible) {
                        flag(ViolationClass::TargetVisibility,
                             "observation of target " + std::to_string(p + 1) + " without view at " +
                                 at(s, k, t));
                    }
                }
                if (g >= 0) {
                    const bool visible = slot_resolved ? vis.w(s, t, j_occ, k, g)
                                                       : vis.flat_w(global_t, k, g);
                    if (!visible) {
                        flag(ViolationClass::StationVisibility,
                             "downlink to station " + std::to_string(g + 1) + " without view at " +
                                 at(s, k, t));
                    }
                }
                if (h) {
                    const bool visible =
                        slot_resolved ? vis.h(s, t, j_occ, k) : vis.flat_h(global_t, k);
                    if (!visible) {
                        flag(ViolationClass::SunVisibility, "charging in eclipse at " + at(s, k, t));
                    }
                }
                if ((p >= 0) + (g >= 0) + (h ? 1 : 0) > 1) {
                    flag(ViolationClass::TaskExclusivity, "multiple tasks at " + at(s, k, t));
                }
            }
        }
    }

    // Storage trajectories, re-derived from the tasks and compared with the
    // stored series, plus every capacity / floor condition.
    for (int k = 0; k < sats; ++k) {
        const SatellitePlan& plan = sched.sats[k];
        const auto maneuver_at = [&](int s) -> const Maneuver* {
            for (const Maneuver& mv : plan.maneuvers) {
                if (mv.stage == s) return &mv;
            }
            return nullptr;
        };
        double d = sched.stage_begin == 1 ? c.d_min_mb
                                          : sched.stage(k, sched.stage_begin).data_mb.front();
        double b = sched.stage_begin == 1 ? c.b_max_kj
                                          : sched.stage(k, sched.stage_begin).battery_kj.front();
        if (sched.stage_begin == 1 && slot_resolved && maneuver_at(1) != nullptr) {
            b -= c.b_recon_kj;
            if (b < c.b_min_kj - kTol) {
                flag(ViolationClass::BatteryFloor, "first maneuver drains below the floor, sat " +
                                                       std::to_string(k + 1));
            }
        }
        for (int s = sched.stage_begin; s <= sched.stage_end; ++s) {
            const StageTasks& st = sched.stage(k, s);
            for (int t = 1; t <= steps; ++t) {
                if (std::fabs(st.data_mb[t - 1] - d) > kTol) {
                    flag(ViolationClass::DataTracking, "stored data level diverges at " + at(s, k, t));
                    d = st.data_mb[t - 1]; // resynchronize to avoid cascading reports
                }
                if (std::fabs(st.battery_kj[t - 1] - b) > kTol) {
                    flag(ViolationClass::BatteryTracking,
                         "stored battery level diverges at " + at(s, k, t));
                    b = st.battery_kj[t - 1];
                }
                const bool obs = st.observe_target[t - 1] >= 0;
                const bool down = st.downlink_station[t - 1] >= 0;
                const bool charge = st.charging[t - 1] != 0;
                const double d_in = obs ? c.d_obs_mb : 0.0;
                const double d_out = down ? c.d_comm_mb : 0.0;
                const double b_out = (obs ? c.b_obs_kj : 0.0) + (down ? c.b_comm_kj : 0.0);
                const double b_in = charge ? c.b_charge_kj : 0.0;
                if (d + d_in > c.d_max_mb + kTol) {
                    flag(ViolationClass::DataCapacity, "observation overflows storage at " + at(s, k, t));
                }
                if (d - d_out < c.d_min_mb - kTol) {
                    flag(ViolationClass::DataFloor, "downlink overdraws storage at " + at(s, k, t));
                }
                if (b + b_in > c.b_max_kj + kTol) {
                    flag(ViolationClass::BatteryCapacity, "charging overflows battery at " + at(s, k, t));
                }
                // Battery floor; across a stage gap the next maneuver's cost
                // counts against the same floor.
                double recon = 0.0;
                if (slot_resolved && t == steps && s < sched.stage_end &&
                    maneuver_at(s + 1) != nullptr) {
                    recon = c.b_recon_kj;
                }
                if (b - b_out - c.b_time_kj - recon < c.b_min_kj - kTol) {
                    flag(ViolationClass::BatteryFloor, "battery floor violated at " + at(s, k, t));
                }
                d += d_in - d_out;
                b += b_in - b_out - c.b_time_kj - recon;
            }
        }
    }

    return out;
}

} // namespace reosched
