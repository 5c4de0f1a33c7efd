#include "reosched/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "reosched/errors.hpp"

namespace reosched {

namespace {
constexpr double kIntegralityTol = 1e-5;
constexpr double kSimMatchTol = 1e-6;
} // namespace

int StageTasks::observations() const {
    int n = 0;
    for (std::int16_t p : observe_target) n += p >= 0;
    return n;
}

int StageTasks::downlinks() const {
    int n = 0;
    for (std::int16_t g : downlink_station) n += g >= 0;
    return n;
}

int StageTasks::charges() const {
    int n = 0;
    for (std::uint8_t h : charging) n += h != 0;
    return n;
}

std::vector<double> Schedule::cost_ledger() const {
    std::vector<double> led(sats.size(), 0.0);
    for (std::size_t k = 0; k < sats.size(); ++k) {
        for (const Maneuver& mv : sats[k].maneuvers) led[k] += mv.dv_mps;
    }
    return led;
}

Score score(const Schedule& schedule, const PhysicalConstants& constants) {
    Score sc;
    for (const SatellitePlan& plan : schedule.sats) {
        for (const StageTasks& st : plan.stages) {
            sc.observations += st.observations();
            sc.downlinks += st.downlinks();
        }
    }
    sc.z = constants.downlink_weight * sc.downlinks + sc.observations;
    sc.merit_gb = constants.d_comm_mb * sc.downlinks / constants.gb_to_mb;
    return sc;
}

void resimulate_storage(const ScenarioInstance& inst, Schedule& schedule,
                        const std::vector<double>& d1_mb, const std::vector<double>& b1_kj) {
    const PhysicalConstants& c = inst.constants;
    const int steps = schedule.steps_per_stage;
    for (std::size_t k = 0; k < schedule.sats.size(); ++k) {
        SatellitePlan& plan = schedule.sats[k];
        const auto maneuver_at = [&](int s) -> const Maneuver* {
            for (const Maneuver& mv : plan.maneuvers) {
                if (mv.stage == s) return &mv;
            }
            return nullptr;
        };
        double d = d1_mb[k];
        double b = b1_kj[k];
        if (maneuver_at(schedule.stage_begin) != nullptr) b -= c.b_recon_kj;
        for (int s = schedule.stage_begin; s <= schedule.stage_end; ++s) {
            StageTasks& st = plan.stages[s - schedule.stage_begin];
            for (int t = 1; t <= steps; ++t) {
                st.data_mb[t - 1] = d;
                st.battery_kj[t - 1] = b;
                const double d_obs = st.observe_target[t - 1] >= 0 ? c.d_obs_mb : 0.0;
                const double d_comm = st.downlink_station[t - 1] >= 0 ? c.d_comm_mb : 0.0;
                const double b_obs = st.observe_target[t - 1] >= 0 ? c.b_obs_kj : 0.0;
                const double b_comm = st.downlink_station[t - 1] >= 0 ? c.b_comm_kj : 0.0;
                const double b_charge = st.charging[t - 1] ? c.b_charge_kj : 0.0;
                d += d_obs - d_comm;
                b += b_charge - b_obs - b_comm - c.b_time_kj;
            }
            if (s < schedule.stage_end && maneuver_at(s + 1) != nullptr) b -= c.b_recon_kj;
        }
    }
}

Schedule extract_schedule(const MilpModel& model, const std::vector<double>& values,
                          const ScenarioInstance& inst) {
    if (static_cast<int>(values.size()) != model.num_cols()) {
        throw ExtractionError("solution vector length mismatch");
    }
    for (int col = 0; col < model.num_cols(); ++col) {
        if (!model.binary[col]) continue;
        const double v = values[col];
        if (std::fabs(v - std::round(v)) > kIntegralityTol) {
            throw ExtractionError("integrality violation on " + model.col_name(col) + " = " +
                                  std::to_string(v));
        }
    }

    const ModelMeta& meta = model.meta;
    const int grid_steps = inst.grid.steps_per_stage;
    Schedule sched;
    sched.formulation = meta.formulation;
    sched.steps_per_stage = grid_steps;
    if (meta.formulation == Formulation::Eossp) {
        sched.stage_begin = 1;
        sched.stage_end = inst.grid.stages;
    } else {
        sched.stage_begin = meta.stage_begin;
        sched.stage_end = meta.stage_end;
    }
    sched.sats.resize(meta.satellites);
    for (SatellitePlan& plan : sched.sats) {
        plan.stages.resize(sched.num_stages());
        for (StageTasks& st : plan.stages) st.resize(grid_steps);
    }

    // Solver values of the storage indicators, kept aside for the
    // re-simulation cross-check.
    std::vector<std::vector<std::vector<double>>> d_solver(meta.satellites);
    std::vector<std::vector<std::vector<double>>> b_solver(meta.satellites);
    for (int k = 0; k < meta.satellites; ++k) {
        d_solver[k].assign(sched.num_stages(), std::vector<double>(grid_steps, 0.0));
        b_solver[k].assign(sched.num_stages(), std::vector<double>(grid_steps, 0.0));
    }

    const auto stage_of_flat = [&](int t) { return (t - 1) / grid_steps + 1; };
    const auto local_of_flat = [&](int t) { return (t - 1) % grid_steps + 1; };

    for (int col = 0; col < model.num_cols(); ++col) {
        const VarKey& key = model.keys[col];
        const bool on = model.binary[col] && values[col] > 0.5;
        const int s = meta.formulation == Formulation::Eossp ? stage_of_flat(key.t) : key.stage;
        const int t = meta.formulation == Formulation::Eossp ? local_of_flat(key.t) : key.t;
        switch (key.type) {
            case VarType::Maneuver:
                if (on) {
                    const int j_cur = model.index.x_cur_count[key.stage - meta.stage_begin][key.sat];
                    const double cost = inst.costs().at(key.stage, key.sat, key.a, key.b, j_cur);
                    sched.sats[key.sat].maneuvers.push_back({key.stage, key.a, key.b, cost});
                }
                break;
            case VarType::Observe:
                if (on) {
                    std::int16_t& slot = sched.stage(key.sat, s).observe_target[t - 1];
                    if (slot >= 0) throw ExtractionError("two observations at one step");
                    slot = static_cast<std::int16_t>(key.a);
                }
                break;
            case VarType::Downlink:
                if (on) {
                    std::int16_t& slot = sched.stage(key.sat, s).downlink_station[t - 1];
                    if (slot >= 0) throw ExtractionError("two downlinks at one step");
                    slot = static_cast<std::int16_t>(key.a);
                }
                break;
            case VarType::Charge:
                if (on) sched.stage(key.sat, s).charging[t - 1] = 1;
                break;
            case VarType::Data:
                d_solver[key.sat][s - sched.stage_begin][t - 1] = values[col];
                break;
            case VarType::Battery:
                b_solver[key.sat][s - sched.stage_begin][t - 1] = values[col];
                break;
        }
    }

    if (meta.formulation != Formulation::Eossp) {
        for (int k = 0; k < meta.satellites; ++k) {
            auto& mvs = sched.sats[k].maneuvers;
            std::sort(mvs.begin(), mvs.end(),
                      [](const Maneuver& a, const Maneuver& b) { return a.stage < b.stage; });
            if (static_cast<int>(mvs.size()) != sched.num_stages()) {
                throw ExtractionError("satellite " + std::to_string(k + 1) + " chose " +
                                      std::to_string(mvs.size()) + " arcs for " +
                                      std::to_string(sched.num_stages()) + " stages");
            }
        }
    }

    // Independent forward simulation of the storage recurrences, checked
    // against the solver's indicator values.
    resimulate_storage(inst, sched, meta.d1_mb, meta.b1_kj);
    for (int k = 0; k < meta.satellites; ++k) {
        for (int s = sched.stage_begin; s <= sched.stage_end; ++s) {
            const StageTasks& st = sched.stage(k, s);
            for (int t = 1; t <= grid_steps; ++t) {
                const double dd = std::fabs(st.data_mb[t - 1] - d_solver[k][s - sched.stage_begin][t - 1]);
                const double db = std::fabs(st.battery_kj[t - 1] - b_solver[k][s - sched.stage_begin][t - 1]);
                if (dd > kSimMatchTol || db > kSimMatchTol) {
                    throw ExtractionError("storage re-simulation mismatch at stage " +
                                          std::to_string(s) + " step " + std::to_string(t) +
                                          " sat " + std::to_string(k + 1));
                }
            }
        }
    }

    const Score sc = score(sched, inst.constants);
    sched.objective_z = sc.z;
    sched.merit_z_gb = sc.merit_gb;
    return sched;
}

} // namespace reosched
