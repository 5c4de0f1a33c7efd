#ifndef REOSCHED_TESTS_MANUAL_HPP
#define REOSCHED_TESTS_MANUAL_HPP

#include <functional>

#include "reosched/instance.hpp"
#include "reosched/milp_model.hpp"

namespace reosched::test {

// Micro-instance with hand-authored visibility and costs: the geometry stack
// is bypassed by injecting tensors directly, so tests control exactly which
// (step, slot) combinations see what.
inline ScenarioInstance manual_instance(int stages, int sats, int steps_per_stage, int targets,
                                        int stations, int slots, const PhysicalConstants& c) {
    ScenarioInstance inst;
    inst.grid = TimeGrid::make({2025, 1, 1, 0, 0, 0.0}, 100.0,
                               100.0 * stages * steps_per_stage, stages);
    inst.constants = c;
    for (int k = 0; k < sats; ++k) {
        OrbitalElements el;
        el.semi_major_axis_km = astro::kEarthRadiusKm + 700.0 + 10.0 * k;
        el.inclination_deg = 50.0 + k;
        el.raan_deg = 30.0 * k;
        el.arg_latitude_deg = 20.0 * k;
        inst.satellites.push_back(el);
    }
    for (int p = 0; p < targets; ++p) inst.targets.push_back({10.0 * p - 30.0, 15.0 * p, ""});
    for (int g = 0; g < stations; ++g) inst.stations.push_back({40.0 + g, -4.0 * g, ""});
    inst.slot_spec.kind = SlotKind::PhaseOnly;
    inst.slot_spec.phase_count = slots;
    return inst;
}

// All-zero tensors with the instance's dimensions (already "masked").
inline VisibilityTensors zero_tensors(const ScenarioInstance& inst) {
    const int stages = inst.grid.stages;
    const int sats = inst.num_satellites();
    const int steps = inst.grid.steps_per_stage;
    VisibilityTensors t;
    t.stages = stages;
    t.satellites = sats;
    t.steps_per_stage = steps;
    t.total_steps = inst.grid.total_steps;
    t.targets = inst.num_targets();
    t.stations = inst.num_stations();
    t.masked = true;
    t.slot_counts.assign(stages, std::vector<int>(sats, inst.slot_spec.phase_count));
    t.v_plane.assign(stages, {});
    t.w_plane.assign(stages, {});
    t.h_plane.assign(stages, {});
    for (int s = 0; s < stages; ++s) {
        t.v_plane[s].assign(sats, std::vector<std::vector<BitSeries>>(
                                      inst.slot_spec.phase_count,
                                      std::vector<BitSeries>(t.targets, BitSeries(steps))));
        t.w_plane[s].assign(sats, std::vector<std::vector<BitSeries>>(
                                      inst.slot_spec.phase_count,
                                      std::vector<BitSeries>(t.stations, BitSeries(steps))));
        t.h_plane[s].assign(sats, std::vector<BitSeries>(inst.slot_spec.phase_count, BitSeries(steps)));
    }
    t.v_flat.assign(sats, std::vector<BitSeries>(t.targets, BitSeries(t.total_steps)));
    t.w_flat.assign(sats, std::vector<BitSeries>(t.stations, BitSeries(t.total_steps)));
    t.h_flat.assign(sats, BitSeries(t.total_steps));
    return t;
}

enum class Goal { Target, Station, Sun };

// Marks a goal visible at a global step for one satellite: the flat view and
// every slot's plane (slot-independent visibility).
inline void see(VisibilityTensors& t, const TimeGrid& grid, Goal goal, int global_t, int k,
                int idx = 0) {
    const int s = (global_t - 1) / grid.steps_per_stage + 1;
    const int local = (global_t - 1) % grid.steps_per_stage + 1;
    for (int j = 0; j < t.slot_counts[s - 1][k]; ++j) {
        switch (goal) {
            case Goal::Target: t.v_plane[s - 1][k][j][idx].set(local - 1, true); break;
            case Goal::Station: t.w_plane[s - 1][k][j][idx].set(local - 1, true); break;
            case Goal::Sun: t.h_plane[s - 1][k][j].set(local - 1, true); break;
        }
    }
    switch (goal) {
        case Goal::Target: t.v_flat[k][idx].set(global_t - 1, true); break;
        case Goal::Station: t.w_flat[k][idx].set(global_t - 1, true); break;
        case Goal::Sun: t.h_flat[k].set(global_t - 1, true); break;
    }
}

// Uniform cost tensor: staying costs zero, every move costs `move_dv`.
inline CostTensor manual_costs(const ScenarioInstance& inst, double move_dv) {
    const int stages = inst.grid.stages;
    const int sats = inst.num_satellites();
    const int slots = inst.slot_spec.phase_count;
    CostTensor c;
    c.budget_mps.assign(sats, inst.constants.dv_budget_mps);
    c.battery_per_maneuver_kj = inst.constants.b_recon_kj;
    c.cost.resize(stages);
    for (int s = 1; s <= stages; ++s) {
        c.cost[s - 1].resize(sats);
        for (int k = 0; k < sats; ++k) {
            const int prev = s == 1 ? 1 : slots;
            c.cost[s - 1][k].assign(static_cast<std::size_t>(prev) * slots, move_dv);
            for (int i = 0; i < prev; ++i) {
                c.cost[s - 1][k][static_cast<std::size_t>(i) * slots + i] = 0.0;
            }
        }
    }
    return c;
}

// Plain row/bound evaluation of a fully specified assignment.
inline bool satisfies_model(const MilpModel& m, const std::vector<double>& x, double tol = 1e-6) {
    for (int c = 0; c < m.num_cols(); ++c) {
        if (x[c] < m.lower[c] - tol || x[c] > m.upper[c] + tol) return false;
    }
    for (int r = 0; r < m.num_rows(); ++r) {
        double act = 0.0;
        for (int e = m.row_start[r]; e < m.row_start[r + 1]; ++e) {
            act += m.value[e] * x[m.col_index[e]];
        }
        switch (m.sense[r]) {
            case RowSense::LE:
                if (act > m.rhs[r] + tol) return false;
                break;
            case RowSense::GE:
                if (act < m.rhs[r] - tol) return false;
                break;
            case RowSense::EQ:
                if (act > m.rhs[r] + tol || act < m.rhs[r] - tol) return false;
                break;
        }
    }
    return true;
}

} // namespace reosched::test

#endif // REOSCHED_TESTS_MANUAL_HPP
