#ifndef REOSCHED_SCHEDULE_HPP
#define REOSCHED_SCHEDULE_HPP

#include <cstdint>
#include <vector>

#include "reosched/instance.hpp"
#include "reosched/milp_model.hpp"

namespace reosched {

struct Maneuver {
    int stage = 0;     // arrival stage s (1-based)
    int from_slot = 0; // slot in stage s-1 (0-based; stage 0 is the singleton)
    int to_slot = 0;   // slot in stage s
    double dv_mps = 0.0;
};

// Task and storage series for one satellite within one stage. Arrays are
// stage-local, index t-1 for step t in 1..T^s.
struct StageTasks {
    std::vector<std::int16_t> observe_target;   // -1 = none, else target p (0-based)
    std::vector<std::int16_t> downlink_station; // -1 = none, else station g
    std::vector<std::uint8_t> charging;         // 0 / 1
    std::vector<double> data_mb;                // d at each step
    std::vector<double> battery_kj;             // b at each step

    void resize(int steps) {
        observe_target.assign(steps, -1);
        downlink_station.assign(steps, -1);
        charging.assign(steps, 0);
        data_mb.assign(steps, 0.0);
        battery_kj.assign(steps, 0.0);
    }
    int observations() const;
    int downlinks() const;
    int charges() const;
};

struct SatellitePlan {
    std::vector<Maneuver> maneuvers; // empty for the baseline problem
    std::vector<StageTasks> stages;  // indexed stage-1 over the covered range
};

// Realized decisions plus storage trajectories. Stages always follow the
// scenario grid; a baseline schedule is simply one with no maneuvers.
struct Schedule {
    Formulation formulation = Formulation::Eossp;
    int stage_begin = 1; // first covered stage (subproblem extracts may start later)
    int stage_end = 1;
    int steps_per_stage = 0;
    std::vector<SatellitePlan> sats;

    double objective_z = 0.0;
    double merit_z_gb = 0.0;

    int num_stages() const { return stage_end - stage_begin + 1; }
    const StageTasks& stage(int k, int s) const { return sats[k].stages[s - stage_begin]; }
    StageTasks& stage(int k, int s) { return sats[k].stages[s - stage_begin]; }

    // Total delta-v spent per satellite.
    std::vector<double> cost_ledger() const;
};

struct Score {
    double z = 0.0;
    double merit_gb = 0.0;
    int observations = 0;
    int downlinks = 0;
};

// z = sum(C * downlinks) + observations; Z = D_comm * downlinks (in GB).
Score score(const Schedule& schedule, const PhysicalConstants& constants);

// Recovers a schedule from a solver vector: checks integrality, decodes the
// decision coordinates, re-simulates the storage recurrences from the tasks,
// and verifies the solver trajectories against the re-simulation (1e-6).
// Throws ExtractionError on any mismatch.
Schedule extract_schedule(const MilpModel& model, const std::vector<double>& values,
                          const ScenarioInstance& instance);

// Forward-simulates the d/b series of a schedule in place from its tasks and
// maneuvers, given the storage levels entering stage_begin.
void resimulate_storage(const ScenarioInstance& instance, Schedule& schedule,
                        const std::vector<double>& d1_mb, const std::vector<double>& b1_kj);

} // namespace reosched

#endif // REOSCHED_SCHEDULE_HPP
