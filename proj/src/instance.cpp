#include "reosched/instance.hpp"

#include "reosched/errors.hpp"

namespace reosched {

void PhysicalConstants::validate() const {
    if (d_obs_mb < 0 || d_comm_mb < 0 || b_obs_kj < 0 || b_comm_kj < 0 || b_charge_kj < 0 ||
        b_time_kj < 0 || b_recon_kj < 0 || dv_budget_mps < 0) {
        throw ConfigError("physical constants must be non-negative");
    }
    if (d_max_mb < d_min_mb) throw ConfigError("data capacity below data floor");
    if (b_max_kj < b_min_kj) throw ConfigError("battery capacity below battery floor");
    if (downlink_weight <= 1.0) throw ConfigError("downlink weight C must exceed 1");
    if (gb_to_mb != 1000.0 && gb_to_mb != 1024.0) {
        throw ConfigError("GB->MB factor must be 1000 or 1024");
    }
}

SlotGrid build_slot_grid(const ScenarioInstance& inst) {
    SlotGrid grid;
    grid.kind = inst.slot_spec.kind;
    const int stages = inst.grid.stages;
    const int sats = inst.num_satellites();
    grid.slots.resize(stages + 1);
    grid.slots[0].resize(sats);
    for (int k = 0; k < sats; ++k) grid.slots[0][k] = {inst.satellites[k]};
    for (int s = 1; s <= stages; ++s) {
        grid.slots[s].resize(sats);
        for (int k = 0; k < sats; ++k) {
            if (inst.slot_spec.kind == SlotKind::PhaseOnly) {
                grid.slots[s][k] = build_phase_slots(inst.satellites[k], inst.slot_spec.phase_count);
            } else {
                grid.slots[s][k] = build_plane_phase_slots(inst.satellites[k], inst.slot_spec.phase_count,
                                                           inst.slot_spec.plane_options,
                                                           inst.constants.dv_budget_mps,
                                                           inst.slot_spec.plane_scale);
            }
        }
    }
    return grid;
}

const SlotGrid& ScenarioInstance::slot_grid() const {
    if (!slot_grid_) slot_grid_ = std::make_shared<const SlotGrid>(build_slot_grid(*this));
    return *slot_grid_;
}

const VisibilityTensors& ScenarioInstance::visibility() const {
    if (!tensors_) tensors_ = std::make_shared<const VisibilityTensors>(build_tensors(*this));
    return *tensors_;
}

const CostTensor& ScenarioInstance::costs() const {
    if (!costs_) costs_ = std::make_shared<const CostTensor>(build_cost_tensor(*this));
    return *costs_;
}

void ScenarioInstance::invalidate_caches() const {
    slot_grid_.reset();
    tensors_.reset();
    costs_.reset();
}

void ScenarioInstance::adopt_visibility(VisibilityTensors t) const {
    tensors_ = std::make_shared<const VisibilityTensors>(std::move(t));
}

void ScenarioInstance::adopt_costs(CostTensor c) const {
    costs_ = std::make_shared<const CostTensor>(std::move(c));
}

} // namespace reosched
