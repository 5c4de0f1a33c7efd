#ifndef REOSCHED_INSTANCE_HPP
#define REOSCHED_INSTANCE_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "reosched/constants.hpp"
#include "reosched/maneuver.hpp"
#include "reosched/orbital.hpp"
#include "reosched/time_grid.hpp"
#include "reosched/visibility.hpp"

namespace reosched {

struct GroundPoint {
    double lat_deg = 0.0;
    double lon_deg = 0.0;
    std::string name;
};

// How the per-stage slot grids are constructed.
struct SlotGridSpec {
    SlotKind kind = SlotKind::PhaseOnly;
    int phase_count = 1;      // J for phase_only, f for plane_and_phase
    int plane_options = 1;    // m for plane_and_phase
    double plane_scale = 0.75; // fraction of the budget sizing the widest plane change
};

// Full problem data for one scheduling scenario. Tensors and costs are built
// lazily on first use; an instance is not safe for concurrent *lazy* access,
// but distinct instances are independent.
struct ScenarioInstance {
    TimeGrid grid;
    std::vector<OrbitalElements> satellites; // K initial orbits
    SlotGridSpec slot_spec;
    std::vector<GroundPoint> targets;  // P
    std::vector<GroundPoint> stations; // G
    PhysicalConstants constants;
    ViewGeometry geometry;
    std::uint64_t seed = 0;

    int num_satellites() const { return static_cast<int>(satellites.size()); }
    int num_targets() const { return static_cast<int>(targets.size()); }
    int num_stations() const { return static_cast<int>(stations.size()); }

    // Slot grid per the spec above (stage 0 = initial singleton). Built once.
    const SlotGrid& slot_grid() const;

    // Lazy tensor / cost access; built on first call.
    const VisibilityTensors& visibility() const;
    const CostTensor& costs() const;

    // Drops cached derived data (used after mutating fields in tests/tools).
    void invalidate_caches() const;

    // Injects externally built data (e.g. loaded from a cache file).
    void adopt_visibility(VisibilityTensors t) const;
    void adopt_costs(CostTensor c) const;

private:
    mutable std::shared_ptr<const SlotGrid> slot_grid_;
    mutable std::shared_ptr<const VisibilityTensors> tensors_;
    mutable std::shared_ptr<const CostTensor> costs_;
};

// Builds the per-stage slot grid from the spec (free function so tests can
// target it directly).
SlotGrid build_slot_grid(const ScenarioInstance& instance);

} // namespace reosched

#endif // REOSCHED_INSTANCE_HPP
