#ifndef REOSCHED_VALIDATOR_HPP
#define REOSCHED_VALIDATOR_HPP

#include <string>
#include <vector>

#include "reosched/instance.hpp"
#include "reosched/schedule.hpp"

namespace reosched {

// Constraint groups the independent validator reports against. The classes
// map onto the formulation's constraint families: task visibility windows,
// task exclusivity, data storage tracking/limits, battery tracking/limits,
// maneuver path continuity, the delta-v budget, and the rolled-forward
// bookkeeping of the staged procedure.
enum class ViolationClass {
    TargetVisibility,
    StationVisibility,
    SunVisibility,
    TaskExclusivity,
    DataTracking,
    DataCapacity,
    DataFloor,
    BatteryTracking,
    BatteryCapacity,
    BatteryFloor,
    FlowPath,
    ManeuverBudget,
    CarryConsistency,
};

const char* violation_class_name(ViolationClass c);

struct Violation {
    ViolationClass cls;
    std::string where;
};

// Checks a schedule directly against the instance data (tensors, costs,
// constants) with no reference to the MILP matrix. Full-horizon schedules
// are held to the complete constraint set of their formulation; the stored
// d/b series are re-derived and must match. Returns every violation found.
std::vector<Violation> validate_schedule(const ScenarioInstance& instance,
                                         const Schedule& schedule);

inline bool is_valid(const ScenarioInstance& instance, const Schedule& schedule) {
    return validate_schedule(instance, schedule).empty();
}

} // namespace reosched

#endif // REOSCHED_VALIDATOR_HPP
