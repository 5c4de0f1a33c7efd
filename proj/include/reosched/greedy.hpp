#ifndef REOSCHED_GREEDY_HPP
#define REOSCHED_GREEDY_HPP

#include "reosched/formulations.hpp"
#include "reosched/instance.hpp"
#include "reosched/schedule.hpp"

namespace reosched {

// Chronological warm-start heuristic: at each step prefer downlink over
// observation over charging, committing a task only when the storage rules
// allow it now and a charge-when-possible continuation stays above the
// battery floor. Slot-resolved variants stay on the zero-cost stay-put path.
// The result always passes the validator (the empty schedule is feasible).
Schedule greedy_heuristic(const ScenarioInstance& instance, Formulation formulation);

// Subproblem variant over stages [carry.stage_cursor, .. + lookahead].
Schedule greedy_heuristic_window(const ScenarioInstance& instance, const CarryState& carry,
                                 int lookahead);

} // namespace reosched

#endif // REOSCHED_GREEDY_HPP
