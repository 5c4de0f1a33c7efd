#ifndef REOSCHED_BRANCH_BOUND_HPP
#define REOSCHED_BRANCH_BOUND_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "reosched/milp_model.hpp"
#include "reosched/simplex.hpp"

namespace reosched {

struct SolveLimits {
    double time_limit_s = 3600.0;     // wall clock
    double gap_tolerance = 0.0;       // relative MIP gap at which to stop
    double integrality_tolerance = 1e-5;
    std::int64_t node_limit = -1;     // optional
    int threads = 1;                  // > 1 enables node-parallel search
    int max_rows_dense = 20000;       // guard for the dense factorization
};

enum class MilpStatus {
    Optimal,
    FeasibleLimitHit,
    Infeasible,
    Unbounded,
    NoSolutionLimitHit,
};

struct MilpSolution {
    MilpStatus status = MilpStatus::NoSolutionLimitHit;
    std::vector<double> values;
    double objective = 0.0;
    double bound = 0.0; // best dual bound (maximization: an upper bound)
    double gap = 0.0;   // (bound - objective) / max(1, |objective|)
    std::int64_t nodes = 0;
    double wall_time_s = 0.0;
    bool has_solution = false;
};

// Best-bound branch and bound with depth-first plunging over the LP
// relaxation. Branches on the most fractional binary (ties: lowest column),
// seeds the incumbent by rounding + recurrence completion, and optionally
// starts from a known feasible vector. Deterministic with threads == 1.
MilpSolution solve_milp(const MilpModel& model, const SolveLimits& limits = {},
                        const std::vector<double>* warm_start = nullptr);

// Exhaustive enumeration over the free binaries; continuous variables are
// resolved by forward substitution of the equality rows (the storage
// recurrences). Refuses models with more than 25 free binaries or with
// continuous structure the substitution cannot resolve.
struct BruteForceResult {
    bool feasible = false;
    double objective = 0.0;
    std::vector<double> values;
};
BruteForceResult brute_force(const MilpModel& model);

inline constexpr int kBruteForceMaxBinaries = 25;

// Precomputed substitution order turning a binary assignment into a full
// vector: each scheduled equality row determines one continuous variable.
class CompletionPlan {
public:
    explicit CompletionPlan(const MilpModel& model);

    bool supported() const { return supported_; }

    // Fills the continuous entries of `values` (binaries must be set) and
    // checks every row and bound; returns false when infeasible.
    bool complete(const MilpModel& model, std::vector<double>& values, double tol) const;

private:
    bool supported_ = false;
    std::vector<int> row_order_;
    std::vector<int> var_of_row_;
};

} // namespace reosched

#endif // REOSCHED_BRANCH_BOUND_HPP
