#ifndef REOSCHED_SIMPLEX_HPP
#define REOSCHED_SIMPLEX_HPP

#include <cstdint>
#include <vector>

#include "reosched/milp_model.hpp"

namespace reosched {

// Centralized numeric tolerances (feasibility matches the validator, the
// integrality tolerance matches common commercial defaults).
struct Tolerances {
    double feasibility = 1e-6;
    double integrality = 1e-5;
    double reduced_cost = 1e-9;
    double pivot = 1e-8;
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit, Numerical };

enum class VarStatus : std::int8_t { AtLower = 0, AtUpper = 1, Basic = 2 };

struct LpResult {
    LpStatus status = LpStatus::Numerical;
    double objective = 0.0;
    std::vector<double> values;      // structural variable values
    std::vector<VarStatus> statuses; // structural + logical, reusable as warm start
    int iterations = 0;
};

// Bounded-variable primal revised simplex (maximization) over one model's
// constraint matrix. Every row gets a logical variable turning it into an
// equality; the all-logical basis starts phase 1. The factorization is a
// dense LU with product-form updates, refreshed periodically. Dantzig
// pricing with a Bland fallback once the objective stalls.
//
// The matrix is fixed at construction; bounds may differ per solve, which is
// what branch and bound needs.
class SimplexSolver {
public:
    explicit SimplexSolver(const MilpModel& model, Tolerances tol = {});

    int num_structural() const { return n_; }
    int num_rows() const { return m_; }

    // Solves max c'x s.t. rows, lower <= x <= upper (structural bounds).
    // `warm` may carry the statuses of a previous solve on the same matrix.
    LpResult solve(const std::vector<double>& lower, const std::vector<double>& upper,
                   const std::vector<VarStatus>* warm = nullptr, std::int64_t iteration_limit = -1);

private:
    // Column access: structural columns are stored sparse; logical column j
    // is the unit vector of its row.
    struct Column {
        std::vector<int> idx;
        std::vector<double> val;
    };

    double bound_lo(int var) const { return var < n_ ? lo_[var] : logical_lo_[var - n_]; }
    double bound_hi(int var) const { return var < n_ ? hi_[var] : logical_hi_[var - n_]; }
    double cost(int var) const { return var < n_ ? obj_[var] : 0.0; }

    void scatter_column(int var, std::vector<double>& dense) const;
    double column_dot(int var, const std::vector<double>& dense) const;

    bool factorize();
    void ftran(std::vector<double>& v) const;
    void btran(std::vector<double>& v) const;
    void compute_basic_values();
    double infeasibility(std::vector<double>* grad);

    int n_ = 0; // structural count
    int m_ = 0; // row count
    std::vector<Column> cols_;
    std::vector<double> obj_;
    std::vector<double> rhs_;
    std::vector<double> logical_lo_, logical_hi_;
    Tolerances tol_;

    // Per-solve state.
    std::vector<double> lo_, hi_;
    std::vector<VarStatus> status_;
    std::vector<int> basic_;        // variable in each basis position
    std::vector<int> basis_pos_;    // variable -> basis position or -1
    std::vector<double> x_basic_;   // values of basic variables
    std::vector<double> lu_;        // dense LU factors, row-major
    std::vector<int> perm_;
    struct Eta {
        int row;
        std::vector<double> w;
    };
    std::vector<Eta> etas_;
    bool factor_valid_ = false;
};

// Optimal basic solution of the model's LP relaxation.
LpResult solve_lp(const MilpModel& model, Tolerances tol = {});

} // namespace reosched

#endif // REOSCHED_SIMPLEX_HPP
