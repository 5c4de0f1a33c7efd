#ifndef REOSCHED_MILP_MODEL_HPP
#define REOSCHED_MILP_MODEL_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace reosched {

// Decision-variable coordinate. Index conventions: stage and t are 1-based
// (stage-local t), sat / target / station / slot indices are 0-based; the
// printable names add 1 so they match the formulation's index sets.
enum class VarType : std::uint8_t {
    Maneuver, // x[s][k][i][j]
    Observe,  // y[s][k][t][p]
    Downlink, // q[s][k][t][g]
    Charge,   // h[s][k][t]
    Data,     // d[s][k][t]
    Battery,  // b[s][k][t]
};

struct VarKey {
    VarType type = VarType::Observe;
    int stage = 1;
    int sat = 0;
    int t = 0; // unused for Maneuver
    int a = 0; // p / g for tasks, from-slot i for Maneuver
    int b = 0; // to-slot j for Maneuver

    bool operator==(const VarKey&) const = default;
};

enum class RowType : std::uint8_t {
    FlowInit,       // one slot chosen out of the origin
    FlowCons,       // path continuity between consecutive stages
    Budget,         // per-satellite delta-v budget
    VisTarget,      // slot-coupled target visibility
    VisStation,     // slot-coupled station visibility
    VisSun,         // slot-coupled Sun visibility
    Exclusive,      // at most one task per step
    DataTrack,      // within-stage data recurrence
    DataGap,        // stage-gap data recurrence
    DataCap,        // storage headroom for observations
    DataFloor,      // downlink cannot overdraw storage
    BattInit,       // battery level entering the first modeled stage
    BattTrack,      // within-stage battery recurrence
    BattGap,        // stage-gap battery recurrence (maneuver cost posts here)
    BattCap,        // charging cannot exceed capacity
    BattFloor,      // per-step battery floor
    BattGapFloor,   // battery floor across a stage gap
    BattInitFloor,  // first-maneuver battery floor
};

struct RowKey {
    RowType type = RowType::Exclusive;
    int stage = 1;
    int sat = 0;
    int t = 0;
    int a = 0;

    bool operator==(const RowKey&) const = default;
};

enum class RowSense : char { LE = 'L', EQ = 'E', GE = 'G' };

enum class Formulation { Eossp, Reossp, Rhp };

// Model-level bookkeeping needed to turn a solution vector back into a
// schedule without re-deriving the builder's choices.
struct ModelMeta {
    Formulation formulation = Formulation::Eossp;
    int stage_begin = 1;
    int stage_end = 1;
    int satellites = 0;
    int steps = 0;   // steps per modeled stage (T for the baseline)
    int targets = 0;
    int stations = 0;
    int max_slots = 1;
    std::vector<double> d1_mb;       // storage entering stage_begin, per sat
    std::vector<double> b1_kj;       // battery entering stage_begin, per sat
    std::vector<double> budget_mps;  // budget row rhs, per sat
    std::vector<int> origin_slot;    // origin slot per sat (slot-resolved forms)
};

// Fast structured column lookup (no hashing); -1 where a coordinate was not
// materialized (infeasible arc).
struct ModelIndex {
    // x_col[l][k] is a (J_prev x J_cur) row-major table of column ids.
    std::vector<std::vector<std::vector<int>>> x_col;
    std::vector<std::vector<int>> x_prev_count; // J_prev per (l, k)
    std::vector<std::vector<int>> x_cur_count;  // J_cur per (l, k)
    // Contiguous blocks: col = base + (t-1)*extent + idx.
    std::vector<std::vector<int>> y_base, q_base, h_base, d_base, b_base;
    int stage_begin = 1;
    int targets = 0;
    int stations = 0;

    int li(int stage) const { return stage - stage_begin; }
    int x(int s, int k, int i, int j) const {
        return x_col[li(s)][k][i * x_cur_count[li(s)][k] + j];
    }
    int y(int s, int k, int t, int p) const { return y_base[li(s)][k] + (t - 1) * targets + p; }
    int q(int s, int k, int t, int g) const { return q_base[li(s)][k] + (t - 1) * stations + g; }
    int h(int s, int k, int t) const { return h_base[li(s)][k] + (t - 1); }
    int d(int s, int k, int t) const { return d_base[li(s)][k] + (t - 1); }
    int b(int s, int k, int t) const { return b_base[li(s)][k] + (t - 1); }
};

// Sparse mixed-binary linear model, maximization sense. Rows are stored CSR;
// columns carry bounds, integrality, and their decision coordinate.
struct MilpModel {
    // Columns.
    std::vector<double> lower, upper, objective;
    std::vector<std::uint8_t> binary;
    std::vector<VarKey> keys;

    // Rows, CSR.
    std::vector<int> row_start{0};
    std::vector<int> col_index;
    std::vector<double> value;
    std::vector<RowSense> sense;
    std::vector<double> rhs;
    std::vector<RowKey> row_keys;

    ModelMeta meta;
    ModelIndex index;

    // Name table for models read back from LP text (no decision coordinates).
    std::vector<std::string> parsed_names;

    int num_cols() const { return static_cast<int>(lower.size()); }
    int num_rows() const { return static_cast<int>(rhs.size()); }
    int num_binaries() const;

    // Deterministic zero-padded names derived from the decision coordinates.
    std::string col_name(int col) const;
    std::string row_name(int row) const;

    // Builder API.
    int add_col(const VarKey& key, double lb, double ub, bool is_binary, double obj);
    void add_row(const RowKey& key, RowSense s, double rhs_value,
                 const std::vector<std::pair<int, double>>& terms);

    // Objective value of a full assignment.
    double objective_value(const std::vector<double>& x) const;

    // True when every objective coefficient is integral (enables integer
    // bound rounding in the solver).
    bool integral_objective() const;
};

std::string var_type_prefix(VarType t);

} // namespace reosched

#endif // REOSCHED_MILP_MODEL_HPP
