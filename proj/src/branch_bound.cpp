#include "reosched/branch_bound.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "reosched/errors.hpp"

namespace reosched {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kPosInf = std::numeric_limits<double>::infinity();

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}
} // namespace

CompletionPlan::CompletionPlan(const MilpModel& model) {
    const int rows = model.num_rows();
    const int cols = model.num_cols();
    std::vector<char> known(cols, 0);
    for (int c = 0; c < cols; ++c) {
        if (model.binary[c] || model.upper[c] - model.lower[c] < 1e-12) known[c] = 1;
    }
    std::vector<char> used(rows, 0);
    bool progress = true;
    while (progress) {
        progress = false;
        for (int r = 0; r < rows; ++r) {
            if (used[r] || model.sense[r] != RowSense::EQ) continue;
            int unknown = -1;
            int count = 0;
            for (int e = model.row_start[r]; e < model.row_start[r + 1]; ++e) {
                const int c = model.col_index[e];
                if (!known[c]) {
                    unknown = c;
                    if (++count > 1) break;
                }
            }
            if (count == 1) {
                used[r] = 1;
                known[unknown] = 1;
                row_order_.push_back(r);
                var_of_row_.push_back(unknown);
                progress = true;
            }
        }
    }
    supported_ = std::all_of(known.begin(), known.end(), [](char k) { return k != 0; });
}

bool CompletionPlan::complete(const MilpModel& model, std::vector<double>& values,
                              double tol) const {
    for (int c = 0; c < model.num_cols(); ++c) {
        if (!model.binary[c] && model.upper[c] - model.lower[c] < 1e-12) {
            values[c] = model.lower[c];
        }
    }
    for (std::size_t i = 0; i < row_order_.size(); ++i) {
        const int r = row_order_[i];
        const int target = var_of_row_[i];
        double sum = 0.0;
        double coef = 0.0;
        for (int e = model.row_start[r]; e < model.row_start[r + 1]; ++e) {
            const int c = model.col_index[e];
            if (c == target) {
                coef = model.value[e];
            } else {
                sum += model.value[e] * values[c];
            }
        }
        values[target] = (model.rhs[r] - sum) / coef;
    }
    for (int c = 0; c < model.num_cols(); ++c) {
        if (values[c] < model.lower[c] - tol || values[c] > model.upper[c] + tol) return false;
    }
    for (int r = 0; r < model.num_rows(); ++r) {
        double act = 0.0;
        for (int e = model.row_start[r]; e < model.row_start[r + 1]; ++e) {
            act += model.value[e] * values[model.col_index[e]];
        }
        const double b = model.rhs[r];
        switch (model.sense[r]) {
            case RowSense::LE:
                if (act > b + tol) return false;
                break;
            case RowSense::GE:
                if (act < b - tol) return false;
                break;
            case RowSense::EQ:
                if (std::fabs(act - b) > tol) return false;
                break;
        }
    }
    return true;
}

BruteForceResult brute_force(const MilpModel& model) {
    std::vector<int> free_bins;
    for (int c = 0; c < model.num_cols(); ++c) {
        if (model.binary[c] && model.upper[c] - model.lower[c] > 0.5) free_bins.push_back(c);
    }
    if (static_cast<int>(free_bins.size()) > kBruteForceMaxBinaries) {
        throw ConfigError("brute force refuses more than " +
                          std::to_string(kBruteForceMaxBinaries) + " free binaries (got " +
                          std::to_string(free_bins.size()) + ")");
    }
    CompletionPlan plan(model);
    if (!plan.supported()) {
        throw ConfigError("brute force requires recurrence-resolvable continuous variables");
    }

    BruteForceResult best;
    best.objective = kNegInf;
    std::vector<double> values(model.num_cols(), 0.0);
    for (int c = 0; c < model.num_cols(); ++c) {
        if (model.binary[c]) values[c] = model.lower[c];
    }
    const std::uint64_t combos = std::uint64_t{1} << free_bins.size();
    for (std::uint64_t mask = 0; mask < combos; ++mask) {
        for (std::size_t b = 0; b < free_bins.size(); ++b) {
            values[free_bins[b]] = (mask >> b) & 1 ? 1.0 : 0.0;
        }
        if (!plan.complete(model, values, 1e-6)) continue;
        const double z = model.objective_value(values);
        if (z > best.objective) {
            best.objective = z;
            best.values = values;
            best.feasible = true;
        }
    }
    return best;
}

namespace {

struct Node {
    double parent_bound = kPosInf;
    std::vector<std::pair<int, std::pair<double, double>>> fixes; // col -> (lb, ub)
    std::vector<VarStatus> warm;
    bool retried = false;
};

// Search state shared by the workers. `open_bounds` tracks the bound of
// every node not yet fully processed (including nodes plunging inside a
// worker), so the reported dual bound stays honest.
struct Search {
    const MilpModel& model;
    SolveLimits limits;
    bool integral_objective;
    Tolerances tol;

    std::mutex mu;
    std::condition_variable cv;
    std::multimap<double, Node, std::greater<double>> open;
    std::multiset<double> open_bounds;
    double incumbent = kNegInf;
    std::vector<double> incumbent_values;
    bool have_incumbent = false;
    std::int64_t nodes = 0;
    int idle = 0;
    int total_workers = 1;
    bool stop = false;
    bool unbounded = false;
    bool limit_hit = false;
    bool degraded = false; // a node was dropped on numerical failure
    double t_start = 0.0;

    Search(const MilpModel& m, const SolveLimits& l) : model(m), limits(l) {
        integral_objective = m.integral_objective();
        tol.integrality = l.integrality_tolerance;
    }

    double best_open_bound_locked() const {
        return open_bounds.empty() ? kNegInf : *open_bounds.rbegin();
    }

    void unregister_bound(double b) { open_bounds.erase(open_bounds.find(b)); }

    bool cutoff_locked(double bound) const {
        if (!have_incumbent) return false;
        if (integral_objective) return std::floor(bound + 1e-6) <= incumbent + 1e-9;
        return bound <= incumbent + 1e-9;
    }

    bool hit_limits_locked() const {
        if (limits.time_limit_s > 0 && now_seconds() - t_start > limits.time_limit_s) return true;
        if (limits.node_limit > 0 && nodes >= limits.node_limit) return true;
        return false;
    }

    bool gap_reached_locked() const {
        if (!have_incumbent) return false;
        const double bound = std::max(best_open_bound_locked(), incumbent);
        const double gap = (bound - incumbent) / std::fmax(1.0, std::fabs(incumbent));
        return gap <= limits.gap_tolerance + 1e-12;
    }
};

void offer_incumbent_locked(Search& s, double obj, const std::vector<double>& values) {
    if (!s.have_incumbent || obj > s.incumbent + 1e-9) {
        s.incumbent = obj;
        s.incumbent_values = values;
        s.have_incumbent = true;
    }
}

void worker_loop(Search& s, const CompletionPlan* plan) {
    SimplexSolver lp(s.model, s.tol);
    std::vector<double> lower, upper;
    std::vector<Node> local;

    while (true) {
        Node node;
        bool have_node = false;
        {
            std::unique_lock<std::mutex> lk(s.mu);
            while (true) {
                if (s.stop) {
                    // Return local nodes so the final dual bound can see them.
                    for (Node& n : local) s.open.emplace(n.parent_bound, std::move(n));
                    return;
                }
                if (!local.empty()) {
                    node = std::move(local.back());
                    local.pop_back();
                    have_node = true;
                    break;
                }
                if (!s.open.empty()) {
                    node = std::move(s.open.begin()->second);
                    s.open.erase(s.open.begin());
                    have_node = true;
                    break;
                }
                ++s.idle;
                if (s.idle == s.total_workers) {
                    s.stop = true;
                    s.cv.notify_all();
                    --s.idle;
                    return;
                }
                s.cv.wait(lk);
                --s.idle;
            }
            (void)have_node;
            if (s.hit_limits_locked()) {
                s.limit_hit = true;
                s.stop = true;
                s.open.emplace(node.parent_bound, std::move(node));
                for (Node& n : local) s.open.emplace(n.parent_bound, std::move(n));
                s.cv.notify_all();
                return;
            }
            if (s.cutoff_locked(node.parent_bound) || s.gap_reached_locked()) {
                s.unregister_bound(node.parent_bound);
                continue;
            }
            ++s.nodes;
        }

        lower = s.model.lower;
        upper = s.model.upper;
        for (const auto& [col, bounds] : node.fixes) {
            lower[col] = bounds.first;
            upper[col] = bounds.second;
        }
        const LpResult res = lp.solve(lower, upper, node.warm.empty() ? nullptr : &node.warm);

        std::unique_lock<std::mutex> lk(s.mu);
        if (res.status == LpStatus::Unbounded) {
            s.unbounded = true;
            s.stop = true;
            s.cv.notify_all();
            return;
        }
        if (res.status == LpStatus::IterationLimit || res.status == LpStatus::Numerical) {
            if (!node.retried) {
                node.retried = true;
                node.warm.clear();
                s.open.emplace(node.parent_bound, std::move(node)); // bound stays registered
            } else {
                s.degraded = true; // bound claim would be unsound; remember it
                s.unregister_bound(node.parent_bound);
            }
            s.cv.notify_all();
            continue;
        }
        if (res.status != LpStatus::Optimal || s.cutoff_locked(res.objective)) {
            s.unregister_bound(node.parent_bound);
            s.cv.notify_all();
            continue;
        }

        // Most fractional binary; ties resolved toward the lowest column.
        int branch_col = -1;
        double best_frac = s.limits.integrality_tolerance;
        for (int c = 0; c < s.model.num_cols(); ++c) {
            if (!s.model.binary[c]) continue;
            const double f = res.values[c] - std::floor(res.values[c]);
            const double frac = std::fmin(f, 1.0 - f);
            if (frac > best_frac + 1e-12) {
                best_frac = frac;
                branch_col = c;
            }
        }

        if (branch_col < 0) {
            // Integral point: snap the binaries and re-derive the continuous
            // block so the incumbent vector satisfies the recurrences exactly.
            std::vector<double> values = res.values;
            for (int c = 0; c < s.model.num_cols(); ++c) {
                if (s.model.binary[c]) values[c] = std::round(values[c]);
            }
            if (plan != nullptr && plan->complete(s.model, values, 1e-6)) {
                offer_incumbent_locked(s, s.model.objective_value(values), values);
            } else {
                offer_incumbent_locked(s, res.objective, res.values);
            }
            s.unregister_bound(node.parent_bound);
            s.cv.notify_all();
            continue;
        }

        // Rounding heuristic from the fractional LP point.
        if (plan != nullptr) {
            std::vector<double> values = res.values;
            for (int c = 0; c < s.model.num_cols(); ++c) {
                if (s.model.binary[c]) values[c] = std::round(values[c]);
            }
            if (plan->complete(s.model, values, 1e-6)) {
                offer_incumbent_locked(s, s.model.objective_value(values), values);
            }
        }

        Node up, down;
        up.fixes = node.fixes;
        down.fixes = node.fixes;
        up.fixes.emplace_back(branch_col, std::make_pair(1.0, 1.0));
        down.fixes.emplace_back(branch_col, std::make_pair(0.0, 0.0));
        up.parent_bound = res.objective;
        down.parent_bound = res.objective;
        up.warm = res.statuses;
        down.warm = res.statuses;
        s.open_bounds.insert(up.parent_bound);
        s.open_bounds.insert(down.parent_bound);
        s.unregister_bound(node.parent_bound);
        // Plunge into the child on the side the LP already leans toward.
        const bool prefer_up = res.values[branch_col] >= 0.5;
        Node& first = prefer_up ? up : down;
        Node& second = prefer_up ? down : up;
        s.open.emplace(second.parent_bound, std::move(second));
        local.push_back(std::move(first));
        s.cv.notify_all();
    }
}

} // namespace

MilpSolution solve_milp(const MilpModel& model, const SolveLimits& limits,
                        const std::vector<double>* warm_start) {
    if (model.num_rows() > limits.max_rows_dense) {
        throw ConfigError("model has " + std::to_string(model.num_rows()) +
                          " rows; beyond the built-in solver's dense-factorization budget. "
                          "Export the model with export-lp and use an external solver.");
    }
    MilpSolution sol;
    const double t0 = now_seconds();
    Search search(model, limits);
    search.t_start = t0;
    search.total_workers = std::max(1, limits.threads);

    CompletionPlan plan(model);
    if (warm_start != nullptr) {
        std::vector<double> values = *warm_start;
        if (static_cast<int>(values.size()) == model.num_cols() && plan.supported() &&
            plan.complete(model, values, 1e-6)) {
            offer_incumbent_locked(search, model.objective_value(values), values);
        }
    }

    {
        SimplexSolver lp(model, search.tol);
        const LpResult res = lp.solve(model.lower, model.upper);
        if (res.status == LpStatus::Infeasible) {
            sol.status = MilpStatus::Infeasible;
            sol.wall_time_s = now_seconds() - t0;
            sol.bound = kNegInf;
            return sol;
        }
        if (res.status == LpStatus::Unbounded) {
            sol.status = MilpStatus::Unbounded;
            sol.wall_time_s = now_seconds() - t0;
            sol.bound = kPosInf;
            return sol;
        }
        if (res.status != LpStatus::Optimal) {
            throw InternalError("root LP did not converge");
        }
        Node root;
        root.parent_bound = res.objective;
        root.warm = res.statuses;
        search.open_bounds.insert(root.parent_bound);
        search.open.emplace(root.parent_bound, std::move(root));
    }

    if (search.total_workers == 1) {
        worker_loop(search, plan.supported() ? &plan : nullptr);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(search.total_workers);
        for (int w = 0; w < search.total_workers; ++w) {
            pool.emplace_back(worker_loop, std::ref(search), plan.supported() ? &plan : nullptr);
        }
        for (std::thread& th : pool) th.join();
    }

    sol.nodes = search.nodes;
    sol.wall_time_s = now_seconds() - t0;
    const double open_bound = search.best_open_bound_locked();
    sol.has_solution = search.have_incumbent;
    const bool exhausted = !search.limit_hit && !search.degraded;
    if (search.have_incumbent) {
        sol.values = search.incumbent_values;
        sol.objective = search.incumbent;
        sol.bound = std::max(search.incumbent, open_bound);
        sol.gap = (sol.bound - sol.objective) / std::fmax(1.0, std::fabs(sol.objective));
        sol.status = (exhausted || sol.gap <= limits.gap_tolerance + 1e-12)
                         ? MilpStatus::Optimal
                         : MilpStatus::FeasibleLimitHit;
    } else if (!exhausted) {
        sol.status = MilpStatus::NoSolutionLimitHit;
        sol.bound = open_bound;
        sol.gap = kPosInf;
    } else {
        sol.status = MilpStatus::Infeasible;
        sol.bound = kNegInf;
    }
    return sol;
}

} // namespace reosched
