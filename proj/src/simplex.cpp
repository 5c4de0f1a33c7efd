#include "reosched/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "reosched/errors.hpp"

namespace reosched {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kRefactorInterval = 100;
} // namespace

SimplexSolver::SimplexSolver(const MilpModel& model, Tolerances tol) : tol_(tol) {
    n_ = model.num_cols();
    m_ = model.num_rows();
    obj_ = model.objective;
    rhs_ = model.rhs;
    cols_.resize(n_);
    for (int r = 0; r < m_; ++r) {
        for (int e = model.row_start[r]; e < model.row_start[r + 1]; ++e) {
            cols_[model.col_index[e]].idx.push_back(r);
            cols_[model.col_index[e]].val.push_back(model.value[e]);
        }
    }
    logical_lo_.resize(m_);
    logical_hi_.resize(m_);
    for (int r = 0; r < m_; ++r) {
        switch (model.sense[r]) {
            case RowSense::LE: logical_lo_[r] = 0.0; logical_hi_[r] = kInf; break;
            case RowSense::GE: logical_lo_[r] = -kInf; logical_hi_[r] = 0.0; break;
            case RowSense::EQ: logical_lo_[r] = 0.0; logical_hi_[r] = 0.0; break;
        }
    }
}

void SimplexSolver::scatter_column(int var, std::vector<double>& dense) const {
    std::fill(dense.begin(), dense.end(), 0.0);
    if (var < n_) {
        const Column& c = cols_[var];
        for (std::size_t e = 0; e < c.idx.size(); ++e) dense[c.idx[e]] = c.val[e];
    } else {
        dense[var - n_] = 1.0;
    }
}

double SimplexSolver::column_dot(int var, const std::vector<double>& dense) const {
    if (var >= n_) return dense[var - n_];
    const Column& c = cols_[var];
    double s = 0.0;
    for (std::size_t e = 0; e < c.idx.size(); ++e) s += c.val[e] * dense[c.idx[e]];
    return s;
}

bool SimplexSolver::factorize() {
    lu_.assign(static_cast<std::size_t>(m_) * m_, 0.0);
    perm_.resize(m_);
    etas_.clear();
    // Basis columns into a dense row-major matrix.
    std::vector<double> colbuf(m_);
    for (int p = 0; p < m_; ++p) {
        scatter_column(basic_[p], colbuf);
        for (int r = 0; r < m_; ++r) lu_[static_cast<std::size_t>(r) * m_ + p] = colbuf[r];
    }
    for (int r = 0; r < m_; ++r) perm_[r] = r;
    for (int k = 0; k < m_; ++k) {
        int piv = k;
        double best = std::fabs(lu_[static_cast<std::size_t>(k) * m_ + k]);
        for (int r = k + 1; r < m_; ++r) {
            const double v = std::fabs(lu_[static_cast<std::size_t>(r) * m_ + k]);
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best < 1e-12) return false; // singular basis
        if (piv != k) {
            for (int j = 0; j < m_; ++j) {
                std::swap(lu_[static_cast<std::size_t>(k) * m_ + j],
                          lu_[static_cast<std::size_t>(piv) * m_ + j]);
            }
            std::swap(perm_[k], perm_[piv]);
        }
        const double pivot = lu_[static_cast<std::size_t>(k) * m_ + k];
        for (int r = k + 1; r < m_; ++r) {
            double& l = lu_[static_cast<std::size_t>(r) * m_ + k];
            if (l == 0.0) continue;
            l /= pivot;
            const double factor = l;
            const double* src = &lu_[static_cast<std::size_t>(k) * m_];
            double* dst = &lu_[static_cast<std::size_t>(r) * m_];
            for (int j = k + 1; j < m_; ++j) dst[j] -= factor * src[j];
        }
    }
    factor_valid_ = true;
    return true;
}

void SimplexSolver::ftran(std::vector<double>& v) const {
    // Solve B z = v using PA = LU: first permute, then the triangles, then
    // apply the product-form updates in order.
    std::vector<double> w(m_);
    for (int r = 0; r < m_; ++r) w[r] = v[perm_[r]];
    for (int r = 1; r < m_; ++r) {
        double s = w[r];
        const double* row = &lu_[static_cast<std::size_t>(r) * m_];
        for (int j = 0; j < r; ++j) s -= row[j] * w[j];
        w[r] = s;
    }
    for (int r = m_ - 1; r >= 0; --r) {
        double s = w[r];
        const double* row = &lu_[static_cast<std::size_t>(r) * m_];
        for (int j = r + 1; j < m_; ++j) s -= row[j] * w[j];
        w[r] = s / row[r];
    }
    for (const Eta& eta : etas_) {
        const double zr = w[eta.row] / eta.w[eta.row];
        if (zr != 0.0) {
            for (int r = 0; r < m_; ++r) w[r] -= eta.w[r] * zr;
        }
        w[eta.row] = zr;
    }
    v.swap(w);
}

void SimplexSolver::btran(std::vector<double>& v) const {
    std::vector<double> w = v;
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
        const Eta& eta = *it;
        double s = w[eta.row];
        for (int r = 0; r < m_; ++r) {
            if (r != eta.row) s -= eta.w[r] * w[r];
        }
        w[eta.row] = s / eta.w[eta.row];
    }
    // Solve B^T y = w with PA = LU: U^T first, then L^T, then un-permute.
    for (int r = 0; r < m_; ++r) {
        double s = w[r];
        for (int j = 0; j < r; ++j) s -= lu_[static_cast<std::size_t>(j) * m_ + r] * w[j];
        w[r] = s / lu_[static_cast<std::size_t>(r) * m_ + r];
    }
    for (int r = m_ - 1; r >= 0; --r) {
        double s = w[r];
        for (int j = r + 1; j < m_; ++j) s -= lu_[static_cast<std::size_t>(j) * m_ + r] * w[j];
        w[r] = s;
    }
    std::vector<double> out(m_);
    for (int r = 0; r < m_; ++r) out[perm_[r]] = w[r];
    v.swap(out);
}

void SimplexSolver::compute_basic_values() {
    // xB = B^{-1} (rhs - N xN)
    std::vector<double> r = rhs_;
    for (int var = 0; var < n_ + m_; ++var) {
        if (status_[var] == VarStatus::Basic) continue;
        const double xv = status_[var] == VarStatus::AtLower ? bound_lo(var) : bound_hi(var);
        if (xv == 0.0) continue;
        if (var < n_) {
            const Column& c = cols_[var];
            for (std::size_t e = 0; e < c.idx.size(); ++e) r[c.idx[e]] -= c.val[e] * xv;
        } else {
            r[var - n_] -= xv;
        }
    }
    ftran(r);
    x_basic_ = std::move(r);
}

double SimplexSolver::infeasibility(std::vector<double>* grad) {
    double total = 0.0;
    if (grad) grad->assign(m_, 0.0);
    for (int p = 0; p < m_; ++p) {
        const int var = basic_[p];
        const double v = x_basic_[p];
        const double lo = bound_lo(var), hi = bound_hi(var);
        if (v < lo - tol_.feasibility) {
            total += lo - v;
            if (grad) (*grad)[p] = 1.0; // maximize -f: increasing xB reduces f
        } else if (v > hi + tol_.feasibility) {
            total += v - hi;
            if (grad) (*grad)[p] = -1.0;
        }
    }
    return total;
}

LpResult SimplexSolver::solve(const std::vector<double>& lower, const std::vector<double>& upper,
                              const std::vector<VarStatus>* warm, std::int64_t iteration_limit) {
    lo_ = lower;
    hi_ = upper;
    if (static_cast<int>(lo_.size()) != n_ || static_cast<int>(hi_.size()) != n_) {
        throw InternalError("simplex bounds size mismatch");
    }
    LpResult result;

    // Install the warm basis when it is structurally sound, otherwise start
    // from the all-logical basis.
    bool use_warm = false;
    if (warm != nullptr && static_cast<int>(warm->size()) == n_ + m_) {
        int basics = 0;
        for (VarStatus s : *warm) basics += s == VarStatus::Basic;
        use_warm = basics == m_;
    }
    const std::vector<VarStatus> previous = status_;
    if (use_warm) {
        status_ = *warm;
    } else {
        status_.assign(n_ + m_, VarStatus::AtLower);
        for (int v = 0; v < n_ + m_; ++v) {
            if (bound_lo(v) == -kInf) status_[v] = VarStatus::AtUpper;
        }
        for (int r = 0; r < m_; ++r) status_[n_ + r] = VarStatus::Basic;
    }
    std::vector<int> new_basic;
    new_basic.reserve(m_);
    for (int v = 0; v < n_ + m_; ++v) {
        if (status_[v] == VarStatus::Basic) new_basic.push_back(v);
    }
    const bool same_basis = factor_valid_ && new_basic == basic_ && previous == status_;
    basic_ = std::move(new_basic);
    basis_pos_.assign(n_ + m_, -1);
    for (int p = 0; p < m_; ++p) basis_pos_[basic_[p]] = p;
    if (!same_basis || static_cast<int>(etas_.size()) > kRefactorInterval) {
        if (!factorize()) {
            // Singular warm basis: fall back to the all-logical start.
            status_.assign(n_ + m_, VarStatus::AtLower);
            for (int v = 0; v < n_ + m_; ++v) {
                if (bound_lo(v) == -kInf) status_[v] = VarStatus::AtUpper;
            }
            basic_.clear();
            for (int r = 0; r < m_; ++r) {
                status_[n_ + r] = VarStatus::Basic;
                basic_.push_back(n_ + r);
            }
            basis_pos_.assign(n_ + m_, -1);
            for (int p = 0; p < m_; ++p) basis_pos_[basic_[p]] = p;
            if (!factorize()) {
                result.status = LpStatus::Numerical;
                return result;
            }
        }
    }
    compute_basic_values();

    const std::int64_t max_iters =
        iteration_limit > 0 ? iteration_limit : 200LL * (n_ + m_) + 20000;
    std::int64_t iter = 0;
    int stall = 0;
    bool bland = false;
    double last_progress_metric = -kInf;
    std::vector<double> pricing(m_), wcol(m_);

    bool phase1 = infeasibility(nullptr) > tol_.feasibility * (1 + m_);

    while (true) {
        if (iter++ > max_iters) {
            result.status = LpStatus::IterationLimit;
            result.iterations = static_cast<int>(iter);
            return result;
        }
        if (static_cast<int>(etas_.size()) >= kRefactorInterval) {
            if (!factorize()) {
                result.status = LpStatus::Numerical;
                return result;
            }
            compute_basic_values();
        }

        // Pricing vector y = B^{-T} c_B (phase-2 costs or the infeasibility
        // gradient in phase 1).
        double inf_now = 0.0;
        if (phase1) {
            inf_now = infeasibility(&pricing);
            if (inf_now <= tol_.feasibility * (1 + m_)) {
                phase1 = false;
                stall = 0;
                bland = false;
                last_progress_metric = -kInf;
                continue;
            }
        } else {
            for (int p = 0; p < m_; ++p) pricing[p] = cost(basic_[p]);
        }
        btran(pricing);

        // Entering variable.
        int enter = -1;
        double best_score = 0.0;
        int enter_dir = +1;
        for (int v = 0; v < n_ + m_; ++v) {
            if (status_[v] == VarStatus::Basic) continue;
            const double lo = bound_lo(v), hi = bound_hi(v);
            if (hi - lo < tol_.feasibility) continue; // fixed
            const double d = cost(v) * (phase1 ? 0.0 : 1.0) - column_dot(v, pricing);
            if (status_[v] == VarStatus::AtLower) {
                if (d > tol_.reduced_cost) {
                    if (bland) {
                        enter = v;
                        enter_dir = +1;
                        break;
                    }
                    if (d > best_score) {
                        best_score = d;
                        enter = v;
                        enter_dir = +1;
                    }
                }
            } else {
                if (d < -tol_.reduced_cost) {
                    if (bland) {
                        enter = v;
                        enter_dir = -1;
                        break;
                    }
                    if (-d > best_score) {
                        best_score = -d;
                        enter = v;
                        enter_dir = -1;
                    }
                }
            }
        }
        if (enter < 0) {
            if (phase1) {
                result.status = LpStatus::Infeasible;
                result.iterations = static_cast<int>(iter);
                result.statuses = status_;
                return result;
            }
            break; // optimal
        }

        scatter_column(enter, wcol);
        ftran(wcol);

        // Ratio test: how far the entering variable can move.
        const double span = bound_hi(enter) - bound_lo(enter);
        double theta = span;
        int leave_pos = -1;
        double leave_bound = 0.0;
        double best_pivot_mag = 0.0;
        for (int p = 0; p < m_; ++p) {
            const double delta = enter_dir * wcol[p]; // xB[p] moves by -theta*delta
            if (std::fabs(delta) < tol_.pivot) continue;
            const int var = basic_[p];
            const double v = x_basic_[p];
            const double lo = bound_lo(var), hi = bound_hi(var);
            double limit = kInf;
            double hit_bound = 0.0;
            if (phase1 && v < lo - tol_.feasibility) {
                // Infeasible below: blocks only when rising back to its bound.
                if (delta < 0) {
                    limit = (v - lo) / delta;
                    hit_bound = lo;
                }
            } else if (phase1 && v > hi + tol_.feasibility) {
                if (delta > 0) {
                    limit = (v - hi) / delta;
                    hit_bound = hi;
                }
            } else if (delta > 0) {
                if (lo == -kInf) continue;
                limit = (v - lo) / delta;
                hit_bound = lo;
            } else {
                if (hi == kInf) continue;
                limit = (v - hi) / delta;
                hit_bound = hi;
            }
            if (limit < -tol_.feasibility) limit = 0.0;
            limit = std::fmax(0.0, limit);
            if (limit < theta - 1e-12 ||
                (limit < theta + 1e-12 && std::fabs(wcol[p]) > best_pivot_mag)) {
                theta = limit;
                leave_pos = p;
                leave_bound = hit_bound;
                best_pivot_mag = std::fabs(wcol[p]);
            }
        }

        if (theta == kInf) {
            result.status = LpStatus::Unbounded;
            result.iterations = static_cast<int>(iter);
            result.statuses = status_;
            return result;
        }

        // Stall bookkeeping: switch to Bland's rule on long degenerate runs.
        const double metric = phase1 ? -inf_now : 0.0;
        if (theta > 1e-10 || (phase1 && metric > last_progress_metric + 1e-12)) {
            stall = 0;
            if (bland) bland = false;
            last_progress_metric = metric;
        } else if (++stall > 400) {
            bland = true;
        }

        // Apply the step.
        if (theta > 0.0) {
            for (int p = 0; p < m_; ++p) x_basic_[p] -= theta * enter_dir * wcol[p];
        }
        if (leave_pos < 0) {
            // Bound flip: the entering variable crosses to its other bound.
            status_[enter] =
                status_[enter] == VarStatus::AtLower ? VarStatus::AtUpper : VarStatus::AtLower;
            continue;
        }
        const int leave_var = basic_[leave_pos];
        const double enter_from =
            status_[enter] == VarStatus::AtLower ? bound_lo(enter) : bound_hi(enter);
        status_[leave_var] = leave_bound == bound_lo(leave_var) ? VarStatus::AtLower
                                                                : VarStatus::AtUpper;
        basis_pos_[leave_var] = -1;
        status_[enter] = VarStatus::Basic;
        basic_[leave_pos] = enter;
        basis_pos_[enter] = leave_pos;
        x_basic_[leave_pos] = enter_from + theta * enter_dir;
        etas_.push_back({leave_pos, wcol});
    }

    // Assemble the structural solution.
    result.values.assign(n_, 0.0);
    for (int v = 0; v < n_; ++v) {
        result.values[v] = status_[v] == VarStatus::AtLower ? bound_lo(v) : bound_hi(v);
    }
    for (int p = 0; p < m_; ++p) {
        if (basic_[p] < n_) result.values[basic_[p]] = x_basic_[p];
    }
    double z = 0.0;
    for (int v = 0; v < n_; ++v) z += obj_[v] * result.values[v];
    result.objective = z;
    result.status = LpStatus::Optimal;
    result.statuses = status_;
    result.iterations = static_cast<int>(iter);
    return result;
}

LpResult solve_lp(const MilpModel& model, Tolerances tol) {
    SimplexSolver solver(model, tol);
    return solver.solve(model.lower, model.upper);
}

} // namespace reosched
