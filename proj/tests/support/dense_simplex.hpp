#ifndef REOSCHED_TESTS_DENSE_SIMPLEX_HPP
#define REOSCHED_TESTS_DENSE_SIMPLEX_HPP

#include <cmath>
#include <vector>

// Textbook two-phase tableau simplex, written independently of the library's
// revised implementation: everything is converted to standard form
// (maximize, equalities, variables >= 0) with explicit slack and artificial
// columns and a dense tableau. Only suitable for tiny problems; used purely
// as a second-opinion oracle.
namespace reosched::test {

struct DenseLp {
    // maximize c'x subject to rows (sense: -1 '<=', 0 '=', +1 '>='),
    // 0 <= x <= u (u may be +inf).
    std::vector<std::vector<double>> a;
    std::vector<int> sense;
    std::vector<double> b;
    std::vector<double> c;
    std::vector<double> u;
};

struct DenseResult {
    enum Status { Optimal, Infeasible, Unbounded } status = Infeasible;
    double objective = 0.0;
    std::vector<double> x;
};

inline DenseResult dense_simplex_solve(const DenseLp& input) {
    constexpr double kEps = 1e-9;
    const double kInf = std::numeric_limits<double>::infinity();

    // Expand finite upper bounds into explicit rows, then standardize.
    std::vector<std::vector<double>> a = input.a;
    std::vector<int> sense = input.sense;
    std::vector<double> b = input.b;
    const int n = static_cast<int>(input.c.size());
    for (int j = 0; j < n; ++j) {
        if (input.u[j] < kInf) {
            std::vector<double> row(n, 0.0);
            row[j] = 1.0;
            a.push_back(row);
            sense.push_back(-1);
            b.push_back(input.u[j]);
        }
    }
    int m = static_cast<int>(a.size());
    // Flip rows to make every rhs non-negative.
    for (int r = 0; r < m; ++r) {
        if (b[r] < 0) {
            for (double& v : a[r]) v = -v;
            b[r] = -b[r];
            sense[r] = -sense[r];
        }
    }
    // Columns: n structural + slacks/surplus + artificials.
    int total = n;
    std::vector<int> slack_col(m, -1), art_col(m, -1);
    for (int r = 0; r < m; ++r) {
        if (sense[r] == -1) slack_col[r] = total++;
        if (sense[r] == +1) slack_col[r] = total++; // surplus (coef -1)
    }
    for (int r = 0; r < m; ++r) {
        if (sense[r] != -1) art_col[r] = total++; // '=' and '>=' need artificials
    }
    std::vector<std::vector<double>> tab(m, std::vector<double>(total + 1, 0.0));
    std::vector<int> basis(m, -1);
    for (int r = 0; r < m; ++r) {
        for (int j = 0; j < n; ++j) tab[r][j] = a[r][j];
        if (sense[r] == -1) {
            tab[r][slack_col[r]] = 1.0;
            basis[r] = slack_col[r];
        } else if (sense[r] == +1) {
            tab[r][slack_col[r]] = -1.0;
        }
        if (art_col[r] >= 0) {
            tab[r][art_col[r]] = 1.0;
            basis[r] = art_col[r];
        }
        tab[r][total] = b[r];
    }

    const auto pivot = [&](int pr, int pc) {
        const double pv = tab[pr][pc];
        for (double& v : tab[pr]) v /= pv;
        for (int r = 0; r < m; ++r) {
            if (r == pr || std::fabs(tab[r][pc]) < kEps) continue;
            const double f = tab[r][pc];
            for (int j = 0; j <= total; ++j) tab[r][j] -= f * tab[pr][j];
        }
        basis[pr] = pc;
    };

    std::vector<char> is_artificial(total, 0);
    for (int r = 0; r < m; ++r) {
        if (art_col[r] >= 0) is_artificial[art_col[r]] = 1;
    }

    // One optimization pass over the given objective row: enter the column
    // with the most positive reduced cost, leave by the minimum ratio.
    const auto optimize = [&](const std::vector<double>& obj, bool forbid_artificials) -> int {
        for (long iter = 0; iter < 200000; ++iter) {
            std::vector<double> z(total + 1, 0.0);
            for (int r = 0; r < m; ++r) {
                if (std::fabs(obj[basis[r]]) < kEps) continue;
                for (int j = 0; j <= total; ++j) z[j] += obj[basis[r]] * tab[r][j];
            }
            int pc = -1;
            double best = kEps;
            for (int j = 0; j < total; ++j) {
                if (forbid_artificials && is_artificial[j]) continue;
                const double d = obj[j] - z[j];
                if (d > best) {
                    best = d;
                    pc = j;
                }
            }
            if (pc < 0) return 0; // optimal
            int pr = -1;
            double ratio = kInf;
            for (int r = 0; r < m; ++r) {
                if (tab[r][pc] > kEps) {
                    const double q = tab[r][total] / tab[r][pc];
                    if (q < ratio - kEps || (q < ratio + kEps && basis[r] > (pr >= 0 ? basis[pr] : -1))) {
                        ratio = q;
                        pr = r;
                    }
                }
            }
            if (pr < 0) return 1; // unbounded
            pivot(pr, pc);
        }
        return 2;
    };

    // Phase 1: drive the artificials to zero.
    bool any_art = false;
    std::vector<double> p1(total + 1, 0.0);
    for (int r = 0; r < m; ++r) {
        if (art_col[r] >= 0) {
            p1[art_col[r]] = -1.0;
            any_art = true;
        }
    }
    DenseResult out;
    if (any_art) {
        if (optimize(p1, false) != 0) return out; // treat as infeasible
        double art_sum = 0.0;
        for (int r = 0; r < m; ++r) {
            if (is_artificial[basis[r]]) art_sum += tab[r][total];
        }
        if (art_sum > 1e-7) {
            out.status = DenseResult::Infeasible;
            return out;
        }
        // Pivot zero-valued basic artificials out so phase 2 cannot move
        // them off zero. A row with no usable pivot is redundant and inert.
        for (int r = 0; r < m; ++r) {
            if (!is_artificial[basis[r]]) continue;
            for (int j = 0; j < total; ++j) {
                if (!is_artificial[j] && std::fabs(tab[r][j]) > 1e-7) {
                    pivot(r, j);
                    break;
                }
            }
        }
    }
    // Phase 2.
    std::vector<double> p2(total + 1, 0.0);
    for (int j = 0; j < n; ++j) p2[j] = input.c[j];
    const int rc = optimize(p2, true);
    if (rc == 1) {
        out.status = DenseResult::Unbounded;
        return out;
    }
    if (rc != 0) return out;
    out.status = DenseResult::Optimal;
    out.x.assign(n, 0.0);
    for (int r = 0; r < m; ++r) {
        if (basis[r] < n) out.x[basis[r]] = tab[r][total];
    }
    out.objective = 0.0;
    for (int j = 0; j < n; ++j) out.objective += input.c[j] * out.x[j];
    return out;
}

} // namespace reosched::test

#endif // REOSCHED_TESTS_DENSE_SIMPLEX_HPP
