#include <doctest.h>

#include <cmath>
#include <random>

#include "reosched/branch_bound.hpp"
#include "reosched/errors.hpp"
#include "reosched/formulations.hpp"
#include "reosched/greedy.hpp"
#include "reosched/lp_format.hpp"
#include "reosched/simplex.hpp"
#include "reosched/validator.hpp"
#include "support/dense_simplex.hpp"
#include "support/manual.hpp"
#include "support/toys.hpp"

using namespace reosched;
using namespace reosched::test;

namespace {

// Random small model with bounds [0, u], mixed senses, and a consistent
// right-hand side (built around a random feasible-ish point so a good share
// of draws are feasible).
MilpModel random_model(std::mt19937_64& rng, int cols, int rows, bool binaries) {
    std::uniform_real_distribution<double> coef(-4.0, 4.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    MilpModel m;
    for (int c = 0; c < cols; ++c) {
        const bool bin = binaries && unit(rng) < 0.7;
        const double ub = bin ? 1.0 : 1.0 + 4.0 * unit(rng);
        m.add_col({VarType::Charge, 1, 0, c + 1, 0, 0}, 0.0, ub, bin, coef(rng));
    }
    std::vector<double> anchor(cols);
    for (int c = 0; c < cols; ++c) anchor[c] = unit(rng) * m.upper[c];
    for (int r = 0; r < rows; ++r) {
        std::vector<std::pair<int, double>> terms;
        double act = 0.0;
        for (int c = 0; c < cols; ++c) {
            if (unit(rng) < 0.6) {
                const double v = coef(rng);
                terms.emplace_back(c, v);
                act += v * anchor[c];
            }
        }
        if (terms.empty()) continue;
        const double roll = unit(rng);
        // A slice of the rows ignores the anchor point, so a healthy share
        // of the draws end up infeasible.
        const double shift = unit(rng) < 0.2 ? -3.0 - 4.0 * unit(rng) : unit(rng);
        if (roll < 0.45) {
            m.add_row({RowType::Exclusive, 1, 0, r + 1, 0}, RowSense::LE, act + shift, terms);
        } else if (roll < 0.9) {
            m.add_row({RowType::Exclusive, 1, 0, r + 1, 0}, RowSense::GE, act - shift, terms);
        } else {
            m.add_row({RowType::Exclusive, 1, 0, r + 1, 0}, RowSense::EQ, act + shift / 4.0, terms);
        }
    }
    return m;
}

DenseLp to_dense(const MilpModel& m) {
    DenseLp lp;
    lp.c = m.objective;
    lp.u = m.upper;
    for (int r = 0; r < m.num_rows(); ++r) {
        std::vector<double> row(m.num_cols(), 0.0);
        for (int e = m.row_start[r]; e < m.row_start[r + 1]; ++e) {
            row[m.col_index[e]] = m.value[e];
        }
        lp.a.push_back(std::move(row));
        lp.sense.push_back(m.sense[r] == RowSense::LE ? -1 : (m.sense[r] == RowSense::GE ? 1 : 0));
        lp.b.push_back(m.rhs[r]);
    }
    return lp;
}

} // namespace

TEST_CASE("uncoupled positive binaries relax to their upper bounds") {
    MilpModel m;
    for (int c = 0; c < 6; ++c) {
        m.add_col({VarType::Charge, 1, 0, c + 1, 0, 0}, 0.0, 1.0, true, 1.0 + c);
    }
    const LpResult res = solve_lp(m);
    REQUIRE(res.status == LpStatus::Optimal);
    for (double v : res.values) CHECK(v == doctest::Approx(1.0));
    CHECK(res.objective == doctest::Approx(1 + 2 + 3 + 4 + 5 + 6));
}

TEST_CASE("LP relaxation bounds the integer optimum") {
    ScenarioInstance inst = toy_instance(55, 2, 1, 1, 24);
    const MilpModel model = build_eossp(inst);
    const LpResult lp = solve_lp(model);
    const MilpSolution milp = solve_milp(model);
    REQUIRE(lp.status == LpStatus::Optimal);
    REQUIRE(milp.status == MilpStatus::Optimal);
    CHECK(lp.objective >= milp.objective - 1e-6);
}

TEST_CASE("random LPs match an independent dense simplex") {
    std::mt19937_64 rng(20250810);
    int optimal_seen = 0, infeasible_seen = 0;
    for (int trial = 0; trial < 120; ++trial) {
        const MilpModel m = random_model(rng, 10, 10, false);
        const LpResult mine = solve_lp(m);
        const DenseResult oracle = dense_simplex_solve(to_dense(m));
        if (oracle.status == DenseResult::Optimal) {
            ++optimal_seen;
            REQUIRE_MESSAGE(mine.status == LpStatus::Optimal, "trial ", trial);
            CHECK(mine.objective ==
                  doctest::Approx(oracle.objective).epsilon(1e-7).scale(1.0 + std::fabs(oracle.objective)));
        } else if (oracle.status == DenseResult::Infeasible) {
            ++infeasible_seen;
            CHECK_MESSAGE(mine.status == LpStatus::Infeasible, "trial ", trial);
        }
        // (bounded boxes: unbounded cannot occur)
    }
    CHECK(optimal_seen > 40);
    CHECK(infeasible_seen > 10);
}

TEST_CASE("integral relaxations return at the root") {
    // Totally unimodular toy: an assignment-like structure solves integrally.
    MilpModel m;
    for (int c = 0; c < 4; ++c) {
        m.add_col({VarType::Charge, 1, 0, c + 1, 0, 0}, 0.0, 1.0, true, c == 0 || c == 3 ? 2.0 : 1.0);
    }
    m.add_row({RowType::Exclusive, 1, 0, 1, 0}, RowSense::LE, 1.0, {{0, 1.0}, {1, 1.0}});
    m.add_row({RowType::Exclusive, 1, 0, 2, 0}, RowSense::LE, 1.0, {{2, 1.0}, {3, 1.0}});
    const MilpSolution sol = solve_milp(m);
    REQUIRE(sol.status == MilpStatus::Optimal);
    CHECK(sol.nodes == 1);
    CHECK(sol.objective == doctest::Approx(4.0));
}

TEST_CASE("gap definition against a synthetic bound") {
    SolveLimits limits;
    limits.gap_tolerance = 0.5;
    limits.node_limit = 1; // stop immediately after the root
    ScenarioInstance inst = toy_instance(56, 2, 1, 1, 24);
    const MilpModel model = build_eossp(inst);
    const Schedule warm = greedy_heuristic(inst, Formulation::Eossp);
    const std::vector<double> vec = embed_schedule(model, warm);
    const MilpSolution sol = solve_milp(model, limits, &vec);
    if (sol.has_solution && sol.status == MilpStatus::Optimal) {
        CHECK(sol.gap <= limits.gap_tolerance + 1e-9);
    }
    CHECK(sol.bound >= sol.objective - 1e-9);
}

TEST_CASE("brute force refuses oversized or unstructured models") {
    MilpModel wide;
    for (int c = 0; c < 26; ++c) {
        wide.add_col({VarType::Charge, 1, 0, c + 1, 0, 0}, 0.0, 1.0, true, 1.0);
    }
    CHECK_THROWS_AS(brute_force(wide), ConfigError);

    // Continuous variable not resolvable from any equality: unsupported.
    MilpModel loose;
    loose.add_col({VarType::Data, 1, 0, 1, 0, 0}, 0.0, 5.0, false, 1.0);
    CHECK_THROWS_AS(brute_force(loose), ConfigError);

    // Zero binaries: evaluates the single resolved point.
    MilpModel fixed;
    fixed.add_col({VarType::Data, 1, 0, 1, 0, 0}, 2.0, 2.0, false, 3.0);
    const BruteForceResult res = brute_force(fixed);
    REQUIRE(res.feasible);
    CHECK(res.objective == doctest::Approx(6.0));
}

TEST_CASE("infeasible storage caps leave the all-zero schedule") {
    PhysicalConstants c = roomy_constants();
    c.d_max_mb = 0.0; // observations are impossible
    c.d_min_mb = 0.0;
    ScenarioInstance inst = manual_instance(1, 1, 4, 1, 1, 1, c);
    VisibilityTensors vis = zero_tensors(inst);
    see(vis, inst.grid, Goal::Target, 2, 0);
    inst.adopt_visibility(vis);
    inst.adopt_costs(manual_costs(inst, 0.0));
    const MilpModel model = build_eossp(inst);
    const BruteForceResult res = brute_force(model);
    REQUIRE(res.feasible);
    CHECK(res.objective == doctest::Approx(0.0));
}

TEST_CASE("branch and bound agrees with brute force on random tiny instances") {
    std::mt19937_64 rng(777);
    int checked = 0;
    for (int trial = 0; trial < 25; ++trial) {
        PhysicalConstants c;
        c.d_max_mb = 250.0;
        c.b_max_kj = 150.0;
        c.b_charge_kj = 25.0;
        ScenarioInstance inst = manual_instance(1 + static_cast<int>(rng() % 2), 1, 5, 1, 1, 2, c);
        VisibilityTensors vis = zero_tensors(inst);
        for (int g = 1; g <= inst.grid.total_steps; ++g) {
            if (rng() % 3 == 0) see(vis, inst.grid, Goal::Target, g, 0);
            if (rng() % 3 == 0) see(vis, inst.grid, Goal::Station, g, 0);
            if (rng() % 2 == 0) see(vis, inst.grid, Goal::Sun, g, 0);
        }
        inst.adopt_visibility(vis);
        inst.adopt_costs(manual_costs(inst, 200.0 + static_cast<double>(rng() % 400)));
        const MilpModel model =
            inst.grid.stages == 1 ? build_eossp(inst) : build_reossp(inst);
        int free_bins = 0;
        for (int col = 0; col < model.num_cols(); ++col) {
            free_bins += model.binary[col] && model.upper[col] > model.lower[col] + 0.5;
        }
        if (free_bins > 20) continue;
        const BruteForceResult brute = brute_force(model);
        const MilpSolution sol = solve_milp(model);
        REQUIRE(sol.status == MilpStatus::Optimal);
        REQUIRE(brute.feasible);
        CHECK_MESSAGE(sol.objective == doctest::Approx(brute.objective), "trial ", trial);
        ++checked;
    }
    CHECK(checked >= 15);
}

TEST_CASE("greedy schedules are always validator-feasible and never beat the optimum") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull}) {
        ScenarioInstance inst = toy_instance(seed, 2, 2, 3, 24);
        for (Formulation form : {Formulation::Eossp, Formulation::Reossp}) {
            const Schedule greedy = greedy_heuristic(inst, form);
            CHECK(validate_schedule(inst, greedy).empty());
            const MilpModel model =
                form == Formulation::Eossp ? build_eossp(inst) : build_reossp(inst);
            const std::vector<double> vec = embed_schedule(model, greedy);
            const MilpSolution sol = solve_milp(model, {}, &vec);
            REQUIRE(sol.status == MilpStatus::Optimal);
            CHECK(greedy.objective_z <= sol.objective + 1e-9);
        }
    }
}

TEST_CASE("single-window chain is solved optimally by the greedy pass") {
    PhysicalConstants c = roomy_constants();
    c.b_max_kj = 100.0;
    c.b_charge_kj = 5.0;
    ScenarioInstance inst = manual_instance(1, 1, 3, 1, 1, 1, c);
    VisibilityTensors vis = zero_tensors(inst);
    see(vis, inst.grid, Goal::Target, 1, 0);
    see(vis, inst.grid, Goal::Sun, 2, 0);
    see(vis, inst.grid, Goal::Station, 3, 0);
    inst.adopt_visibility(vis);
    inst.adopt_costs(manual_costs(inst, 0.0));
    const Schedule greedy = greedy_heuristic(inst, Formulation::Eossp);
    CHECK(greedy.objective_z == doctest::Approx(3.0));
    CHECK(brute_force(build_eossp(inst)).objective == doctest::Approx(3.0));
}

TEST_CASE("determinism: identical solves give identical vectors") {
    ScenarioInstance inst = toy_instance(91, 2, 2, 2, 24);
    const MilpModel model = build_reossp(inst);
    const MilpSolution a = solve_milp(model);
    const MilpSolution b = solve_milp(model);
    REQUIRE(a.status == MilpStatus::Optimal);
    REQUIRE(b.status == MilpStatus::Optimal);
    REQUIRE(a.values.size() == b.values.size());
    for (std::size_t i = 0; i < a.values.size(); ++i) CHECK(a.values[i] == b.values[i]);
    CHECK(a.nodes == b.nodes);
}

TEST_CASE("parallel mode reproduces the single-thread objective") {
    ScenarioInstance inst = toy_instance(92, 2, 2, 2, 24);
    const MilpModel model = build_reossp(inst);
    SolveLimits parallel;
    parallel.threads = 3;
    const MilpSolution single = solve_milp(model);
    const MilpSolution multi = solve_milp(model, parallel);
    REQUIRE(single.status == MilpStatus::Optimal);
    REQUIRE(multi.status == MilpStatus::Optimal);
    CHECK(single.objective == doctest::Approx(multi.objective));
}

TEST_CASE("LP export round-trips and lists binaries once") {
    ScenarioInstance inst = toy_instance(93, 2, 1, 2, 16);
    const MilpModel model = build_reossp(inst);
    const std::string text = export_lp(model);
    CHECK(text == export_lp(model)); // bit-exact for a fixed model

    const MilpModel back = parse_lp(text);
    REQUIRE(back.num_cols() == model.num_cols());
    REQUIRE(back.num_rows() == model.num_rows());
    REQUIRE(back.num_binaries() == model.num_binaries());

    // Identical triplet multisets keyed by (row position, column name).
    const auto triplets = [](const MilpModel& m) {
        std::vector<std::string> out;
        for (int r = 0; r < m.num_rows(); ++r) {
            for (int e = m.row_start[r]; e < m.row_start[r + 1]; ++e) {
                out.push_back(std::to_string(r) + "|" + m.col_name(m.col_index[e]) + "|" +
                              format_double(m.value[e]));
            }
            out.push_back(std::to_string(r) + "#" + std::string(1, static_cast<char>(m.sense[r])) +
                          format_double(m.rhs[r]));
        }
        std::sort(out.begin(), out.end());
        return out;
    };
    CHECK(triplets(model) == triplets(back));

    // Bounds and objective survive.
    const LpResult a = solve_lp(model);
    const LpResult b = solve_lp(back);
    REQUIRE(a.status == LpStatus::Optimal);
    REQUIRE(b.status == LpStatus::Optimal);
    CHECK(a.objective == doctest::Approx(b.objective));

    // Empty model still renders and parses.
    MilpModel empty;
    const MilpModel back_empty = parse_lp(export_lp(empty));
    CHECK(back_empty.num_cols() == 0);
    CHECK(back_empty.num_rows() == 0);

    // Binary section lists each binary exactly once.
    std::size_t pos = text.find("Binaries");
    REQUIRE(pos != std::string::npos);
    const std::string bin_section = text.substr(pos);
    int count = 0;
    for (std::size_t at = bin_section.find('\n'); at != std::string::npos;
         at = bin_section.find('\n', at + 1)) {
        ++count;
    }
    CHECK(count - 2 == model.num_binaries()); // minus header and End lines
}

TEST_CASE("solution files carry a status header and one value per line") {
    MilpModel m;
    m.add_col({VarType::Charge, 1, 0, 1, 0, 0}, 0.0, 1.0, true, 1.0);
    m.add_col({VarType::Charge, 1, 0, 2, 0, 0}, 0.0, 1.0, true, 2.0);
    const std::string text = format_solution(m, {1.0, 0.0}, "optimal");
    CHECK(text == "status optimal\nh_s1_k1_t1 1\nh_s1_k1_t2 0\n");
}
