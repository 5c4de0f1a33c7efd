#include "reosched/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "reosched/branch_bound.hpp"
#include "reosched/cache_io.hpp"
#include "reosched/config_io.hpp"
#include "reosched/errors.hpp"
#include "reosched/formulations.hpp"
#include "reosched/greedy.hpp"
#include "reosched/json_io.hpp"
#include "reosched/lp_format.hpp"
#include "reosched/report.hpp"
#include "reosched/rhp.hpp"
#include "reosched/scenario.hpp"
#include "reosched/validator.hpp"

namespace reosched {

namespace {

struct GenerateArgs {
    std::uint64_t seed = 0;
    int stages = 8;
    int sats = 5;
    int slots = 20;
    int targets = 12;
    int stations = 2;
    double horizon_days = 14.0;
    double dt_s = 100.0;
    std::string track; // case-study mode when set
    std::string out = "scenario.json";
};

struct SolveArgs {
    std::string scenario;
    std::string formulation = "eossp";
    double time_limit_s = 3600.0;
    double gap = 0.0;
    int lookahead = 1;
    int threads = 1;
    std::string out = "schedule.json";
    std::string metrics;
    std::string trace;
    std::string cache_dir;
    bool stage_table = false;
};

int run_generate(const GenerateArgs& a) {
    ScenarioInstance inst;
    if (!a.track.empty()) {
        CaseStudyConfig cfg;
        cfg.stages = a.stages;
        inst = load_case_study(a.track, cfg);
        inst.seed = a.seed;
    } else {
        RandomScenarioSpec spec;
        spec.seed = a.seed;
        spec.stages = a.stages;
        spec.satellites = a.sats;
        spec.slots = a.slots;
        spec.targets = a.targets;
        spec.stations = a.stations;
        spec.horizon_days = a.horizon_days;
        spec.dt_s = a.dt_s;
        inst = generate_random(spec);
    }
    save_config(a.out, inst);
    std::printf("wrote %s (K=%d, S=%d, T=%d, P=%d, G=%d)\n", a.out.c_str(), inst.num_satellites(),
                inst.grid.stages, inst.grid.total_steps, inst.num_targets(), inst.num_stations());
    return 0;
}

RunMetrics make_metrics(const ScenarioInstance& inst, Formulation form, const Schedule& sched,
                        MilpStatus status, double bound, double gap, std::int64_t nodes,
                        double wall_s) {
    RunMetrics m;
    m.formulation = form;
    m.status = status;
    m.objective_z = sched.objective_z;
    m.merit_gb = sched.merit_z_gb;
    m.bound = bound;
    m.gap = gap;
    m.nodes = nodes;
    m.wall_time_s = wall_s;
    m.per_satellite_dv_mps = sched.cost_ledger();
    for (double dv : m.per_satellite_dv_mps) m.total_dv_mps += dv;
    m.dv_budget_mps = inst.constants.dv_budget_mps;
    m.seed = inst.seed;
    return m;
}

int run_solve(const SolveArgs& a) {
    const ScenarioInstance inst = load_config(a.scenario);
    ensure_derived_data(inst, a.cache_dir);
    const Formulation form = formulation_from_name(a.formulation);

    SolveLimits limits;
    limits.time_limit_s = a.time_limit_s;
    limits.gap_tolerance = a.gap;
    limits.threads = a.threads;

    Schedule sched;
    RunMetrics metrics;
    if (form == Formulation::Rhp) {
        const RhpResult res = run_rhp(inst, a.lookahead, limits);
        sched = res.schedule;
        double wall = 0.0;
        std::int64_t nodes = 0;
        double worst_gap = 0.0;
        MilpStatus status = MilpStatus::Optimal;
        for (const SubproblemTrace& t : res.trace) {
            wall += t.wall_time_s;
            nodes += t.nodes;
            worst_gap = std::max(worst_gap, t.gap);
            if (t.status != MilpStatus::Optimal) status = t.status;
        }
        metrics = make_metrics(inst, form, sched, status, sched.objective_z, worst_gap, nodes, wall);
        if (!a.trace.empty()) save_trace(a.trace, res.trace);
    } else {
        const MilpModel model =
            form == Formulation::Eossp ? build_eossp(inst) : build_reossp(inst);
        const Schedule warm = greedy_heuristic(inst, form);
        const std::vector<double> warm_vec = embed_schedule(model, warm);
        const MilpSolution sol = solve_milp(model, limits, &warm_vec);
        if (sol.status == MilpStatus::Infeasible || sol.status == MilpStatus::Unbounded) {
            std::fprintf(stderr, "model is %s\n", milp_status_name(sol.status));
            return 3;
        }
        if (!sol.has_solution) {
            std::fprintf(stderr, "limit hit with no feasible solution\n");
            return 4;
        }
        sched = extract_schedule(model, sol.values, inst);
        metrics = make_metrics(inst, form, sched, sol.status, sol.bound, sol.gap, sol.nodes,
                               sol.wall_time_s);
    }

    // Closed loop: every emitted schedule must pass the validator.
    const std::vector<Violation> violations = validate_schedule(inst, sched);
    if (!violations.empty()) {
        throw InternalError("solver emitted an invalid schedule: " + violations.front().where);
    }

    save_schedule(a.out, sched, inst.seed);
    if (!a.metrics.empty()) save_metrics(a.metrics, metrics);
    if (a.stage_table) std::fputs(render_stage_table(inst, sched).c_str(), stdout);
    std::printf("%s: z = %.2f, Z = %.2f GB, status = %s, wall = %.2f s\n",
                formulation_name(form), sched.objective_z, sched.merit_z_gb,
                milp_status_name(metrics.status), metrics.wall_time_s);
    return 0;
}

int run_validate(const std::string& schedule_path, const std::string& scenario_path) {
    const ScenarioInstance inst = load_config(scenario_path);
    const Schedule sched = load_schedule(schedule_path);
    const std::vector<Violation> violations = validate_schedule(inst, sched);
    if (violations.empty()) {
        std::printf("valid: schedule satisfies all constraint groups\n");
        return 0;
    }
    for (const Violation& v : violations) {
        std::printf("violation [%s]: %s\n", violation_class_name(v.cls), v.where.c_str());
    }
    return 1;
}

int run_export(const std::string& scenario_path, const std::string& formulation, int lookahead,
               const std::string& out, const std::string& cache_dir) {
    const ScenarioInstance inst = load_config(scenario_path);
    ensure_derived_data(inst, cache_dir);
    const Formulation form = formulation_from_name(formulation);
    MilpModel model;
    if (form == Formulation::Eossp) {
        model = build_eossp(inst);
    } else if (form == Formulation::Reossp) {
        model = build_reossp(inst);
    } else {
        model = build_rhp_subproblem(inst, 1, lookahead, initial_carry(inst));
    }
    write_lp_file(out, model, formulation);
    std::printf("wrote %s (%d columns, %d rows, %d binaries)\n", out.c_str(), model.num_cols(),
                model.num_rows(), model.num_binaries());
    return 0;
}

int run_report(const std::vector<std::string>& run_files, const std::string& out) {
    std::vector<RunMetrics> runs;
    runs.reserve(run_files.size());
    for (const std::string& path : run_files) runs.push_back(load_metrics(path));
    const ComparisonReport rep = build_report(runs);
    std::fputs(render_report_text(rep).c_str(), stdout);
    if (!out.empty()) {
        const std::string tmp = out + ".tmp";
        {
            std::ofstream f(tmp, std::ios::binary);
            if (!f) throw IngestionError("cannot open '" + tmp + "' for writing");
            f << report_to_json(rep);
        }
        std::rename(tmp.c_str(), out.c_str());
    }
    return 0;
}

} // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Earth-observation constellation scheduling toolkit"};
    app.require_subcommand(1);

    GenerateArgs gen;
    CLI::App* generate = app.add_subcommand("generate", "Create a scenario config");
    generate->add_option("--seed", gen.seed, "Random seed");
    generate->add_option("--stages", gen.stages, "Reconfiguration stages S");
    generate->add_option("--sats", gen.sats, "Satellites K");
    generate->add_option("--slots", gen.slots, "Orbital slots per stage J");
    generate->add_option("--targets", gen.targets, "Targets P");
    generate->add_option("--stations", gen.stations, "Ground stations G");
    generate->add_option("--horizon-days", gen.horizon_days, "Schedule duration, days");
    generate->add_option("--dt", gen.dt_s, "Time step, seconds");
    generate->add_option("--track", gen.track, "Storm-track CSV (case-study mode)");
    generate->add_option("--out", gen.out, "Output config path");

    SolveArgs solve;
    CLI::App* solve_cmd = app.add_subcommand("solve", "Build and solve a formulation");
    solve_cmd->add_option("--scenario", solve.scenario, "Scenario config")->required();
    solve_cmd->add_option("--formulation", solve.formulation, "eossp | reossp | rhp")
        ->check(CLI::IsMember({"eossp", "reossp", "rhp"}));
    solve_cmd->add_option("--time-limit", solve.time_limit_s, "Solver time limit, seconds");
    solve_cmd->add_option("--gap", solve.gap, "Relative MIP gap tolerance");
    solve_cmd->add_option("--lookahead", solve.lookahead, "Lookahead stages L (rhp)");
    solve_cmd->add_option("--threads", solve.threads, "Solver threads (1 = deterministic)");
    solve_cmd->add_option("--out", solve.out, "Schedule JSON output");
    solve_cmd->add_option("--metrics", solve.metrics, "Run metrics JSON output");
    solve_cmd->add_option("--trace", solve.trace, "Per-subproblem trace output (rhp)");
    solve_cmd->add_option("--cache-dir", solve.cache_dir,
                          "Tensor/cost cache directory (default $REOSCHED_CACHE_DIR)");
    solve_cmd->add_flag("--stage-table", solve.stage_table, "Print the per-stage task table");

    std::string val_schedule, val_scenario;
    CLI::App* validate = app.add_subcommand("validate", "Check a schedule against a scenario");
    validate->add_option("schedule", val_schedule, "Schedule JSON")->required();
    validate->add_option("scenario", val_scenario, "Scenario config")->required();

    std::string exp_scenario, exp_formulation = "eossp", exp_out = "model.lp", exp_cache;
    int exp_lookahead = 1;
    CLI::App* export_lp_cmd = app.add_subcommand("export-lp", "Write a model in LP format");
    export_lp_cmd->add_option("--scenario", exp_scenario, "Scenario config")->required();
    export_lp_cmd->add_option("--formulation", exp_formulation, "eossp | reossp | rhp")
        ->check(CLI::IsMember({"eossp", "reossp", "rhp"}));
    export_lp_cmd->add_option("--lookahead", exp_lookahead, "Lookahead stages (rhp subproblem 1)");
    export_lp_cmd->add_option("--out", exp_out, "LP file path");
    export_lp_cmd->add_option("--cache-dir", exp_cache, "Tensor/cost cache directory");

    std::vector<std::string> report_files;
    std::string report_out;
    CLI::App* report_cmd = app.add_subcommand("report", "Compare solved runs");
    report_cmd->add_option("runs", report_files, "Run metrics JSON files")->required();
    report_cmd->add_option("--out", report_out, "Report JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*generate) return run_generate(gen);
        if (*solve_cmd) return run_solve(solve);
        if (*validate) return run_validate(val_schedule, val_scenario);
        if (*export_lp_cmd) {
            return run_export(exp_scenario, exp_formulation, exp_lookahead, exp_out, exp_cache);
        }
        if (*report_cmd) return run_report(report_files, report_out);
    } catch (const InfeasibleModelError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const SchemaError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 5;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 5;
    } catch (const IngestionError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 6;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 7;
    }
    return 2;
}

} // namespace reosched
