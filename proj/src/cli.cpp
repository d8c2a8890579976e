#include "prodplan/cli.hpp"

#include "prodplan/analysis.hpp"
#include "prodplan/config.hpp"
#include "prodplan/output.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <ostream>

namespace prodplan {

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    bool strict = false;
};

RunConfig load(const CommonArgs& args)
{
    RunConfig c = load_config(args.config_path);
    if (!args.out_dir.empty()) {
        c.output_dir = args.out_dir;
    }
    c.strict = c.strict || args.strict;
    return c;
}

std::filesystem::path prepare_dir(const RunConfig& c)
{
    std::filesystem::path dir(c.output_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw OutputError("cannot create output directory " + dir.string() + ": " + ec.message());
    }
    return dir;
}

void print_warnings(const PipelineResult& r, std::ostream& err)
{
    for (const auto& w : r.warnings) {
        err << "warning: " << w << '\n';
    }
}

void emit_solution(const PipelineResult& r, const std::filesystem::path& dir)
{
    write_fields_csv(r.policy, (dir / "fields.csv").string());
    write_metadata(r, (dir / "fields.meta").string());
    render_plots(r.policy, std::nullopt, r.grid.radius, dir.string());
}

void print_dominance(const char* label, const DominanceReport& d, std::ostream& out)
{
    out << label << ": " << (d.pass ? "holds" : "violated") << " (max violation "
        << format_double(d.max_violation) << ", " << d.violating_nodes << " nodes above " << d.tolerance
        << ")\n";
}

int cmd_solve(const CommonArgs& args, std::ostream& out, std::ostream& err)
{
    const RunConfig c = load(args);
    const PipelineResult r = solve_policy(c.params, c.costs, c.pipeline_options());
    print_warnings(r, err);
    const auto dir = prepare_dir(c);
    emit_solution(r, dir);
    out << "K = (" << format_double(r.kp.K1) << ", " << format_double(r.kp.K2) << ") [" << to_string(r.kp.source)
        << "]\n"
        << "iterations = " << r.report.iterations << ", converged = " << std::boolalpha << r.report.converged
        << "\nbound check: " << (r.bounds.pass ? "pass" : "fail") << "\nwrote " << (dir / "fields.csv").string()
        << '\n';
    if (!r.report.converged) {
        return kExitNumerical;
    }
    return c.strict && !r.bounds.pass ? kExitNumerical : kExitOk;
}

int cmd_simulate(const CommonArgs& args, std::ostream& out, std::ostream& err)
{
    const RunConfig c = load(args);
    const PipelineResult r = solve_policy(c.params, c.costs, c.pipeline_options());
    print_warnings(r, err);
    if (!r.report.converged) {
        err << "error: coupled solve did not converge; not simulating\n";
        return kExitNumerical;
    }
    const auto dir = prepare_dir(c);
    emit_solution(r, dir);

    const Trajectory first = simulate_path(r.policy, c.params, c.sim);
    write_trajectory_csv(first, (dir / "trajectory.csv").string());
    render_plots(r.policy, first, c.params.R, dir.string());
    const EnsembleSummary s = ensemble_stats(r.policy, c.params, c.sim);
    out << "paths = " << c.sim.n_paths << ", boundary exits = " << s.boundary_exits
        << "\nmean exit time = " << format_double(s.mean_exit_time)
        << "\nregime-1 occupation = " << format_double(s.occupation1)
        << "\nmean |y| = " << format_double(s.mean_abs_y) << '\n';
    return c.strict && !r.bounds.pass ? kExitNumerical : kExitOk;
}

int cmd_sensitivity(const CommonArgs& args, const std::string& scenario, std::ostream& out, std::ostream& err)
{
    const RunConfig c = load(args);
    ScenarioSpec spec{parse_scenario(scenario), c.params, c.costs};
    if (spec.id == ScenarioId::kS4) {
        throw ValidationError("--scenario must be s1, s2 or s3");
    }
    const SensitivityResult res = run_sensitivity_scenario(spec, c.pipeline_options());
    print_warnings(res.run, err);
    emit_solution(res.run, prepare_dir(c));
    print_dominance("z1 >= z2", res.dominance, out);
    if (!res.run.report.converged) {
        return kExitNumerical;
    }
    return c.strict && !(res.dominance.pass && res.run.bounds.pass) ? kExitNumerical : kExitOk;
}

int cmd_compare(const CommonArgs& args, std::ostream& out, std::ostream& err)
{
    const RunConfig c = load(args);
    const ScenarioSpec spec{ScenarioId::kS4, c.params, c.costs};
    const ComparisonReport rep = regime_comparison(spec, c.pipeline_options());
    print_warnings(rep.coupled, err);
    emit_solution(rep.coupled, prepare_dir(c));
    print_dominance("static z1 >= z1", rep.static1_over_z1, out);
    print_dominance("z1 >= z2", rep.z1_over_z2, out);
    print_dominance("z2 >= static z2", rep.z2_over_static2, out);
    if (!rep.coupled.report.converged) {
        return kExitNumerical;
    }
    return c.strict && !rep.pass ? kExitNumerical : kExitOk;
}

} // namespace

int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Two-regime production planning solver", "prodplan"};
    app.require_subcommand(1);

    CommonArgs args;
    std::string scenario;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("config", args.config_path, "JSON run configuration")->required();
        sub->add_option("--out", args.out_dir, "output directory (overrides output.dir)");
        sub->add_flag("--strict", args.strict, "fail on bound or dominance violations");
    };
    auto* solve = app.add_subcommand("solve", "solve the coupled system and write fields");
    auto* simulate = app.add_subcommand("simulate", "solve, then simulate controlled inventory paths");
    auto* sensitivity = app.add_subcommand("sensitivity", "check z1 >= z2 for a sensitivity scenario");
    auto* compare = app.add_subcommand("compare", "check the switching vs static ordering");
    for (auto* sub : {solve, simulate, sensitivity, compare}) {
        add_common(sub);
    }
    sensitivity->add_option("--scenario", scenario, "s1, s2 or s3")->required();

    if (argc <= 1) {
        out << app.help();
        return kExitUsage;
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << app.help();
        return kExitUsage;
    }

    try {
        if (*solve) return cmd_solve(args, out, err);
        if (*simulate) return cmd_simulate(args, out, err);
        if (*sensitivity) return cmd_sensitivity(args, scenario, out, err);
        return cmd_compare(args, out, err);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ValidationError& e) {
        err << "invalid input: " << e.what() << '\n';
        return kExitUsage;
    } catch (const KSolveError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const OutputError& e) {
        err << "output error: " << e.what() << '\n';
        return kExitNumerical;
    }
}

} // namespace prodplan
