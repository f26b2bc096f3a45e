// Command-line front end: run one scenario, sweep a preset or config file, or
// recompute metrics and sizing from a stored trace.

#include <CLI11.hpp>

#include <iostream>
#include <map>

#include "vsgsize/scenario.hpp"

namespace {

enum ExitCode : int { kOk = 0, kValidation = 1, kSimulation = 2, kIo = 3 };

struct CommonFlags {
    vsgsize::Overrides overrides;
    bool eq1_literal = false;
    std::string out;
    std::string format = "csv";

    void add_to(CLI::App& app) {
        app.add_option("--dt", overrides.dt, "Integration step, s")->check(CLI::PositiveNumber);
        app.add_option("--t-end", overrides.t_end, "Simulated duration, s")->check(CLI::PositiveNumber);
        app.add_option("--rocof-window", overrides.rocof_window, "ROCOF measurement window, s")
            ->check(CLI::PositiveNumber);
        app.add_option("--sizing-horizon", overrides.sizing_horizon, "Energy integration horizon after the event, s")
            ->check(CLI::PositiveNumber);
        app.add_flag("--eq1-literal", eq1_literal, "Apply damping power outside the 1/T_a factor");
        app.add_option("--out", out, "Output directory");
        app.add_option("--format", format, "Summary format")->check(CLI::IsMember({"csv", "table"}));
    }

    vsgsize::Overrides resolved() const {
        auto o = overrides;
        if (eq1_literal) o.swing_form = vsgsize::SwingForm::DampingOutside;
        return o;
    }

    vsgsize::ExportFormat export_format() const {
        return format == "table" ? vsgsize::ExportFormat::Table : vsgsize::ExportFormat::Csv;
    }
};

void write_outputs(const vsgsize::SweepRun& run, const CommonFlags& flags) {
    if (flags.out.empty()) return;
    for (const auto& path : vsgsize::export_results(run, flags.export_format(), flags.out)) {
        std::cerr << "wrote " << path.string() << '\n';
    }
}

int run_single(const std::string& config, const std::string& pick, const std::map<std::string, double>& params,
               const CommonFlags& flags) {
    std::vector<vsgsize::Scenario> scenarios;
    if (config.empty()) {
        scenarios = vsgsize::preset("table1");
        scenarios.resize(1);
        scenarios.front().name = "run";
    } else {
        scenarios = vsgsize::is_preset(config) ? vsgsize::preset(config) : vsgsize::load_config(config);
        if (!pick.empty()) {
            std::erase_if(scenarios, [&](const auto& s) { return s.name != pick; });
            if (scenarios.empty()) {
                throw vsgsize::DomainError("no scenario named '" + pick + "'");
            }
        }
        scenarios.resize(1);
    }
    auto& s = scenarios.front();
    if (auto it = params.find("t_a"); it != params.end()) s.vsg.t_a = it->second;
    if (auto it = params.find("k_d"); it != params.end()) s.vsg.k_d = it->second;
    if (auto it = params.find("k_omega"); it != params.end()) s.vsg.k_omega = it->second;
    vsgsize::apply_overrides(scenarios, flags.resolved());
    vsgsize::validate_scenarios(scenarios);

    auto outcome = vsgsize::evaluate(s);
    std::cout << vsgsize::format_report(s.name, outcome.metrics, outcome.sizing);

    vsgsize::SweepRun run;
    run.result.rows.push_back(outcome.row);
    run.traces.push_back(std::move(outcome.trace));
    write_outputs(run, flags);
    return kOk;
}

int run_sweep(const std::string& source, unsigned threads, CommonFlags flags) {
    auto scenarios = vsgsize::is_preset(source) ? vsgsize::preset(source) : vsgsize::load_config(source);
    vsgsize::apply_overrides(scenarios, flags.resolved());
    vsgsize::validate_scenarios(scenarios);

    const auto run = vsgsize::run_sweep(scenarios, threads);
    std::cout << vsgsize::summary_table(run.result);
    if (flags.out.empty()) flags.out = "out";
    write_outputs(run, flags);

    const bool any_failed =
        std::any_of(run.result.rows.begin(), run.result.rows.end(), [](const auto& r) { return !r.ok(); });
    return any_failed ? kSimulation : kOk;
}

struct ReportFlags {
    std::string trace;
    double t_event = 1.0;
    double rocof_window = 0.1;
    double settling_band = 0.05;
    double sizing_horizon = 30.0;
    double f_base = 60.0;
    double s_base = 2.75;
    double dg_capacity = 2.75;
};

int run_report(const ReportFlags& f) {
    const auto trace = vsgsize::read_trace_csv(f.trace, f.f_base);
    const auto metrics = vsgsize::compute_metrics(trace, {f.rocof_window, f.settling_band, f.t_event});
    vsgsize::BaseQuantities base;
    base.s_base_mw = f.s_base;
    base.f_base_hz = f.f_base;
    const auto sizing = vsgsize::build_report(metrics, trace, f.t_event, base, {f.sizing_horizon, f.dg_capacity});
    std::cout << vsgsize::format_report(f.trace, metrics, sizing);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Virtual synchronous generator contingency simulator and battery sizing"};
    app.require_subcommand(1);

    CommonFlags run_flags;
    std::string run_config;
    std::string run_pick;
    std::map<std::string, double> params;
    double t_a = 0, k_d = 0, k_omega = 0;
    auto* run = app.add_subcommand("run", "Simulate one scenario and print its metrics and sizing");
    run->add_option("--config", run_config, "Preset name or JSON configuration file");
    run->add_option("--scenario", run_pick, "Scenario name within the configuration");
    auto* opt_ta = run->add_option("--t-a", t_a, "Virtual inertia time constant, s");
    auto* opt_kd = run->add_option("--k-d", k_d, "Damping factor, pu");
    auto* opt_kw = run->add_option("--k-omega", k_omega, "Droop gain, pu");
    run_flags.add_to(*run);

    CommonFlags sweep_flags;
    std::string sweep_source;
    unsigned threads = 0;
    auto* sweep = app.add_subcommand("sweep", "Run a preset (table1, table2) or every scenario in a config file");
    sweep->add_option("source", sweep_source, "Preset name or JSON configuration file")->required();
    sweep->add_option("--threads", threads, "Worker threads (0 = all cores)");
    sweep_flags.add_to(*sweep);

    ReportFlags report_flags;
    auto* report = app.add_subcommand("report", "Recompute metrics and sizing from a trace CSV");
    report->add_option("trace", report_flags.trace, "Trace CSV")->required();
    report->add_option("--t-event", report_flags.t_event, "Event start, s");
    report->add_option("--rocof-window", report_flags.rocof_window, "ROCOF window, s")->check(CLI::PositiveNumber);
    report->add_option("--settling-band", report_flags.settling_band, "Settling band, Hz")->check(CLI::PositiveNumber);
    report->add_option("--sizing-horizon", report_flags.sizing_horizon, "Energy horizon, s")
        ->check(CLI::PositiveNumber);
    report->add_option("--f-base", report_flags.f_base, "Nominal frequency, Hz")->check(CLI::PositiveNumber);
    report->add_option("--s-base", report_flags.s_base, "Plant power base, MW")->check(CLI::PositiveNumber);
    report->add_option("--dg-capacity", report_flags.dg_capacity, "Distributed generation capacity, MW");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kValidation;
    }

    try {
        if (*run) {
            if (*opt_ta) params["t_a"] = t_a;
            if (*opt_kd) params["k_d"] = k_d;
            if (*opt_kw) params["k_omega"] = k_omega;
            return run_single(run_config, run_pick, params, run_flags);
        }
        if (*sweep) {
            return run_sweep(sweep_source, threads, sweep_flags);
        }
        return run_report(report_flags);
    } catch (const vsgsize::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIo;
    } catch (const vsgsize::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const vsgsize::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const vsgsize::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const vsgsize::Error& e) {
        std::cerr << "simulation error: " << e.what() << '\n';
        return kSimulation;
    }
}
