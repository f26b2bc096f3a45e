#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vsgsize/dynamics.hpp"
#include "vsgsize/metrics.hpp"
#include "vsgsize/sizing.hpp"

namespace vsgsize {

struct Scenario {
    std::string name;
    VsgParams vsg;
    GridParams grid;
    BaseQuantities base;
    std::vector<Event> events;
    double t_end = 40.0;
    double dt = 1e-3;
    double rocof_window = 0.1;
    double settling_band = 0.05;
    double sizing_horizon = 30.0;
    double dg_capacity_mw = 2.75;

    Config config() const { return {vsg, grid, base}; }
    /// Start of the earliest event, 0 without events.
    double t_event() const;
};

/// The single-pulse contingency used by the presets: loss of 2.749 MW of load on
/// the grid base at t = 1 s for 0.2 s.
Event default_contingency(const GridParams& grid = {});

/// Compiled-in sweeps: "table1" (t_a = 4 s) and "table2" (t_a = 10 s), each the
/// (k_d, k_omega) matrix {400, 0} x {20, 40}. Throws DomainError for other names.
std::vector<Scenario> preset(std::string_view name);
bool is_preset(std::string_view name);

/// Parses a JSON configuration: either one scenario object, or
/// {"defaults": {...}, "scenarios": [{...}, ...]}. Omitted fields take the
/// defaults block, then the built-in defaults. Every scenario is validated and all
/// violations are reported together. Throws ParseError or ValidationError.
std::vector<Scenario> parse_config(std::string_view text);
std::vector<Scenario> load_config(const std::filesystem::path& path);

/// Throws ValidationError listing every invalid scenario field and duplicate name.
void validate_scenarios(const std::vector<Scenario>& scenarios);

/// Global overrides from the command line.
struct Overrides {
    std::optional<double> dt;
    std::optional<double> t_end;
    std::optional<double> rocof_window;
    std::optional<double> sizing_horizon;
    std::optional<SwingForm> swing_form;
};
void apply_overrides(std::vector<Scenario>& scenarios, const Overrides& overrides);

struct SweepRow {
    std::string name;
    double k_d = 0.0;
    double k_omega = 0.0;
    double t_a = 0.0;
    double f_min = 0.0;
    double f_max = 0.0;
    double rocof_max = 0.0;
    double charge_peak = 0.0;
    double discharge_peak = 0.0;
    double power_range = 0.0;
    double e_batt = 0.0;
    bool compliant = false;
    std::string status = "ok";  // error description when the scenario failed

    bool ok() const { return status == "ok"; }
};

struct SweepResult {
    std::vector<SweepRow> rows;
};

/// Everything produced for one scenario.
struct ScenarioOutcome {
    SweepRow row;
    Trace trace;
    FrequencyMetrics metrics;
    SizingReport sizing;
};

/// Simulates one scenario and evaluates it. Errors propagate.
ScenarioOutcome evaluate(const Scenario& scenario);

struct SweepRun {
    SweepResult result;
    std::vector<Trace> traces;  // empty trace for failed rows
};

/// Evaluates every scenario, `threads` at a time (0 = hardware concurrency).
/// Rows keep input order; a failing scenario is recorded in its row.
/// Throws DomainError for an empty list.
SweepRun run_sweep(const std::vector<Scenario>& scenarios, unsigned threads = 1);

enum class ExportFormat { Csv, Table };

/// Writes summary.csv (or summary.txt) plus trace_<name>.csv per scenario with a
/// non-empty trace. Returns the written paths. Throws IoError.
std::vector<std::filesystem::path> export_results(const SweepRun& run, ExportFormat format,
                                                  const std::filesystem::path& out_dir);

// CSV formats.
inline constexpr std::string_view kTraceHeader = "time_s,f_pcc_hz,p_e_pu,p_bess_pu,p_m_star_pu,p_d_pu";
inline constexpr std::string_view kSummaryHeader =
    "name,k_d,k_omega,t_a,f_min,f_max,rocof_max,charge_peak,discharge_peak,power_range,e_batt,compliant,status";

/// Shortest decimal that round-trips to the same double.
std::string format_number(double value);

std::string trace_csv(const Trace& trace);
std::string summary_csv(const SweepResult& result);
std::string summary_table(const SweepResult& result);

/// Reads a trace CSV back. omega_vsg is f_pcc / f_nominal and p_pv is p_e - p_bess.
/// Throws ParseError for malformed content, IoError when unreadable.
Trace parse_trace_csv(std::string_view text, double f_nominal = 60.0);
Trace read_trace_csv(const std::filesystem::path& path, double f_nominal = 60.0);

/// Human-readable metrics and sizing block.
std::string format_report(const std::string& name, const FrequencyMetrics& metrics, const SizingReport& sizing);

}  // namespace vsgsize
