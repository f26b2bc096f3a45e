#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "vsgsize/scenario.hpp"

namespace vsgsize {

std::string format_number(double value) {
    std::array<char, 64> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) {
        throw DomainError("format_number: conversion failed");
    }
    return std::string(buf.data(), end);
}

std::string trace_csv(const Trace& trace) {
    std::string out(kTraceHeader);
    out += '\n';
    for (Eigen::Index k = 0; k < trace.size(); ++k) {
        for (double v : {trace.time[k], trace.f_pcc[k], trace.p_e[k], trace.p_bess[k], trace.p_m_star[k], trace.p_d[k]}) {
            out += format_number(v);
            out += ',';
        }
        out.back() = '\n';
    }
    return out;
}

std::string summary_csv(const SweepResult& result) {
    std::string out(kSummaryHeader);
    out += '\n';
    for (const auto& r : result.rows) {
        out += r.name;
        for (double v : {r.k_d, r.k_omega, r.t_a, r.f_min, r.f_max, r.rocof_max, r.charge_peak, r.discharge_peak,
                         r.power_range, r.e_batt}) {
            out += ',';
            out += format_number(v);
        }
        out += r.compliant ? ",true," : ",false,";
        // Status text may contain commas.
        std::string status = r.status;
        std::replace(status.begin(), status.end(), ',', ';');
        std::replace(status.begin(), status.end(), '\n', ' ');
        out += status;
        out += '\n';
    }
    return out;
}

std::string summary_table(const SweepResult& result) {
    std::ostringstream os;
    os << std::left << std::setw(22) << "name" << std::right << std::setw(6) << "T_a" << std::setw(7) << "K_d"
       << std::setw(7) << "K_w" << std::setw(10) << "F_min" << std::setw(10) << "F_max" << std::setw(9) << "df/dt"
       << std::setw(9) << "Charge" << std::setw(11) << "Discharge" << std::setw(8) << "Range" << std::setw(10)
       << "E_batt" << "  ROCOF<=0.5\n";
    os << std::fixed;
    for (const auto& r : result.rows) {
        os << std::left << std::setw(22) << r.name << std::right << std::setprecision(1) << std::setw(6) << r.t_a
           << std::setprecision(0) << std::setw(7) << r.k_d << std::setw(7) << r.k_omega;
        if (!r.ok()) {
            os << "  failed: " << r.status << '\n';
            continue;
        }
        os << std::setprecision(4) << std::setw(10) << r.f_min << std::setw(10) << r.f_max << std::setprecision(3)
           << std::setw(9) << r.rocof_max << std::setw(9) << r.charge_peak << std::setw(11) << r.discharge_peak
           << std::setw(8) << r.power_range << std::setprecision(4) << std::setw(10) << r.e_batt << "  "
           << (r.compliant ? "yes" : "no") << '\n';
    }
    return os.str();
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError(path.string(), "cannot open for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
        throw IoError(path.string(), "write failed");
    }
}

}  // namespace

std::vector<std::filesystem::path> export_results(const SweepRun& run, ExportFormat format,
                                                  const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw IoError(out_dir.string(), ec.message());
    }
    std::vector<std::filesystem::path> written;
    const auto summary = out_dir / (format == ExportFormat::Csv ? "summary.csv" : "summary.txt");
    write_file(summary, format == ExportFormat::Csv ? summary_csv(run.result) : summary_table(run.result));
    written.push_back(summary);
    for (std::size_t i = 0; i < run.result.rows.size() && i < run.traces.size(); ++i) {
        if (run.traces[i].empty()) {
            continue;
        }
        const auto path = out_dir / ("trace_" + run.result.rows[i].name + ".csv");
        write_file(path, trace_csv(run.traces[i]));
        written.push_back(path);
    }
    return written;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

double parse_double(std::string_view s, std::size_t line, const char* column) {
    double v = 0.0;
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.remove_suffix(1);
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ParseError("line " + std::to_string(line) + ": bad number in column " + column, line, column);
    }
    return v;
}

}  // namespace

Trace parse_trace_csv(std::string_view text, double f_nominal) {
    std::vector<std::string_view> lines;
    for (auto l : split(text, '\n')) {
        if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
        if (!l.empty()) lines.push_back(l);
    }
    if (lines.empty() || lines.front() != kTraceHeader) {
        throw ParseError("line 1: expected header '" + std::string(kTraceHeader) + "'", 1, "");
    }
    const auto n = static_cast<Eigen::Index>(lines.size() - 1);
    if (n < 2) {
        throw ParseError("trace needs at least two samples", 0, "");
    }
    static constexpr std::array<const char*, 6> kColumns = {"time_s",  "f_pcc_hz",    "p_e_pu",
                                                            "p_bess_pu", "p_m_star_pu", "p_d_pu"};
    Trace trace;
    trace.f_nominal = f_nominal;
    trace.resize(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const std::size_t line_no = static_cast<std::size_t>(k) + 2;
        const auto cells = split(lines[static_cast<std::size_t>(k) + 1], ',');
        if (cells.size() != kColumns.size()) {
            throw ParseError("line " + std::to_string(line_no) + ": expected 6 columns", line_no, "");
        }
        trace.time[k] = parse_double(cells[0], line_no, kColumns[0]);
        trace.f_pcc[k] = parse_double(cells[1], line_no, kColumns[1]);
        trace.p_e[k] = parse_double(cells[2], line_no, kColumns[2]);
        trace.p_bess[k] = parse_double(cells[3], line_no, kColumns[3]);
        trace.p_m_star[k] = parse_double(cells[4], line_no, kColumns[4]);
        trace.p_d[k] = parse_double(cells[5], line_no, kColumns[5]);
        trace.omega_vsg[k] = trace.f_pcc[k] / f_nominal;
        trace.p_pv[k] = trace.p_e[k] - trace.p_bess[k];
    }
    trace.dt = trace.time[1] - trace.time[0];
    if (!(trace.dt > 0.0)) {
        throw ParseError("time column must increase", 3, "time_s");
    }
    for (Eigen::Index k = 1; k < n; ++k) {
        if (std::abs(trace.time[k] - static_cast<double>(k) * trace.dt) > 1e-6 * trace.dt * static_cast<double>(k)) {
            const auto line_no = static_cast<std::size_t>(k) + 2;
            throw ParseError("line " + std::to_string(line_no) + ": time column is not uniform", line_no, "time_s");
        }
    }
    return trace;
}

Trace read_trace_csv(const std::filesystem::path& path, double f_nominal) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(path.string(), "cannot open trace");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_trace_csv(buffer.str(), f_nominal);
}

std::string format_report(const std::string& name, const FrequencyMetrics& m, const SizingReport& s) {
    std::ostringstream os;
    os << std::setprecision(6);
    os << "scenario            " << name << '\n';
    os << "F_min / F_max       " << m.f_min << " / " << m.f_max << " Hz\n";
    os << "ROCOF (max)         " << m.rocof_max << " Hz/s  " << (s.rocof_compliant ? "(within" : "(exceeds")
       << " 0.5 Hz/s limit)\n";
    os << "settling time       ";
    if (m.settling_time) os << *m.settling_time << " s\n";
    else os << "not settled\n";
    os << "battery charge      " << m.charge_peak << " pu\n";
    os << "battery discharge   " << m.discharge_peak << " pu\n";
    os << "power range         " << m.power_range << " pu\n";
    os << "energy stored       " << s.ess_stored << " pu*s\n";
    os << "energy delivered    " << s.ess_delivered << " pu*s\n";
    os << "energy total        " << s.e_batt << " pu*s\n";
    os << "first swing energy  " << s.e_first_swing << " pu*s" << (s.first_swing_crossed ? "" : " (no zero crossing)")
       << '\n';
    os << "power rating        " << s.power_rating_mw << " MW (" << s.power_rating << " pu)\n";
    os << "energy rating       " << s.energy_rating_mwh << " MWh\n";
    os << "10% of DG capacity  " << s.ten_percent_rule_mw << " MW\n";
    return os.str();
}

}  // namespace vsgsize
