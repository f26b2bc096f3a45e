#pragma once

#include <optional>

#include "vsgsize/dynamics.hpp"

namespace vsgsize {

/// The frequency and battery-power columns of a contingency table.
struct FrequencyMetrics {
    double f_min = 0.0;      // Hz
    double f_max = 0.0;      // Hz
    double rocof_max = 0.0;  // Hz/s, max absolute windowed slope
    std::optional<double> settling_time;
    double charge_peak = 0.0;     // pu, absorption reported positive
    double discharge_peak = 0.0;  // pu
    double power_range = 0.0;     // charge_peak + discharge_peak
};

struct MetricOptions {
    double rocof_window = 0.1;   // s
    double settling_band = 0.05; // Hz
    double t_event = 1.0;        // s
};

/// max_k |f(t_k + window) - f(t_k)| / window, with the window rounded to whole samples.
/// Throws DomainError if window < dt or the trace is not longer than the window.
double rocof(const Trace& trace, double window);

struct FrequencyExtrema {
    double f_min;
    double f_max;
};

/// Throws DomainError on an empty trace.
FrequencyExtrema extrema(const Trace& trace);

struct BatteryPeaks {
    double charge_peak;
    double discharge_peak;
};

/// charge = max(0, -min p_bess), discharge = max(0, max p_bess). Zero for an empty trace.
BatteryPeaks battery_peaks(const Trace& trace);

/// First time at or after t_event from which |f - f_nominal| <= band holds to the
/// end of the trace; nullopt if the last sample is outside the band.
/// Throws DomainError if band <= 0.
std::optional<double> settling_time(const Trace& trace, double band, double t_event);

FrequencyMetrics compute_metrics(const Trace& trace, const MetricOptions& options);

}  // namespace vsgsize
