#include "vsgsize/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace vsgsize {

double rocof(const Trace& trace, double window) {
    if (!(trace.dt > 0.0) || !(window >= trace.dt * (1.0 - 1e-12))) {
        throw DomainError("rocof: window must be >= dt");
    }
    const auto lag = static_cast<Eigen::Index>(std::llround(window / trace.dt));
    if (trace.size() <= lag) {
        throw DomainError("rocof: trace shorter than the window");
    }
    const Eigen::Index n = trace.size() - lag;
    const double span = static_cast<double>(lag) * trace.dt;
    const double max_step = (trace.f_pcc.tail(n) - trace.f_pcc.head(n)).cwiseAbs().maxCoeff();
    return max_step / span;
}

FrequencyExtrema extrema(const Trace& trace) {
    if (trace.empty()) {
        throw DomainError("extrema: empty trace");
    }
    return {trace.f_pcc.minCoeff(), trace.f_pcc.maxCoeff()};
}

BatteryPeaks battery_peaks(const Trace& trace) {
    if (trace.empty()) {
        return {0.0, 0.0};
    }
    return {std::max(0.0, -trace.p_bess.minCoeff()), std::max(0.0, trace.p_bess.maxCoeff())};
}

std::optional<double> settling_time(const Trace& trace, double band, double t_event) {
    if (!(band > 0.0)) {
        throw DomainError("settling_time: band must be > 0");
    }
    const Eigen::Index n = trace.size();
    Eigen::Index k = n;
    while (k > 0 && std::abs(trace.f_pcc[k - 1] - trace.f_nominal) <= band) {
        --k;
    }
    if (k == n) {
        return std::nullopt;
    }
    // Samples k..n-1 are inside the band.
    const double entered = trace.time[k];
    return std::max(t_event, entered);
}

FrequencyMetrics compute_metrics(const Trace& trace, const MetricOptions& options) {
    FrequencyMetrics m;
    const auto [f_min, f_max] = extrema(trace);
    m.f_min = f_min;
    m.f_max = f_max;
    m.rocof_max = rocof(trace, options.rocof_window);
    m.settling_time = settling_time(trace, options.settling_band, options.t_event);
    const auto [charge, discharge] = battery_peaks(trace);
    m.charge_peak = charge;
    m.discharge_peak = discharge;
    m.power_range = charge + discharge;
    return m;
}

}  // namespace vsgsize
