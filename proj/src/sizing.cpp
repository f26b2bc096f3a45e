#include "vsgsize/sizing.hpp"

#include <algorithm>
#include <cmath>

namespace vsgsize {

namespace {

constexpr double kSecondsPerHour = 3600.0;

/// Signed integral of the linear segment (0, a) -> (h, b), split by sign.
void accumulate_segment(double a, double b, double h, double& positive, double& negative) {
    if (a >= 0.0 && b >= 0.0) {
        positive += 0.5 * (a + b) * h;
    } else if (a <= 0.0 && b <= 0.0) {
        negative -= 0.5 * (a + b) * h;
    } else {
        const double s = a / (a - b) * h;  // zero of the segment
        if (a > 0.0) {
            positive += 0.5 * a * s;
            negative -= 0.5 * b * (h - s);
        } else {
            negative -= 0.5 * a * s;
            positive += 0.5 * b * (h - s);
        }
    }
}

double interpolate(const Eigen::Ref<const Eigen::VectorXd>& y, double dt, double t) {
    const double pos = t / dt;
    const auto k = std::min<Eigen::Index>(static_cast<Eigen::Index>(std::floor(pos)), y.size() - 1);
    if (k >= y.size() - 1) {
        return y[y.size() - 1];
    }
    const double frac = pos - static_cast<double>(k);
    return frac == 0.0 ? y[k] : y[k] + frac * (y[k + 1] - y[k]);
}

}  // namespace

EnergySplit energy_split(const Eigen::Ref<const Eigen::VectorXd>& samples, double dt, double t0, double t1) {
    if (samples.size() < 2 || !(dt > 0.0)) {
        throw DomainError("energy_split: need at least two samples and dt > 0");
    }
    const double t_last = static_cast<double>(samples.size() - 1) * dt;
    if (!(t0 >= 0.0 && t0 < t1 && t1 <= t_last * (1.0 + 1e-12))) {
        throw DomainError("energy_split: interval outside the trace");
    }
    t1 = std::min(t1, t_last);

    // Whole samples strictly inside (t0, t1); partial segments at either end.
    auto first = static_cast<Eigen::Index>(std::ceil(t0 / dt));
    auto last = static_cast<Eigen::Index>(std::floor(t1 / dt));
    if (std::abs(static_cast<double>(first) * dt - t0) < 1e-9 * dt) first = std::llround(t0 / dt);
    if (std::abs(static_cast<double>(last) * dt - t1) < 1e-9 * dt) last = std::llround(t1 / dt);

    double positive = 0.0;
    double negative = 0.0;
    if (first > last) {
        // Both ends within one segment.
        accumulate_segment(interpolate(samples, dt, t0), interpolate(samples, dt, t1), t1 - t0, positive, negative);
    } else {
        const double head_t = static_cast<double>(first) * dt;
        if (head_t > t0) {
            accumulate_segment(interpolate(samples, dt, t0), samples[first], head_t - t0, positive, negative);
        }
        for (Eigen::Index k = first; k < last; ++k) {
            accumulate_segment(samples[k], samples[k + 1], dt, positive, negative);
        }
        const double tail_t = static_cast<double>(last) * dt;
        if (t1 > tail_t) {
            accumulate_segment(samples[last], interpolate(samples, dt, t1), t1 - tail_t, positive, negative);
        }
    }
    return {negative, positive, negative + positive};
}

EnergySplit energy_split(const Trace& trace, double t0, double t1) {
    return energy_split(trace.p_bess, trace.dt, t0, t1);
}

FirstSwingEnergy energy_to_first_zero_crossing(const Eigen::Ref<const Eigen::VectorXd>& p, double dt,
                                               double t_event, double zero_tolerance) {
    if (p.size() < 2 || !(dt > 0.0)) {
        throw DomainError("energy_to_first_zero_crossing: trace too short");
    }
    const Eigen::Index n = p.size();
    const double t_last = static_cast<double>(n - 1) * dt;
    if (!(t_event >= 0.0 && t_event <= t_last)) {
        throw DomainError("energy_to_first_zero_crossing: t_event outside the trace");
    }

    // Walk segments from t_event; integrate until the lobe's sign reverses.
    Eigen::Index k = static_cast<Eigen::Index>(std::floor(t_event / dt));
    if (k >= n - 1) {
        k = n - 2;
    }
    double t_prev = t_event;
    double p_prev = interpolate(p, dt, t_event);
    double sign = 0.0;
    if (std::abs(p_prev) > zero_tolerance) {
        sign = p_prev > 0.0 ? 1.0 : -1.0;
    }
    double integral = 0.0;

    for (Eigen::Index j = k + 1; j < n; ++j) {
        const double t_j = static_cast<double>(j) * dt;
        if (t_j <= t_prev) {
            continue;
        }
        const double p_j = p[j];
        if (sign != 0.0 && sign * p_j <= 0.0) {
            const double h = t_j - t_prev;
            const double s = p_j == 0.0 ? h : p_prev / (p_prev - p_j) * h;
            integral += 0.5 * p_prev * s;
            return {std::abs(integral), t_prev + s, true};
        }
        integral += 0.5 * (p_prev + p_j) * (t_j - t_prev);
        if (sign == 0.0 && std::abs(p_j) > zero_tolerance) {
            sign = p_j > 0.0 ? 1.0 : -1.0;
        }
        t_prev = t_j;
        p_prev = p_j;
    }
    return {std::abs(integral), t_last, false};
}

FirstSwingEnergy energy_to_first_zero_crossing(const Trace& trace, double t_event, double zero_tolerance) {
    return energy_to_first_zero_crossing(trace.p_bess, trace.dt, t_event, zero_tolerance);
}

SizingReport build_report(const FrequencyMetrics& metrics, const Trace& trace, double t_event,
                          const BaseQuantities& base, const SizingOptions& options) {
    SizingReport r;
    const double t_last = trace.size() > 0 ? static_cast<double>(trace.size() - 1) * trace.dt : 0.0;
    const double t_stop = std::min(t_event + options.horizon, t_last);
    if (trace.size() >= 2 && t_event < t_stop) {
        const auto split = energy_split(trace, t_event, t_stop);
        r.ess_stored = split.stored;
        r.ess_delivered = split.delivered;
        r.e_batt = split.total;
        // Clip the first swing to the same horizon so it never exceeds e_batt.
        const auto samples = static_cast<Eigen::Index>(std::floor(t_stop / trace.dt + 1e-9)) + 1;
        const auto first = energy_to_first_zero_crossing(trace.p_bess.head(samples), trace.dt, t_event);
        r.e_first_swing = first.energy;
        r.first_swing_crossed = first.crossed;
    }
    r.power_rating = std::max(metrics.charge_peak, metrics.discharge_peak);
    r.power_rating_mw = r.power_rating * base.s_base_mw;
    r.energy_rating_mwh = r.e_batt * base.s_base_mw / kSecondsPerHour;
    r.ten_percent_rule_mw = 0.1 * options.dg_capacity_mw;
    r.rocof_compliant = rocof_compliance(metrics.rocof_max, options.rocof_limit);
    return r;
}

}  // namespace vsgsize
