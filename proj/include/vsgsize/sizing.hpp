#pragma once

#include <Eigen/Core>

#include "vsgsize/metrics.hpp"

namespace vsgsize {

/// Battery energy over an interval, pu*s on the plant base. Absorbed energy
/// (negative p_bess) is reported as a positive magnitude.
struct EnergySplit {
    double stored = 0.0;
    double delivered = 0.0;
    double total = 0.0;  // stored + delivered
};

/// Integral of the piecewise-linear interpolant of `samples` (uniform spacing dt,
/// first sample at t = 0) over [t0, t1], split into its positive and negative
/// parts. Intervals that change sign are split at the interpolated zero.
/// Throws DomainError unless 0 <= t0 < t1 <= last sample time.
EnergySplit energy_split(const Eigen::Ref<const Eigen::VectorXd>& samples, double dt, double t0, double t1);

/// energy_split of trace.p_bess.
EnergySplit energy_split(const Trace& trace, double t0, double t1);

struct FirstSwingEnergy {
    double energy = 0.0;  // pu*s, magnitude
    double t_end = 0.0;   // crossing time, or trace end when !crossed
    bool crossed = false;
};

/// |integral of p_bess| from t_event to its first sign reversal. The lobe sign is
/// taken from the first sample after t_event with |p_bess| > zero_tolerance; a
/// sample exactly zero after that counts as the crossing. Without a crossing the
/// integral runs to the end of the trace and `crossed` is false.
/// Throws DomainError if t_event is outside the trace.
FirstSwingEnergy energy_to_first_zero_crossing(const Trace& trace, double t_event, double zero_tolerance = 1e-9);
FirstSwingEnergy energy_to_first_zero_crossing(const Eigen::Ref<const Eigen::VectorXd>& samples, double dt,
                                               double t_event, double zero_tolerance = 1e-9);

inline constexpr double kRocofLimit = 0.5;  // Hz/s

/// The limit is inclusive: a ROCOF equal to the limit complies.
inline bool rocof_compliance(double rocof_max, double limit = kRocofLimit) { return rocof_max <= limit; }

struct SizingReport {
    double ess_stored = 0.0;     // pu*s
    double ess_delivered = 0.0;  // pu*s
    double e_batt = 0.0;         // pu*s
    double e_first_swing = 0.0;  // pu*s
    bool first_swing_crossed = false;
    double power_rating = 0.0;  // pu
    double power_rating_mw = 0.0;
    double energy_rating_mwh = 0.0;
    double ten_percent_rule_mw = 0.0;
    bool rocof_compliant = true;
};

struct SizingOptions {
    double horizon = 30.0;  // s after the event; clipped to the trace end
    double dg_capacity_mw = 2.75;
    double rocof_limit = kRocofLimit;
};

SizingReport build_report(const FrequencyMetrics& metrics, const Trace& trace, double t_event,
                          const BaseQuantities& base, const SizingOptions& options);

}  // namespace vsgsize
