#include "vsgsize/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "vsgsize/rk4.hpp"

namespace vsgsize {

void validate_events(std::span<const Event> events) {
    std::vector<Violation> violations;
    for (std::size_t i = 0; i < events.size(); ++i) {
        const auto& e = events[i];
        const std::string prefix = "events[" + std::to_string(i) + "]";
        if (!std::isfinite(e.magnitude)) {
            violations.push_back({prefix + ".magnitude", "magnitude finite"});
        }
        if (!(std::isfinite(e.t_start) && e.t_start >= 0.0)) {
            violations.push_back({prefix + ".t_start", "t_start >= 0"});
        }
        if (!(e.duration > 0.0)) {  // +inf is an unbounded event
            violations.push_back({prefix + ".duration", "duration > 0"});
        }
    }
    if (!violations.empty()) {
        throw ValidationError(std::move(violations));
    }
}

double load_offset(std::span<const Event> active) {
    double sum = 0.0;
    for (const auto& e : active) {
        sum += e.load_offset();
    }
    return sum;
}

double equilibrium_angle(double p_target, double e_a, double e_t, double x_t) {
    const double p_max = e_a * e_t / x_t;
    if (!(std::abs(p_target) < p_max)) {
        throw InfeasibleOperatingPoint("no operating point with |delta| < pi/2: requested " +
                                       std::to_string(p_target) + " pu exceeds link limit " +
                                       std::to_string(p_max) + " pu");
    }

    // Safeguarded Newton on g(d) = p_max sin d - p_target, bracketed on (-pi/2, pi/2)
    // where g is strictly increasing.
    double lo = -std::numbers::pi / 2;
    double hi = std::numbers::pi / 2;
    double d = p_target / p_max;
    for (int iter = 0; iter < 100; ++iter) {
        const double g = p_max * std::sin(d) - p_target;
        if (g == 0.0) {
            break;
        }
        (g > 0.0 ? hi : lo) = d;
        const double slope = p_max * std::cos(d);
        double next = d - g / slope;
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);
        }
        if (std::abs(next - d) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(d))) {
            d = next;
            break;
        }
        d = next;
    }
    return d;
}

Model::Model(const Config& config)
    : config_(validate(config)),
      p_gen0_(config_.grid.p_gen0.value_or(balanced_generation(config_))),
      plant_to_grid_(plant_to_grid_ratio(config_)) {
    const auto& v = config_.vsg;
    const double delta0 = equilibrium_angle(v.p_star, v.e_a, v.e_t, v.x_t);
    equilibrium_ << 1.0, delta0, 1.0, 1.0, 0.0;
}

SimState Model::derivatives(const SimState& x, double load_offset) const {
    const auto& v = config_.vsg;
    const auto& g = config_.grid;

    const double omega_vsg = x[state::omega_vsg];
    const double omega_grid = x[state::omega_grid];
    const double omega_pll = x[state::omega_pll];
    const double p_gov = x[state::p_gov];

    const double p_e = link_power(x);
    const double p_m = droop_power(v.p_star, v.k_omega, v.omega_star, omega_vsg);
    const double p_d = damping_power(v.k_d, omega_vsg, omega_pll);

    SimState dx;
    if (v.swing_form == SwingForm::DampingInside) {
        dx[state::omega_vsg] = (p_m - p_e - p_d) / v.t_a;
    } else {
        dx[state::omega_vsg] = (p_m - p_e) / v.t_a - p_d;
    }
    dx[state::delta] = (omega_vsg - omega_grid) * config_.base.omega_base();

    const double p_load = g.p_load0 + load_offset;
    const double accel = p_gen0_ + p_gov + p_e * plant_to_grid_ - p_load - g.d_grid * (omega_grid - 1.0);
    dx[state::omega_grid] = accel / (2.0 * g.h_grid);
    dx[state::omega_pll] = (omega_grid - omega_pll) / v.t_pll;
    dx[state::p_gov] = (-(omega_grid - 1.0) / g.r_gov - p_gov) / g.t_gov;
    return dx;
}

SimState derivatives(const SimState& x, const Model& model, std::span<const Event> active_events) {
    return model.derivatives(x, load_offset(active_events));
}

SimState step_rk4(const SimState& x, double dt, const Model& model, double load_offset) {
    if (!(dt > 0.0)) {
        throw DomainError("step_rk4: dt must be > 0");
    }
    SimState next = step_rk4(x, dt, [&](const SimState& s) { return model.derivatives(s, load_offset); });
    if (!next.allFinite()) {
        throw IntegrationFault(-1, std::numeric_limits<double>::quiet_NaN());
    }
    return next;
}

void Trace::resize(Eigen::Index n) {
    for (auto* column : {&time, &f_pcc, &omega_vsg, &p_e, &p_m_star, &p_d, &p_bess, &p_pv}) {
        column->resize(n);
    }
}

namespace {

struct EventWindow {
    std::int64_t first;  // first step the event is active
    std::int64_t last;   // one past the last active step
    double offset;
};

std::int64_t snap(double t, double dt) { return static_cast<std::int64_t>(std::llround(t / dt)); }

}  // namespace

Trace simulate(const Config& config, std::span<const Event> events, const SimulationOptions& options) {
    const double dt = options.dt;
    if (!(std::isfinite(options.t_end) && options.t_end > 0.0)) {
        throw DomainError("simulate: t_end must be > 0");
    }
    if (!(std::isfinite(dt) && dt > 0.0)) {
        throw DomainError("simulate: dt must be > 0");
    }
    if (!(dt <= config.vsg.t_pll / 5.0)) {
        throw DomainError("simulate: dt must be <= t_pll / 5 (" + std::to_string(config.vsg.t_pll / 5.0) + " s)");
    }
    validate_events(events);

    const Model model(config);
    const auto& v = model.vsg();

    const std::int64_t steps = snap(options.t_end, dt);
    if (steps < 1) {
        throw DomainError("simulate: t_end shorter than one step");
    }

    std::vector<EventWindow> windows;
    windows.reserve(events.size());
    constexpr auto kNever = std::numeric_limits<std::int64_t>::max();
    for (const auto& e : events) {
        const std::int64_t first = snap(e.t_start, dt);
        const std::int64_t last = std::isfinite(e.duration) ? snap(e.t_start + e.duration, dt) : kNever;
        windows.push_back({first, last, e.load_offset()});
    }

    Trace trace;
    trace.dt = dt;
    trace.f_nominal = model.base().f_base_hz;
    trace.resize(steps + 1);

    auto record = [&](std::int64_t k, const SimState& x) {
        const double p_e = model.link_power(x);
        trace.time[k] = static_cast<double>(k) * dt;
        trace.omega_vsg[k] = x[state::omega_vsg];
        trace.f_pcc[k] = x[state::omega_vsg] * model.base().f_base_hz;
        trace.p_e[k] = p_e;
        trace.p_m_star[k] = droop_power(v.p_star, v.k_omega, v.omega_star, x[state::omega_vsg]);
        trace.p_d[k] = damping_power(v.k_d, x[state::omega_vsg], x[state::omega_pll]);
        trace.p_pv[k] = v.p_pv;
        trace.p_bess[k] = bess_power(p_e, v.p_pv);
    };

    SimState x = model.equilibrium();
    record(0, x);
    for (std::int64_t k = 0; k < steps; ++k) {
        double offset = 0.0;
        for (const auto& w : windows) {
            if (k >= w.first && k < w.last) {
                offset += w.offset;
            }
        }
        try {
            x = step_rk4(x, dt, model, offset);
        } catch (const IntegrationFault&) {
            throw IntegrationFault(k + 1, static_cast<double>(k + 1) * dt);
        }
        record(k + 1, x);
    }
    return trace;
}

}  // namespace vsgsize
