#pragma once

#include <Eigen/Core>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "vsgsize/errors.hpp"
#include "vsgsize/perunit.hpp"

namespace vsgsize {

// ---------------------------------------------------------------------------
// Algebraic control laws. Templated on the scalar so they can be evaluated on
// plain doubles, Eigen arrays, or autodiff types alike.
// ---------------------------------------------------------------------------

/// Steady power transfer over the link reactance: (e_a e_t / x_t) sin(delta).
template <typename Scalar>
Scalar electrical_power(const Scalar& delta, double e_a, double e_t, double x_t) {
    if (!(x_t > 0.0)) {
        throw DomainError("electrical_power: x_t must be > 0");
    }
    using std::sin;
    return (e_a * e_t / x_t) * sin(delta);
}

/// Virtual governor: P_m* = P* + K_w (w* - w).
template <typename Scalar>
Scalar droop_power(double p_star, double k_omega, double omega_star, const Scalar& omega_vsg) {
    return p_star + k_omega * (omega_star - omega_vsg);
}

/// P_d = K_d (w_vsg - w_pll).
template <typename Scalar>
Scalar damping_power(double k_d, const Scalar& omega_vsg, const Scalar& omega_pll) {
    return k_d * (omega_vsg - omega_pll);
}

/// Battery power on the dc link, discharge positive: P_inverter - P_pv.
template <typename Scalar>
Scalar bess_power(const Scalar& p_inverter, double p_pv) {
    return p_inverter - p_pv;
}

// ---------------------------------------------------------------------------
// State, events, and the coupled model.
// ---------------------------------------------------------------------------

template <typename Scalar>
using StateVector = Eigen::Matrix<Scalar, 5, 1>;

/// [omega_vsg, delta, omega_grid, omega_pll, p_gov]; speeds in pu, delta in rad
/// (VSG angle relative to the grid), p_gov in grid pu.
using SimState = StateVector<double>;

namespace state {
enum Index : Eigen::Index { omega_vsg = 0, delta = 1, omega_grid = 2, omega_pll = 3, p_gov = 4 };
}

enum class EventKind { LoadStep, GenerationStep };

/// Timed power imbalance on the grid side. `magnitude` is signed, pu on the grid base.
struct Event {
    EventKind kind = EventKind::LoadStep;
    double magnitude = 0.0;
    double t_start = 0.0;
    double duration = std::numeric_limits<double>::infinity();

    /// Change in net grid load while the event is active.
    double load_offset() const noexcept { return kind == EventKind::LoadStep ? magnitude : -magnitude; }
};

/// Throws ValidationError unless t_start >= 0, duration > 0 and magnitude is finite.
void validate_events(std::span<const Event> events);

/// Sum of load offsets of `active` events.
double load_offset(std::span<const Event> active);

/// A validated configuration with its derived operating point.
class Model {
public:
    /// Validates `config` and solves the initial operating point.
    /// Throws ValidationError or InfeasibleOperatingPoint.
    explicit Model(const Config& config);

    const Config& config() const noexcept { return config_; }
    const VsgParams& vsg() const noexcept { return config_.vsg; }
    const GridParams& grid() const noexcept { return config_.grid; }
    const BaseQuantities& base() const noexcept { return config_.base; }

    double p_gen0() const noexcept { return p_gen0_; }
    double plant_to_grid() const noexcept { return plant_to_grid_; }
    const SimState& equilibrium() const noexcept { return equilibrium_; }

    /// Time derivative of the state with the grid load shifted by `load_offset`
    /// (grid pu). The system is autonomous apart from the event schedule.
    SimState derivatives(const SimState& x, double load_offset) const;

    /// Inverter output into the link at state `x`.
    double link_power(const SimState& x) const {
        return electrical_power(x[state::delta], config_.vsg.e_a, config_.vsg.e_t, config_.vsg.x_t);
    }

private:
    Config config_;
    double p_gen0_;
    double plant_to_grid_;
    SimState equilibrium_;
};

/// Root of (e_a e_t / x_t) sin(delta) = p_target on the stable branch |delta| < pi/2.
/// Throws InfeasibleOperatingPoint when |p_target| >= e_a e_t / x_t.
double equilibrium_angle(double p_target, double e_a, double e_t, double x_t);

/// Derivatives with the active event set resolved to a load offset.
SimState derivatives(const SimState& x, const Model& model, std::span<const Event> active_events);

/// One RK4 step of the coupled model with the event load held for the whole step.
/// Throws IntegrationFault (step -1) on a non-finite result.
SimState step_rk4(const SimState& x, double dt, const Model& model, double load_offset);

// ---------------------------------------------------------------------------
// Trace and simulation.
// ---------------------------------------------------------------------------

/// Uniform time series of one run. time[k] = k * dt.
struct Trace {
    double dt = 0.0;
    double f_nominal = 60.0;
    Eigen::VectorXd time;
    Eigen::VectorXd f_pcc;  // Hz
    Eigen::VectorXd omega_vsg;
    Eigen::VectorXd p_e;
    Eigen::VectorXd p_m_star;
    Eigen::VectorXd p_d;
    Eigen::VectorXd p_bess;
    Eigen::VectorXd p_pv;

    Eigen::Index size() const noexcept { return time.size(); }
    bool empty() const noexcept { return time.size() == 0; }

    void resize(Eigen::Index n);
};

struct SimulationOptions {
    double t_end = 40.0;
    double dt = 1e-3;
};

/// Runs from the equilibrium to t_end. Event start and stop are snapped to the
/// nearest step boundary. Throws DomainError for bad step settings,
/// ValidationError / InfeasibleOperatingPoint from the model, IntegrationFault
/// with step and time.
Trace simulate(const Config& config, std::span<const Event> events, const SimulationOptions& options);

}  // namespace vsgsize
