#pragma once

#include <numbers>
#include <optional>

namespace vsgsize {

/// Power and frequency bases. Speeds are carried in pu of omega_base() everywhere
/// except at the metrics boundary, where frequencies are reported in Hz.
struct BaseQuantities {
    double s_base_mw = 2.75;  // inverter / PV plant rating
    double f_base_hz = 60.0;

    double omega_base() const noexcept { return 2.0 * std::numbers::pi * f_base_hz; }
};

/// Where the damping power enters the virtual swing equation.
enum class SwingForm {
    DampingInside,   // dw/dt = (P_m* - P_e - P_d) / T_a
    DampingOutside,  // dw/dt = (P_m* - P_e) / T_a - P_d
};

/// Virtual synchronous generator control constants, all pu on BaseQuantities.
struct VsgParams {
    double t_a = 4.0;  // virtual inertia time constant (2H), s
    double k_d = 400.0;
    double k_omega = 20.0;
    double p_star = 1.0;
    double omega_star = 1.0;
    double e_a = 1.0;
    double e_t = 1.0;
    double x_t = 0.5;
    double t_pll = 0.05;  // s
    double p_pv = 1.0;
    SwingForm swing_form = SwingForm::DampingInside;
};

/// Aggregate grid seen by the plant: one inertia, load damping and a first-order
/// droop governor, on its own power base. Defaults are calibration knobs.
struct GridParams {
    double h_grid = 9.0;  // s
    double d_grid = 1.0;
    double r_gov = 0.01;
    double t_gov = 0.1;  // s
    double p_load0 = 1.0;
    std::optional<double> p_gen0;  // filled from the power balance when absent
    double s_base_mw = 16.0;
};

struct Config {
    VsgParams vsg;
    GridParams grid;
    BaseQuantities base;
};

/// MW -> pu on `base`. Throws ValidationError for a non-finite value or a non-positive base.
double to_per_unit(double value_mw, const BaseQuantities& base);

/// Checks every parameter invariant and returns the configuration unchanged,
/// or throws ValidationError listing all violations.
Config validate(const VsgParams& vsg, const GridParams& grid, const BaseQuantities& base);
inline Config validate(const Config& c) { return validate(c.vsg, c.grid, c.base); }

/// Grid-side generation that balances the network when the plant exports p_star.
double balanced_generation(const Config& config);

/// s_base / grid base: converts plant pu to grid pu.
inline double plant_to_grid_ratio(const Config& c) { return c.base.s_base_mw / c.grid.s_base_mw; }

}  // namespace vsgsize
