#pragma once

#include <vector>

#include "vsgsize/dynamics.hpp"

namespace vsgsize::testing {

/// Synthetic trace with the given p_bess samples; frequency flat at nominal.
inline Trace trace_from_power(const std::vector<double>& p_bess, double dt) {
    Trace t;
    t.dt = dt;
    t.resize(static_cast<Eigen::Index>(p_bess.size()));
    for (Eigen::Index k = 0; k < t.size(); ++k) {
        t.time[k] = static_cast<double>(k) * dt;
        t.f_pcc[k] = 60.0;
        t.omega_vsg[k] = 1.0;
        t.p_bess[k] = p_bess[static_cast<std::size_t>(k)];
        t.p_pv[k] = 1.0;
        t.p_e[k] = 1.0 + t.p_bess[k];
        t.p_m_star[k] = 1.0;
        t.p_d[k] = 0.0;
    }
    return t;
}

/// Synthetic trace with the given frequency samples; battery power zero.
inline Trace trace_from_frequency(const std::vector<double>& f, double dt) {
    Trace t = trace_from_power(std::vector<double>(f.size(), 0.0), dt);
    for (Eigen::Index k = 0; k < t.size(); ++k) {
        t.f_pcc[k] = f[static_cast<std::size_t>(k)];
        t.omega_vsg[k] = t.f_pcc[k] / 60.0;
    }
    return t;
}

/// Reference settings (t_a = 4, k_d = 400, k_omega = 20); pair with pulse().
inline Config reference_config(double t_a = 4.0, double k_d = 400.0, double k_omega = 20.0) {
    Config c;
    c.vsg.t_a = t_a;
    c.vsg.k_d = k_d;
    c.vsg.k_omega = k_omega;
    return c;
}

inline std::vector<Event> pulse(const GridParams& grid = {}) {
    return {Event{EventKind::LoadStep, -2.749 / grid.s_base_mw, 1.0, 0.2}};
}

}  // namespace vsgsize::testing
