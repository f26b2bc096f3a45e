#include "vsgsize/perunit.hpp"

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "vsgsize/errors.hpp"

namespace vsgsize {

namespace {

constexpr double kBalanceTolerance = 1e-9;

class Checker {
public:
    void positive(const char* field, double v) { require(field, std::isfinite(v) && v > 0.0, "> 0"); }
    void non_negative(const char* field, double v) { require(field, std::isfinite(v) && v >= 0.0, ">= 0"); }
    void finite(const char* field, double v) { require(field, std::isfinite(v), "a finite value"); }

    void require(const char* field, bool ok, const std::string& bound) {
        if (!ok) {
            violations_.push_back({field, std::string(leaf(field)) + " " + bound});
        }
    }

    std::vector<Violation> take() { return std::move(violations_); }

private:
    static const char* leaf(const char* field) {
        const char* dot = std::strrchr(field, '.');
        return dot ? dot + 1 : field;
    }

    std::vector<Violation> violations_;
};

}  // namespace

double to_per_unit(double value_mw, const BaseQuantities& base) {
    Checker check;
    check.finite("value_mw", value_mw);
    check.positive("base.s_base_mw", base.s_base_mw);
    if (auto v = check.take(); !v.empty()) {
        throw ValidationError(std::move(v));
    }
    return value_mw / base.s_base_mw;
}

double balanced_generation(const Config& config) {
    return config.grid.p_load0 - config.vsg.p_star * plant_to_grid_ratio(config);
}

Config validate(const VsgParams& vsg, const GridParams& grid, const BaseQuantities& base) {
    Checker check;

    check.positive("base.s_base_mw", base.s_base_mw);
    check.positive("base.f_base_hz", base.f_base_hz);

    check.positive("vsg.t_a", vsg.t_a);
    check.non_negative("vsg.k_d", vsg.k_d);
    check.non_negative("vsg.k_omega", vsg.k_omega);
    check.finite("vsg.p_star", vsg.p_star);
    check.finite("vsg.omega_star", vsg.omega_star);
    check.positive("vsg.e_a", vsg.e_a);
    check.positive("vsg.e_t", vsg.e_t);
    check.positive("vsg.x_t", vsg.x_t);
    check.positive("vsg.t_pll", vsg.t_pll);
    check.non_negative("vsg.p_pv", vsg.p_pv);

    check.positive("grid.h_grid", grid.h_grid);
    check.non_negative("grid.d_grid", grid.d_grid);
    check.positive("grid.r_gov", grid.r_gov);
    check.positive("grid.t_gov", grid.t_gov);
    check.finite("grid.p_load0", grid.p_load0);
    check.positive("grid.s_base_mw", grid.s_base_mw);

    Config config{vsg, grid, base};
    if (grid.p_gen0) {
        check.finite("grid.p_gen0", *grid.p_gen0);
        if (std::isfinite(*grid.p_gen0) && std::isfinite(balanced_generation(config)) &&
            base.s_base_mw > 0.0 && grid.s_base_mw > 0.0) {
            check.require("grid.p_gen0", std::abs(*grid.p_gen0 - balanced_generation(config)) <= kBalanceTolerance,
                          "= p_load0 - p_star * s_base / grid s_base (network balanced at t = 0)");
        }
    }

    if (auto v = check.take(); !v.empty()) {
        throw ValidationError(std::move(v));
    }
    return config;
}

}  // namespace vsgsize
