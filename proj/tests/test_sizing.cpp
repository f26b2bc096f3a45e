#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "support.hpp"
#include "vsgsize/sizing.hpp"

using namespace vsgsize;
using vsgsize::testing::pulse;
using vsgsize::testing::reference_config;
using vsgsize::testing::trace_from_power;

namespace {

/// Dense midpoint rule on a continuous function, split by sign.
template <typename F>
std::pair<double, double> dense_midpoint(F f, double t0, double t1, int n) {
    const double h = (t1 - t0) / n;
    double pos = 0.0, neg = 0.0;
    for (int i = 0; i < n; ++i) {
        const double v = f(t0 + (i + 0.5) * h);
        (v >= 0.0 ? pos : neg) += std::abs(v) * h;
    }
    return {neg, pos};
}

std::vector<double> sample(double dt, double t_end, auto f) {
    std::vector<double> out;
    const int n = static_cast<int>(std::lround(t_end / dt));
    for (int k = 0; k <= n; ++k) out.push_back(f(k * dt));
    return out;
}

}  // namespace

TEST_CASE("energy_split on rectangles") {
    // +0.5 pu for 2 s then -0.5 pu for 1 s, sampled so the sign flip is a vertical edge.
    std::vector<double> p;
    const double dt = 1e-3;
    for (int k = 0; k <= 3000; ++k) p.push_back(k < 2000 ? 0.5 : -0.5);
    const auto split = energy_split(trace_from_power(p, dt), 0.0, 3.0);
    // The one straddling interval contributes two 0.25 dt triangles.
    CHECK(split.delivered == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(split.stored == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(split.total == split.stored + split.delivered);
}

TEST_CASE("energy_split on rectangles with an exact zero at the switch") {
    std::vector<double> p{0.5, 0.5, 0.5, 0.0, -0.5, -0.5};
    const auto split = energy_split(trace_from_power(p, 1.0), 0.0, 5.0);
    CHECK(split.delivered == doctest::Approx(1.25));
    CHECK(split.stored == doctest::Approx(0.75));
}

TEST_CASE("energy_split of zero power") {
    const auto split = energy_split(trace_from_power(std::vector<double>(100, 0.0), 1e-3), 0.0, 0.099);
    CHECK(split.stored == 0.0);
    CHECK(split.delivered == 0.0);
    CHECK(split.total == 0.0);
}

TEST_CASE("energy_split of one sine period matches a dense quadrature oracle") {
    const double dt = 1e-3;
    auto f = [](double t) { return std::sin(2.0 * std::numbers::pi * t); };
    const auto samples = sample(dt, 1.0, f);
    const auto split = energy_split(trace_from_power(samples, dt), 0.0, 1.0);

    // Dense midpoint quadrature of the sampled signal's linear interpolant.
    auto interp = [&](double t) {
        const auto k = std::min<std::size_t>(static_cast<std::size_t>(t / dt), samples.size() - 2);
        const double u = t / dt - static_cast<double>(k);
        return (1.0 - u) * samples[k] + u * samples[k + 1];
    };
    const auto [neg, pos] = dense_midpoint(interp, 0.0, 1.0, 4'000'000);
    CHECK(std::abs(split.total - (neg + pos)) / (neg + pos) < 1e-6);
    CHECK(std::abs(split.delivered - pos) / pos < 1e-6);
    CHECK(std::abs(split.stored - neg) / neg < 1e-6);

    // Against the exact 2/pi, the trapezoid error is bounded by (2 pi dt)^2 / 12.
    const double exact = 2.0 / std::numbers::pi;
    const double bound = std::pow(2.0 * std::numbers::pi * dt, 2) / 12.0;
    CHECK(std::abs(split.total - exact) / exact <= 1.01 * bound);
}

TEST_CASE("energy_split handles interval ends between samples") {
    // Linear ramp p = t: integral over [a, b] is (b^2 - a^2) / 2 exactly.
    const double dt = 0.1;
    const auto t = trace_from_power(sample(dt, 2.0, [](double x) { return x; }), dt);
    const auto split = energy_split(t, 0.25, 1.73);
    CHECK(split.delivered == doctest::Approx((1.73 * 1.73 - 0.25 * 0.25) / 2).epsilon(1e-12));
    const auto inside = energy_split(t, 0.31, 0.37);
    CHECK(inside.delivered == doctest::Approx((0.37 * 0.37 - 0.31 * 0.31) / 2).epsilon(1e-12));
}

TEST_CASE("energy_split domain errors") {
    const auto t = trace_from_power(std::vector<double>(11, 0.1), 0.1);
    CHECK_THROWS_AS(energy_split(t, -0.1, 0.5), DomainError);
    CHECK_THROWS_AS(energy_split(t, 0.5, 0.5), DomainError);
    CHECK_THROWS_AS(energy_split(t, 0.5, 1.5), DomainError);
    CHECK_NOTHROW(energy_split(t, 0.0, 1.0));
}

TEST_CASE("energy_split is additive over an interior sample") {
    const Trace t = simulate(reference_config(4.0, 0.0, 20.0), pulse(), {10.0, 1e-3});
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> pick(1001, 8999);
    for (int i = 0; i < 50; ++i) {
        const double tm = pick(rng) * 1e-3;
        const auto whole = energy_split(t, 1.0, 9.0);
        const auto left = energy_split(t, 1.0, tm);
        const auto right = energy_split(t, tm, 9.0);
        CHECK(left.stored + right.stored == doctest::Approx(whole.stored).epsilon(1e-12));
        CHECK(left.delivered + right.delivered == doctest::Approx(whole.delivered).epsilon(1e-12));
    }
}

TEST_CASE("energy_split scales linearly with power") {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> v(-1.0, 1.0);
    std::vector<double> p(400);
    for (auto& x : p) x = v(rng);
    for (double c : {0.5, 2.0, 4.0, 1024.0}) {
        std::vector<double> q(p);
        for (auto& x : q) x *= c;
        const auto a = energy_split(trace_from_power(p, 1e-2), 0.0, 3.99);
        const auto b = energy_split(trace_from_power(q, 1e-2), 0.0, 3.99);
        // Powers of two scale exactly; others to rounding.
        CHECK(b.stored == doctest::Approx(c * a.stored).epsilon(1e-13));
        CHECK(b.delivered == doctest::Approx(c * a.delivered).epsilon(1e-13));
        CHECK(b.total == doctest::Approx(c * a.total).epsilon(1e-13));
    }
}

namespace {

double midpoint_gap(auto f, double dt, double t_end) {
    const auto split = energy_split(trace_from_power(sample(dt, t_end, f), dt), 0.0, t_end);
    double area = 0.0;
    const int n = static_cast<int>(std::lround(t_end / dt));
    for (int i = 0; i < n; ++i) area += std::abs(f((i + 0.5) * dt)) * dt;
    return std::abs(split.total - area);
}

}  // namespace

TEST_CASE("energy_split agrees with a midpoint oracle to O(dt^2) on smooth signals") {
    SUBCASE("single-signed signal: second-order convergence") {
        auto f = [](double t) { return 0.3 * std::sin(3.0 * t) * std::exp(-0.2 * t) + 0.5; };
        const double e1 = midpoint_gap(f, 0.02, 4.0), e2 = midpoint_gap(f, 0.01, 4.0);
        CHECK(e1 < 1e-3);
        CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
    }
    SUBCASE("sign-changing signal: gap bounded by C dt^2") {
        auto f = [](double t) { return 0.3 * std::sin(3.0 * t) * std::exp(-0.2 * t) + 0.05; };
        for (double dt : {0.02, 0.01, 0.005, 0.0025}) CHECK(midpoint_gap(f, dt, 4.0) < 2.0 * dt * dt);
    }
}

TEST_CASE("first zero-crossing energy of a rectangle") {
    std::vector<double> p;
    const double dt = 1e-3;
    for (int k = 0; k <= 3000; ++k) p.push_back(k <= 1000 ? 0.4 : -0.4);
    const auto first = energy_to_first_zero_crossing(trace_from_power(p, dt), 0.0);
    CHECK(first.crossed);
    // Crossing interpolated halfway into the straddling step.
    CHECK(first.t_end == doctest::Approx(1.0005));
    CHECK(first.energy == doctest::Approx(0.4 * 1.0 + 0.5 * 0.4 * 0.0005).epsilon(1e-12));
}

TEST_CASE("first zero-crossing energy with an exact zero sample") {
    const std::vector<double> p{0.4, 0.4, 0.4, 0.0, -0.4};
    const auto first = energy_to_first_zero_crossing(trace_from_power(p, 0.5), 0.0);
    CHECK(first.crossed);
    CHECK(first.t_end == 1.5);
    CHECK(first.energy == doctest::Approx(0.4 + 0.1));
}

TEST_CASE("first zero-crossing energy without a lobe") {
    const auto first = energy_to_first_zero_crossing(trace_from_power(std::vector<double>(100, 0.0), 1e-3), 0.01);
    CHECK_FALSE(first.crossed);
    CHECK(first.energy == 0.0);
    CHECK(first.t_end == doctest::Approx(0.099));
}

TEST_CASE("first zero-crossing energy domain errors") {
    const auto t = trace_from_power(std::vector<double>(10, 0.1), 0.1);
    CHECK_THROWS_AS(energy_to_first_zero_crossing(t, -0.1), DomainError);
    CHECK_THROWS_AS(energy_to_first_zero_crossing(t, 1.0), DomainError);
}

TEST_CASE("first zero-crossing energy equals energy_split over the first lobe") {
    const Trace t = simulate(reference_config(), pulse(), {10.0, 1e-3});
    const auto first = energy_to_first_zero_crossing(t, 1.0);
    REQUIRE(first.crossed);
    CHECK(first.t_end > 1.0);
    const auto lobe = energy_split(t, 1.0, first.t_end);
    // Load loss: the battery absorbs first.
    CHECK(std::abs(first.energy - lobe.stored) < 1e-9);
    CHECK(lobe.delivered < 1e-9);
}

TEST_CASE("rocof_compliance at the 0.5 Hz/s limit") {
    CHECK(rocof_compliance(0.26));
    CHECK_FALSE(rocof_compliance(0.57));
    CHECK(rocof_compliance(0.5));
    CHECK(rocof_compliance(0.0));
    CHECK_FALSE(rocof_compliance(0.6, 0.55));
}

TEST_CASE("build_report") {
    SUBCASE("ten percent rule on the 2.75 MW plant") {
        const auto t = trace_from_power(std::vector<double>(100, 0.0), 1e-3);
        const auto r = build_report(compute_metrics(t, {0.01, 0.05, 0.0}), t, 0.0, {}, {30.0, 2.75});
        CHECK(r.ten_percent_rule_mw == doctest::Approx(0.275));
    }
    SUBCASE("zero trace gives zero ratings and complies") {
        const auto t = trace_from_power(std::vector<double>(2000, 0.0), 1e-3);
        const auto r = build_report(compute_metrics(t, {}), t, 1.0, {}, {});
        CHECK(r.e_batt == 0.0);
        CHECK(r.ess_stored == 0.0);
        CHECK(r.ess_delivered == 0.0);
        CHECK(r.e_first_swing == 0.0);
        CHECK(r.power_rating == 0.0);
        CHECK(r.power_rating_mw == 0.0);
        CHECK(r.energy_rating_mwh == 0.0);
        CHECK(r.rocof_compliant);
    }
    SUBCASE("undamped high-inertia run needs more discharge than charge") {
        const Trace t = simulate(reference_config(10.0, 0.0, 20.0), pulse(), {40.0, 1e-3});
        const auto m = compute_metrics(t, {});
        const auto r = build_report(m, t, 1.0, {}, {});
        CHECK(m.discharge_peak > m.charge_peak);
        CHECK(r.power_rating == m.discharge_peak);
        CHECK(r.power_rating_mw == doctest::Approx(m.discharge_peak * 2.75));
    }
    SUBCASE("report invariants on a simulated run") {
        const Trace t = simulate(reference_config(), pulse(), {40.0, 1e-3});
        const auto m = compute_metrics(t, {});
        const auto r = build_report(m, t, 1.0, {}, {});
        CHECK(r.e_batt == r.ess_stored + r.ess_delivered);
        CHECK(r.ess_stored >= 0.0);
        CHECK(r.ess_delivered >= 0.0);
        CHECK(r.e_first_swing <= r.e_batt);
        CHECK(r.energy_rating_mwh == doctest::Approx(r.e_batt * 2.75 / 3600.0));
        const auto window = energy_split(t, 1.0, 31.0);
        CHECK(r.e_batt == window.total);
    }
}
