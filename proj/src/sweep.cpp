#include <algorithm>
#include <atomic>
#include <thread>

#include "vsgsize/scenario.hpp"

namespace vsgsize {

ScenarioOutcome evaluate(const Scenario& scenario) {
    ScenarioOutcome out;
    out.trace = simulate(scenario.config(), scenario.events, {scenario.t_end, scenario.dt});

    const double t_event = scenario.t_event();
    out.metrics = compute_metrics(out.trace, {scenario.rocof_window, scenario.settling_band, t_event});
    out.sizing = build_report(out.metrics, out.trace, t_event, scenario.base,
                              {scenario.sizing_horizon, scenario.dg_capacity_mw, kRocofLimit});

    auto& row = out.row;
    row.name = scenario.name;
    row.k_d = scenario.vsg.k_d;
    row.k_omega = scenario.vsg.k_omega;
    row.t_a = scenario.vsg.t_a;
    row.f_min = out.metrics.f_min;
    row.f_max = out.metrics.f_max;
    row.rocof_max = out.metrics.rocof_max;
    row.charge_peak = out.metrics.charge_peak;
    row.discharge_peak = out.metrics.discharge_peak;
    row.power_range = out.metrics.power_range;
    row.e_batt = out.sizing.e_batt;
    row.compliant = out.sizing.rocof_compliant;
    return out;
}

SweepRun run_sweep(const std::vector<Scenario>& scenarios, unsigned threads) {
    if (scenarios.empty()) {
        throw DomainError("run_sweep: no scenarios");
    }
    const std::size_t n = scenarios.size();
    SweepRun run;
    run.result.rows.resize(n);
    run.traces.resize(n);

    auto work = [&](std::size_t i) {
        const auto& s = scenarios[i];
        try {
            auto outcome = evaluate(s);
            run.result.rows[i] = std::move(outcome.row);
            run.traces[i] = std::move(outcome.trace);
        } catch (const Error& e) {
            SweepRow row;
            row.name = s.name;
            row.k_d = s.vsg.k_d;
            row.k_omega = s.vsg.k_omega;
            row.t_a = s.vsg.t_a;
            row.status = e.what();
            run.result.rows[i] = std::move(row);
        }
    };

    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) work(i);
        return run;
    }

    // Each slot is written by exactly one worker.
    std::atomic<std::size_t> next{0};
    {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++) work(i);
            });
        }
    }
    return run;
}

}  // namespace vsgsize
