#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "vsgsize/scenario.hpp"

namespace vsgsize {

using nlohmann::json;

double Scenario::t_event() const {
    if (events.empty()) {
        return 0.0;
    }
    return std::min_element(events.begin(), events.end(),
                            [](const Event& a, const Event& b) { return a.t_start < b.t_start; })
        ->t_start;
}

Event default_contingency(const GridParams& grid) {
    constexpr double kLostLoadMw = 2.749;
    return Event{EventKind::LoadStep, -kLostLoadMw / grid.s_base_mw, 1.0, 0.2};
}

bool is_preset(std::string_view name) { return name == "table1" || name == "table2"; }

std::vector<Scenario> preset(std::string_view name) {
    double t_a = 0.0;
    if (name == "table1") {
        t_a = 4.0;
    } else if (name == "table2") {
        t_a = 10.0;
    } else {
        throw DomainError("unknown preset '" + std::string(name) + "' (expected table1 or table2)");
    }
    std::vector<Scenario> out;
    for (double k_d : {400.0, 0.0}) {
        for (double k_omega : {20.0, 40.0}) {
            Scenario s;
            s.vsg.t_a = t_a;
            s.vsg.k_d = k_d;
            s.vsg.k_omega = k_omega;
            s.events = {default_contingency(s.grid)};
            std::ostringstream n;
            n << name << "_kd" << k_d << "_kw" << k_omega;
            s.name = n.str();
            out.push_back(std::move(s));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// JSON parsing
// ---------------------------------------------------------------------------

namespace {

std::size_t line_of(std::string_view text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
    throw ParseError(field + ": " + what, 0, field);
}

double number(const json& j, const std::string& field) {
    if (!j.is_number()) {
        field_error(field, "expected a number");
    }
    return j.get<double>();
}

/// Reads the keys of `obj` through `handlers`; unknown keys are errors.
template <typename Handlers>
void read_object(const json& obj, const std::string& path, const Handlers& handlers) {
    if (!obj.is_object()) {
        field_error(path, "expected an object");
    }
    for (const auto& [key, value] : obj.items()) {
        const std::string field = path.empty() ? key : path + "." + key;
        if (!handlers(key, value, field)) {
            field_error(field, "unknown field");
        }
    }
}

void read_vsg(const json& j, const std::string& path, VsgParams& v) {
    read_object(j, path, [&](const std::string& key, const json& value, const std::string& field) {
        if (key == "t_a") v.t_a = number(value, field);
        else if (key == "k_d") v.k_d = number(value, field);
        else if (key == "k_omega") v.k_omega = number(value, field);
        else if (key == "p_star") v.p_star = number(value, field);
        else if (key == "omega_star") v.omega_star = number(value, field);
        else if (key == "e_a") v.e_a = number(value, field);
        else if (key == "e_t") v.e_t = number(value, field);
        else if (key == "x_t") v.x_t = number(value, field);
        else if (key == "t_pll") v.t_pll = number(value, field);
        else if (key == "p_pv") v.p_pv = number(value, field);
        else if (key == "swing_form") {
            const auto s = value.is_string() ? value.get<std::string>() : std::string();
            if (s == "damping-inside") v.swing_form = SwingForm::DampingInside;
            else if (s == "damping-outside") v.swing_form = SwingForm::DampingOutside;
            else field_error(field, "expected \"damping-inside\" or \"damping-outside\"");
        } else return false;
        return true;
    });
}

void read_grid(const json& j, const std::string& path, GridParams& g) {
    read_object(j, path, [&](const std::string& key, const json& value, const std::string& field) {
        if (key == "h_grid") g.h_grid = number(value, field);
        else if (key == "d_grid") g.d_grid = number(value, field);
        else if (key == "r_gov") g.r_gov = number(value, field);
        else if (key == "t_gov") g.t_gov = number(value, field);
        else if (key == "p_load0") g.p_load0 = number(value, field);
        else if (key == "p_gen0") {
            if (value.is_null()) g.p_gen0.reset();
            else g.p_gen0 = number(value, field);
        } else if (key == "s_base_mw") g.s_base_mw = number(value, field);
        else return false;
        return true;
    });
}

void read_base(const json& j, const std::string& path, BaseQuantities& b) {
    read_object(j, path, [&](const std::string& key, const json& value, const std::string& field) {
        if (key == "s_base_mw") b.s_base_mw = number(value, field);
        else if (key == "f_base_hz") b.f_base_hz = number(value, field);
        else return false;
        return true;
    });
}

/// Events are resolved after the grid block so magnitude_mw uses the final grid base.
struct PendingEvent {
    Event event;
    std::optional<double> magnitude_mw;
};

std::vector<PendingEvent> read_events(const json& j, const std::string& path) {
    if (!j.is_array()) {
        field_error(path, "expected an array");
    }
    std::vector<PendingEvent> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string item = path + "[" + std::to_string(i) + "]";
        PendingEvent pending;
        bool has_magnitude = false;
        read_object(j[i], item, [&](const std::string& key, const json& value, const std::string& field) {
            if (key == "kind") {
                const auto s = value.is_string() ? value.get<std::string>() : std::string();
                if (s == "load-step") pending.event.kind = EventKind::LoadStep;
                else if (s == "generation-step") pending.event.kind = EventKind::GenerationStep;
                else field_error(field, "expected \"load-step\" or \"generation-step\"");
            } else if (key == "magnitude_pu") {
                pending.event.magnitude = number(value, field);
                has_magnitude = true;
            } else if (key == "magnitude_mw") {
                pending.magnitude_mw = number(value, field);
                has_magnitude = true;
            } else if (key == "t_start") {
                pending.event.t_start = number(value, field);
            } else if (key == "duration") {
                pending.event.duration =
                    value.is_null() ? std::numeric_limits<double>::infinity() : number(value, field);
            } else {
                return false;
            }
            return true;
        });
        if (!has_magnitude) {
            field_error(item, "missing magnitude_pu or magnitude_mw");
        }
        if (j[i].contains("magnitude_pu") && j[i].contains("magnitude_mw")) {
            field_error(item, "give only one of magnitude_pu and magnitude_mw");
        }
        out.push_back(pending);
    }
    return out;
}

struct ScenarioDraft {
    Scenario scenario;
    std::optional<std::vector<PendingEvent>> events;
};

void read_scenario(const json& j, const std::string& path, ScenarioDraft& draft, bool allow_name) {
    auto& s = draft.scenario;
    read_object(j, path, [&](const std::string& key, const json& value, const std::string& field) {
        if (key == "name" && allow_name) {
            if (!value.is_string()) field_error(field, "expected a string");
            s.name = value.get<std::string>();
        } else if (key == "vsg") read_vsg(value, field, s.vsg);
        else if (key == "grid") read_grid(value, field, s.grid);
        else if (key == "base") read_base(value, field, s.base);
        else if (key == "events") draft.events = read_events(value, field);
        else if (key == "t_end") s.t_end = number(value, field);
        else if (key == "dt") s.dt = number(value, field);
        else if (key == "rocof_window") s.rocof_window = number(value, field);
        else if (key == "settling_band") s.settling_band = number(value, field);
        else if (key == "sizing_horizon") s.sizing_horizon = number(value, field);
        else if (key == "dg_capacity_mw") s.dg_capacity_mw = number(value, field);
        else return false;
        return true;
    });
}

Scenario finish(ScenarioDraft draft) {
    auto& s = draft.scenario;
    if (draft.events) {
        s.events.clear();
        for (const auto& pending : *draft.events) {
            Event e = pending.event;
            if (pending.magnitude_mw) {
                e.magnitude = *pending.magnitude_mw / s.grid.s_base_mw;
            }
            s.events.push_back(e);
        }
    } else {
        s.events = {default_contingency(s.grid)};
    }
    return s;
}

void check_positive(std::vector<Violation>& out, const std::string& prefix, const char* field, double v) {
    if (!(std::isfinite(v) && v > 0.0)) {
        out.push_back({prefix + field, std::string(field) + " > 0"});
    }
}

}  // namespace

void validate_scenarios(const std::vector<Scenario>& scenarios) {
    std::vector<Violation> all;
    std::set<std::string> names;
    for (std::size_t i = 0; i < scenarios.size(); ++i) {
        const auto& s = scenarios[i];
        const std::string prefix = "scenarios[" + std::to_string(i) + "]" + (s.name.empty() ? "" : " '" + s.name + "'") + ".";
        if (s.name.empty()) {
            all.push_back({prefix + "name", "a non-empty name"});
        } else if (!names.insert(s.name).second) {
            all.push_back({prefix + "name", "a name unique within the sweep"});
        }
        try {
            validate(s.vsg, s.grid, s.base);
        } catch (const ValidationError& e) {
            for (const auto& v : e.violations()) all.push_back({prefix + v.field, v.bound});
        }
        try {
            validate_events(s.events);
        } catch (const ValidationError& e) {
            for (const auto& v : e.violations()) all.push_back({prefix + v.field, v.bound});
        }
        check_positive(all, prefix, "t_end", s.t_end);
        check_positive(all, prefix, "dt", s.dt);
        check_positive(all, prefix, "rocof_window", s.rocof_window);
        check_positive(all, prefix, "settling_band", s.settling_band);
        check_positive(all, prefix, "sizing_horizon", s.sizing_horizon);
        if (!(std::isfinite(s.dg_capacity_mw) && s.dg_capacity_mw >= 0.0)) {
            all.push_back({prefix + "dg_capacity_mw", "dg_capacity_mw >= 0"});
        }
        if (std::isfinite(s.dt) && std::isfinite(s.vsg.t_pll) && s.dt > s.vsg.t_pll / 5.0) {
            all.push_back({prefix + "dt", "dt <= vsg.t_pll / 5"});
        }
        if (std::isfinite(s.dt) && s.dt > 0.0 && std::isfinite(s.rocof_window) && s.rocof_window < s.dt) {
            all.push_back({prefix + "rocof_window", "rocof_window >= dt"});
        }
    }
    if (!all.empty()) {
        throw ValidationError(std::move(all));
    }
}

std::vector<Scenario> parse_config(std::string_view text) {
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const std::size_t line = line_of(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError("line " + std::to_string(line) + ": " + e.what(), line, "");
    }
    if (!root.is_object()) {
        field_error("<root>", "expected an object");
    }

    std::vector<Scenario> scenarios;
    if (root.contains("scenarios")) {
        ScenarioDraft defaults;
        for (const auto& [key, value] : root.items()) {
            if (key != "defaults" && key != "scenarios") {
                field_error(key, "unknown field");
            }
        }
        if (root.contains("defaults")) {
            read_scenario(root["defaults"], "defaults", defaults, false);
        }
        const auto& list = root["scenarios"];
        if (!list.is_array() || list.empty()) {
            field_error("scenarios", "expected a non-empty array");
        }
        for (std::size_t i = 0; i < list.size(); ++i) {
            ScenarioDraft draft = defaults;
            read_scenario(list[i], "scenarios[" + std::to_string(i) + "]", draft, true);
            scenarios.push_back(finish(std::move(draft)));
        }
    } else {
        ScenarioDraft draft;
        read_scenario(root, "", draft, true);
        if (draft.scenario.name.empty()) {
            draft.scenario.name = "scenario";
        }
        scenarios.push_back(finish(std::move(draft)));
    }
    validate_scenarios(scenarios);
    return scenarios;
}

std::vector<Scenario> load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(path.string(), "cannot open configuration");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

void apply_overrides(std::vector<Scenario>& scenarios, const Overrides& o) {
    for (auto& s : scenarios) {
        if (o.dt) s.dt = *o.dt;
        if (o.t_end) s.t_end = *o.t_end;
        if (o.rocof_window) s.rocof_window = *o.rocof_window;
        if (o.sizing_horizon) s.sizing_horizon = *o.sizing_horizon;
        if (o.swing_form) s.vsg.swing_form = *o.swing_form;
    }
}

}  // namespace vsgsize
