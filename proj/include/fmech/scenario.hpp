// fmech — scenario files: validated bridge from TOML text to engine inputs
// A scenario bundles a Lagrangian system, a time grid, an initial condition
// in exactly one picture, an optional force schedule, an optional desired
// path for inverse dynamics, and an output file name. Loading is strict:
// every defect is reported as a configuration error naming the offending
// field, and unknown keys are rejected so typos cannot silently change a run.
#pragma once

#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <fmech/errors.hpp>
#include <fmech/integrate.hpp>
#include <fmech/system.hpp>
#include <fmech/toml.hpp>

namespace fmech {

/// A fully validated scenario, ready to hand to the integrators.
struct Scenario {
    LagrangianSystem system;

    struct {
        double t0{0.0};
        double t1{0.0};
        double dt{0.0};
        std::string picture; ///< "lagrangian" or "hamiltonian"
    } simulation;

    std::vector<double> x0;                ///< initial configuration
    std::optional<std::vector<double>> v0; ///< initial velocity, if given
    std::optional<std::vector<double>> p0; ///< initial momentum, if given

    ForceSchedule forces;             ///< defaults to the zero schedule
    std::optional<DesiredPath> desired; ///< inverse-dynamics target, if given

    std::string output_path;
};

namespace detail {

/// Tracks which keys the loader consumed so leftovers can be rejected.
class ScenarioReader {
  public:
    explicit ScenarioReader(TomlTable table) : table_(std::move(table)) {}

    bool has(const std::string &key) const { return table_.count(key) != 0; }

    double number(const std::string &key) {
        const TomlValue &v = fetch(key);
        if (v.kind != TomlValue::Kind::Number)
            throw config_error(key, "expected a number");
        return v.number;
    }

    std::string string(const std::string &key) {
        const TomlValue &v = fetch(key);
        if (v.kind != TomlValue::Kind::String)
            throw config_error(key, "expected a quoted string");
        return v.text;
    }

    std::vector<double> number_list(const std::string &key) {
        const TomlValue &v = fetch(key);
        if (v.kind == TomlValue::Kind::EmptyList)
            return {};
        if (v.kind != TomlValue::Kind::NumberList)
            throw config_error(key, "expected a list of numbers");
        return v.numbers;
    }

    std::vector<std::string> string_list(const std::string &key) {
        const TomlValue &v = fetch(key);
        if (v.kind == TomlValue::Kind::EmptyList)
            return {};
        if (v.kind != TomlValue::Kind::StringList)
            throw config_error(key, "expected a list of quoted strings");
        return v.texts;
    }

    /// Consume every `prefix.*` number entry into a parameter map.
    ParamMap number_map(const std::string &prefix) {
        ParamMap out;
        const std::string full = prefix + ".";
        for (const auto &kv : table_) {
            if (kv.first.compare(0, full.size(), full) != 0)
                continue;
            if (kv.second.kind != TomlValue::Kind::Number)
                throw config_error(kv.first, "expected a number");
            out[kv.first.substr(full.size())] = kv.second.number;
            consumed_.insert(kv.first);
        }
        return out;
    }

    /// Throw on the first key that no loader step claimed.
    void reject_unconsumed() const {
        for (const auto &kv : table_)
            if (!consumed_.count(kv.first))
                throw config_error(kv.first, "unknown configuration key");
    }

  private:
    const TomlValue &fetch(const std::string &key) {
        auto it = table_.find(key);
        if (it == table_.end())
            throw config_error(key, "missing required field");
        consumed_.insert(key);
        return it->second;
    }

    TomlTable table_;
    std::set<std::string> consumed_;
};

inline int scenario_dim(double raw) {
    const double rounded = std::round(raw);
    if (!(raw > 0.0) || std::abs(raw - rounded) > 0.0 || rounded > 64.0)
        throw config_error("system.dim",
                           "expected a positive integer dimension");
    return static_cast<int>(rounded);
}

inline std::vector<double> fixed_length_vector(ScenarioReader &reader,
                                               const std::string &key,
                                               int dim) {
    std::vector<double> v = reader.number_list(key);
    if (static_cast<int>(v.size()) != dim)
        throw config_error(key, "expected exactly " + std::to_string(dim) +
                                    " entries");
    return v;
}

} // namespace detail

/// Parse and validate scenario text.
inline Scenario load_scenario(const std::string &text) {
    detail::ScenarioReader reader(parse_toml(text));
    Scenario sc;

    // ── system ──────────────────────────────────────────────────────────
    const int dim = detail::scenario_dim(reader.number("system.dim"));
    const std::string L_text = reader.string("system.lagrangian");
    std::vector<std::string> rho_texts;
    if (reader.has("system.rho"))
        rho_texts = reader.string_list("system.rho");
    const ParamMap params = reader.number_map("system.params");
    try {
        sc.system = make_lagrangian_system(dim, L_text, rho_texts, params);
    } catch (const parse_error &e) {
        // Distinguish which text failed: the Lagrangian parses first.
        try {
            std::set<std::string> names;
            for (const auto &kv : params)
                names.insert(kv.first);
            parse(L_text, dim, names, VarPolicy::lagrangian());
        } catch (const parse_error &) {
            throw config_error("system.lagrangian", e.what());
        }
        throw config_error("system.rho", e.what());
    }

    // ── simulation ──────────────────────────────────────────────────────
    sc.simulation.t0 = reader.number("simulation.t0");
    sc.simulation.t1 = reader.number("simulation.t1");
    sc.simulation.dt = reader.number("simulation.dt");
    sc.simulation.picture = reader.string("simulation.picture");
    if (!(sc.simulation.dt > 0.0))
        throw config_error("simulation.dt", "step size must be positive");
    if (!(sc.simulation.t1 > sc.simulation.t0))
        throw config_error("simulation.t1", "end time must exceed start time");
    if (sc.simulation.picture != "lagrangian" &&
        sc.simulation.picture != "hamiltonian")
        throw config_error("simulation.picture",
                           "expected \"lagrangian\" or \"hamiltonian\"");

    // ── initial condition ───────────────────────────────────────────────
    sc.x0 = detail::fixed_length_vector(reader, "initial.x", dim);
    const bool has_v = reader.has("initial.v");
    const bool has_p = reader.has("initial.p");
    if (has_v == has_p)
        throw config_error("initial.v",
                           "give exactly one of initial.v and initial.p");
    if (has_v)
        sc.v0 = detail::fixed_length_vector(reader, "initial.v", dim);
    else
        sc.p0 = detail::fixed_length_vector(reader, "initial.p", dim);

    // ── forces ──────────────────────────────────────────────────────────
    std::vector<std::string> zeta_texts;
    if (reader.has("forces.zeta"))
        zeta_texts = reader.string_list("forces.zeta");
    try {
        sc.forces = make_force_schedule(dim, zeta_texts, params);
    } catch (const parse_error &e) {
        throw config_error("forces.zeta", e.what());
    }

    // ── desired path (inverse dynamics) ─────────────────────────────────
    if (reader.has("desired.path")) {
        const std::vector<std::string> path_texts =
            reader.string_list("desired.path");
        try {
            sc.desired = make_desired_path(dim, path_texts, params);
        } catch (const parse_error &e) {
            throw config_error("desired.path", e.what());
        }
    }

    // ── output ──────────────────────────────────────────────────────────
    sc.output_path = reader.string("output.path");
    if (sc.output_path.empty())
        throw config_error("output.path", "output file name must be nonempty");

    reader.reject_unconsumed();
    return sc;
}

/// Load a scenario from a file on disk.
inline Scenario load_scenario_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw config_error("scenario.file", "cannot open `" + path + "`");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_scenario(buf.str());
}

} // namespace fmech
