// Run configuration: one JSON document that carries every stage's settings.
//
// Every section and key is optional; omitted values take the defaults
// below. Unknown keys are rejected with a message naming the key path.

#pragma once

#include "pmurel/csv.hpp"
#include "pmurel/errors.hpp"
#include "pmurel/fuzzy.hpp"
#include "pmurel/markov.hpp"
#include "pmurel/monte_carlo.hpp"
#include "pmurel/reliability.hpp"

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace pmurel {

inline constexpr const char* run_config_schema = "pmurel.run/1";
inline constexpr const char* markov_model_schema = "pmurel.markov/1";

struct TimeGrid {
    double t_start = 0.0;
    double t_end = 10.0;
    std::size_t n_points = 101;

    void validate(const std::string& where) const
    {
        if (!std::isfinite(t_start) || t_start < 0.0)
            throw ConfigError(where + ".t_start must be finite and >= 0");
        if (!std::isfinite(t_end) || t_end < t_start)
            throw ConfigError(where + ".t_end must be finite and >= t_start");
        if (n_points < 1)
            throw ConfigError(where + ".n_points must be >= 1");
        if (n_points == 1 && t_end != t_start)
            throw ConfigError(where + ".n_points must be >= 2 for a non-degenerate range");
    }

    [[nodiscard]] std::vector<double> points() const
    {
        std::vector<double> t(n_points, t_start);
        for (std::size_t i = 1; i < n_points; ++i)
            t[i] = t_start + (t_end - t_start) * static_cast<double>(i) / static_cast<double>(n_points - 1);
        if (n_points > 1)
            t.back() = t_end;
        return t;
    }
};

struct FuzzyConfig {
    double failure_rate = 0.6566;    // per year
    double repair_figure = 22.2898;  // read according to repair_unit
    RepairUnit repair_unit = RepairUnit::events_per_year;
    double failure_relative_halfwidth = 0.10;
    double repair_relative_halfwidth = 0.10;
    std::vector<double> alpha_grid = uniform_alpha_grid(11);

    [[nodiscard]] TriangularFuzzyNumber failure_number() const
    {
        return TriangularFuzzyNumber::with_relative_spread(failure_rate, failure_relative_halfwidth);
    }

    [[nodiscard]] TriangularFuzzyNumber repair_number() const
    {
        return TriangularFuzzyNumber::with_relative_spread(repair_rate_per_year(repair_figure, repair_unit),
                                                           repair_relative_halfwidth);
    }
};

enum class InteractionSourceKind { closed_form, markov };

struct CurveConfig {
    HardwareParams hardware{0.6566, 1.0};
    SoftwareParams software{10.0, 0.1, 5.0};
    InteractionParams interaction{8.92e-4, 3.92e-3};
    InteractionSourceKind source = InteractionSourceKind::closed_form;
    TimeGrid grid{0.0, 10.0, 101};
};

struct MarkovConfig {
    std::map<std::string, double> transitions{{"UP->HD3", 8.92e-4}, {"HD3->F_INT", 3.92e-3}};
    TimeGrid grid{0.0, 5000.0, 51};
};

struct SimulationSection {
    // Unset rates fall back to the defuzzified fuzzy rates.
    std::optional<double> failure_rate;
    std::optional<double> repair_rate;
    double mission_time = 10.0;
    std::size_t n_replications = 10000;
    std::uint64_t seed = 42;
    std::size_t n_intervals = 8;
    unsigned threads = 0;
};

struct FitConfig {
    double G = 2.0;
    std::vector<double> G_grid;  // empty: fit at G only
    std::optional<std::filesystem::path> exposure_csv;

    [[nodiscard]] std::vector<double> grid() const { return G_grid.empty() ? std::vector<double>{G} : G_grid; }
};

struct RunConfig {
    std::string schema = run_config_schema;
    std::filesystem::path output_dir = "out";
    FuzzyConfig fuzzy;
    CurveConfig curve;
    MarkovConfig markov;
    SimulationSection simulation;
    FitConfig fitting;
};

namespace detail {

using json = nlohmann::json;

class Section {
public:
    Section(const json& j, std::string path) : j_(j), path_(std::move(path))
    {
        if (!j_.is_object())
            throw ConfigError((path_.empty() ? std::string("configuration root") : path_) + " must be a JSON object");
    }

    void only(std::initializer_list<const char*> keys) const
    {
        std::set<std::string> allowed(keys.begin(), keys.end());
        for (const auto& [k, v] : j_.items())
            if (!allowed.contains(k))
                throw ConfigError("unknown configuration key '" + key_path(k) + "'");
    }

    [[nodiscard]] bool has(const char* key) const { return j_.contains(key) && !j_.at(key).is_null(); }
    [[nodiscard]] const json& at(const char* key) const { return j_.at(key); }
    [[nodiscard]] std::string key_path(const std::string& key) const
    {
        return path_.empty() ? key : path_ + "." + key;
    }

    [[nodiscard]] Section sub(const char* key) const { return {j_.at(key), key_path(key)}; }

    void read(const char* key, double& out) const
    {
        if (!has(key))
            return;
        if (!at(key).is_number())
            throw ConfigError(key_path(key) + " must be a number");
        out = at(key).get<double>();
    }

    void read(const char* key, std::optional<double>& out) const
    {
        if (!has(key))
            return;
        double v = 0.0;
        read(key, v);
        out = v;
    }

    template <class Int>
        requires std::is_integral_v<Int>
    void read(const char* key, Int& out) const
    {
        if (!has(key))
            return;
        const auto& v = at(key);
        if (!v.is_number_unsigned())
            throw ConfigError(key_path(key) + " must be a nonnegative integer");
        out = static_cast<Int>(v.get<unsigned long long>());
    }

    void read(const char* key, std::string& out) const
    {
        if (!has(key))
            return;
        if (!at(key).is_string())
            throw ConfigError(key_path(key) + " must be a string");
        out = at(key).get<std::string>();
    }

    void read(const char* key, std::vector<double>& out) const
    {
        if (!has(key))
            return;
        const auto& v = at(key);
        if (!v.is_array())
            throw ConfigError(key_path(key) + " must be an array of numbers");
        out.clear();
        for (const auto& e : v) {
            if (!e.is_number())
                throw ConfigError(key_path(key) + " must be an array of numbers");
            out.push_back(e.get<double>());
        }
    }

private:
    const json& j_;
    std::string path_;
};

inline void read_grid(const Section& s, TimeGrid& g)
{
    s.only({"t_start", "t_end", "n_points"});
    s.read("t_start", g.t_start);
    s.read("t_end", g.t_end);
    s.read("n_points", g.n_points);
}

inline std::map<std::string, double> read_transitions(const Section& s)
{
    std::map<std::string, double> out;
    for (const auto& [k, v] : s.at("transitions").items()) {
        if (!v.is_number())
            throw ConfigError(s.key_path("transitions") + "." + k + " must be a number");
        out[k] = v.get<double>();
    }
    return out;
}

} // namespace detail

inline RepairUnit parse_repair_unit(const std::string& s)
{
    if (s == "events_per_year")
        return RepairUnit::events_per_year;
    if (s == "hours_per_repair")
        return RepairUnit::hours_per_repair;
    throw ConfigError("fuzzy.repair_unit must be 'events_per_year' or 'hours_per_repair', got '" + s + "'");
}

inline std::string to_string(RepairUnit u)
{
    return u == RepairUnit::events_per_year ? "events_per_year" : "hours_per_repair";
}

/// Checks every module invariant the configuration feeds into.
inline void validate(const RunConfig& c)
{
    try {
        check_alpha_grid(c.fuzzy.alpha_grid);
        if (!(c.fuzzy.failure_relative_halfwidth >= 0.0 && c.fuzzy.failure_relative_halfwidth <= 1.0))
            throw std::invalid_argument("fuzzy.failure_relative_halfwidth must lie in [0, 1]");
        if (!(c.fuzzy.repair_relative_halfwidth >= 0.0 && c.fuzzy.repair_relative_halfwidth <= 1.0))
            throw std::invalid_argument("fuzzy.repair_relative_halfwidth must lie in [0, 1]");
        const auto lam = c.fuzzy.failure_number();
        const auto mu = c.fuzzy.repair_number();
        if (lam.upper() == 0.0 && mu.upper() == 0.0)
            throw std::invalid_argument("fuzzy failure and repair rates are both zero");

        c.curve.hardware.validate();
        c.curve.software.validate();
        c.curve.interaction.validate();
        c.curve.grid.validate("curve");
        build_unified_model(c.markov.transitions).validate();
        c.markov.grid.validate("markov");

        SimulationConfig sim;
        sim.failure_rate = c.simulation.failure_rate.value_or(lam.center());
        sim.repair_rate = c.simulation.repair_rate.value_or(mu.center());
        sim.mission_time = c.simulation.mission_time;
        sim.n_replications = c.simulation.n_replications;
        sim.n_intervals = c.simulation.n_intervals;
        sim.validate();

        for (double g : c.fitting.grid())
            if (!(g > 0.0) || !std::isfinite(g))
                throw std::invalid_argument("fitting G values must be finite and > 0");
        if (!(c.fitting.G > 0.0) || !std::isfinite(c.fitting.G))
            throw std::invalid_argument("fitting.G must be finite and > 0");
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

inline RunConfig parse_run_config(const nlohmann::json& j)
{
    using detail::Section;
    RunConfig c;
    const Section root(j, "");
    root.only({"schema", "output_dir", "fuzzy", "curve", "markov", "simulation", "fitting"});
    if (!root.has("schema"))
        throw ConfigError(std::string("configuration is missing 'schema' (expected '") + run_config_schema + "')");
    root.read("schema", c.schema);
    if (c.schema != run_config_schema)
        throw ConfigError("unsupported schema '" + c.schema + "', expected '" + run_config_schema + "'");
    if (root.has("output_dir")) {
        std::string dir;
        root.read("output_dir", dir);
        c.output_dir = dir;
    }

    if (root.has("fuzzy")) {
        const auto s = root.sub("fuzzy");
        s.only({"failure_rate", "repair_rate", "repair_unit", "failure_relative_halfwidth",
                "repair_relative_halfwidth", "alpha_grid", "alpha_levels"});
        s.read("failure_rate", c.fuzzy.failure_rate);
        s.read("repair_rate", c.fuzzy.repair_figure);
        if (s.has("repair_unit")) {
            std::string unit;
            s.read("repair_unit", unit);
            c.fuzzy.repair_unit = parse_repair_unit(unit);
        }
        s.read("failure_relative_halfwidth", c.fuzzy.failure_relative_halfwidth);
        s.read("repair_relative_halfwidth", c.fuzzy.repair_relative_halfwidth);
        if (s.has("alpha_grid") && s.has("alpha_levels"))
            throw ConfigError("fuzzy.alpha_grid and fuzzy.alpha_levels are mutually exclusive");
        if (s.has("alpha_levels")) {
            std::size_t levels = 0;
            s.read("alpha_levels", levels);
            if (levels < 2)
                throw ConfigError("fuzzy.alpha_levels must be >= 2");
            c.fuzzy.alpha_grid = uniform_alpha_grid(levels);
        }
        s.read("alpha_grid", c.fuzzy.alpha_grid);
    }

    if (root.has("curve")) {
        const auto s = root.sub("curve");
        s.only({"hardware", "software", "interaction", "interaction_source", "grid"});
        if (s.has("hardware")) {
            const auto h = s.sub("hardware");
            h.only({"lambda", "beta"});
            h.read("lambda", c.curve.hardware.lambda);
            h.read("beta", c.curve.hardware.beta);
        }
        if (s.has("software")) {
            const auto w = s.sub("software");
            w.only({"a", "b", "T"});
            w.read("a", c.curve.software.a);
            w.read("b", c.curve.software.b);
            w.read("T", c.curve.software.T);
        }
        if (s.has("interaction")) {
            const auto i = s.sub("interaction");
            i.only({"lambda1", "lambda2"});
            i.read("lambda1", c.curve.interaction.lambda1);
            i.read("lambda2", c.curve.interaction.lambda2);
        }
        if (s.has("interaction_source")) {
            std::string src;
            s.read("interaction_source", src);
            if (src == "closed_form")
                c.curve.source = InteractionSourceKind::closed_form;
            else if (src == "markov")
                c.curve.source = InteractionSourceKind::markov;
            else
                throw ConfigError("curve.interaction_source must be 'closed_form' or 'markov', got '" + src + "'");
        }
        if (s.has("grid"))
            detail::read_grid(s.sub("grid"), c.curve.grid);
    }

    if (root.has("markov")) {
        const auto s = root.sub("markov");
        s.only({"transitions", "grid"});
        if (s.has("transitions")) {
            if (!s.at("transitions").is_object())
                throw ConfigError("markov.transitions must be an object of \"FROM->TO\": rate");
            c.markov.transitions = detail::read_transitions(s);
        }
        if (s.has("grid"))
            detail::read_grid(s.sub("grid"), c.markov.grid);
    }

    if (root.has("simulation")) {
        const auto s = root.sub("simulation");
        s.only({"failure_rate", "repair_rate", "mission_time", "n_replications", "seed", "n_intervals", "threads"});
        s.read("failure_rate", c.simulation.failure_rate);
        s.read("repair_rate", c.simulation.repair_rate);
        s.read("mission_time", c.simulation.mission_time);
        s.read("n_replications", c.simulation.n_replications);
        s.read("seed", c.simulation.seed);
        s.read("n_intervals", c.simulation.n_intervals);
        s.read("threads", c.simulation.threads);
    }

    if (root.has("fitting")) {
        const auto s = root.sub("fitting");
        s.only({"G", "G_grid", "exposure_csv"});
        s.read("G", c.fitting.G);
        s.read("G_grid", c.fitting.G_grid);
        if (s.has("exposure_csv")) {
            std::string p;
            s.read("exposure_csv", p);
            c.fitting.exposure_csv = p;
        }
    }
    return c;
}

inline RunConfig parse_run_config(const std::string& text, const std::string& source)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(source + ": invalid JSON: " + e.what());
    }
    try {
        return parse_run_config(j);
    } catch (const ConfigError& e) {
        throw ConfigError(source + ": " + e.what());
    }
}

inline RunConfig load_run_config(const std::filesystem::path& path)
{
    return parse_run_config(read_text_file(path), path.string());
}

/// Standalone model file: {"schema": "pmurel.markov/1", "transitions": {...}}.
inline std::map<std::string, double> parse_markov_model(const std::string& text, const std::string& source)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(source + ": invalid JSON: " + e.what());
    }
    try {
        const detail::Section root(j, "");
        root.only({"schema", "transitions"});
        std::string schema;
        root.read("schema", schema);
        if (schema != markov_model_schema)
            throw ConfigError("unsupported schema '" + schema + "', expected '" + markov_model_schema + "'");
        if (!root.has("transitions") || !root.at("transitions").is_object())
            throw ConfigError("'transitions' must be an object of \"FROM->TO\": rate");
        return detail::read_transitions(root);
    } catch (const ConfigError& e) {
        throw ConfigError(source + ": " + e.what());
    }
}

} // namespace pmurel
