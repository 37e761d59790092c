// The batch commands behind the pmurel CLI. Each command validates its
// configuration, computes, and writes its CSV files into the output
// directory. With dry_run set nothing is written.

#pragma once

#include "pmurel/config.hpp"
#include "pmurel/csv.hpp"
#include "pmurel/errors.hpp"
#include "pmurel/fitting.hpp"
#include "pmurel/fuzzy.hpp"
#include "pmurel/markov.hpp"
#include "pmurel/monte_carlo.hpp"
#include "pmurel/reliability.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace pmurel {

struct CommandOptions {
    bool dry_run = false;
    std::optional<std::filesystem::path> exposure_csv;  // fit input override
    std::optional<std::filesystem::path> markov_model;  // standalone model file
};

struct CommandOutput {
    std::vector<std::filesystem::path> files;
};

namespace detail {

inline std::filesystem::path prepare_output_dir(const RunConfig& rc)
{
    std::error_code ec;
    std::filesystem::create_directories(rc.output_dir, ec);
    if (ec)
        throw IoError("cannot create output directory '" + rc.output_dir.string() + "': " + ec.message());
    return rc.output_dir;
}

inline void emit(const CsvTable& table, const std::filesystem::path& dir, const char* name, CommandOutput& out)
{
    const auto path = dir / name;
    table.write(path);
    out.files.push_back(path);
}

} // namespace detail

struct CrispRates {
    double failure_rate = 0.0;  // per year
    double repair_rate = 0.0;   // per year
};

inline CrispRates crisp_rates(const FuzzyConfig& f)
{
    return {defuzzify(f.failure_number()), defuzzify(f.repair_number())};
}

inline SimulationConfig simulation_config(const RunConfig& rc)
{
    const auto crisp = crisp_rates(rc.fuzzy);
    SimulationConfig sim;
    sim.failure_rate = rc.simulation.failure_rate.value_or(crisp.failure_rate);
    sim.repair_rate = rc.simulation.repair_rate.value_or(crisp.repair_rate);
    sim.mission_time = rc.simulation.mission_time;
    sim.n_replications = rc.simulation.n_replications;
    sim.master_seed = rc.simulation.seed;
    sim.n_intervals = rc.simulation.n_intervals;
    return sim;
}

inline std::map<std::string, double> markov_transitions(const RunConfig& rc, const CommandOptions& opts)
{
    if (opts.markov_model)
        return parse_markov_model(read_text_file(*opts.markov_model), opts.markov_model->string());
    return rc.markov.transitions;
}

// ---------------------------------------------------------------------------

struct FuzzyResult {
    FuzzyIndex failure_band;
    FuzzyIndex repair_band;
    FuzzyIndex availability;
    FuzzyIndex unavailability;
    CrispRates crisp;
    double crisp_availability = 0.0;     // mu / (lambda + mu) at the crisp rates
    double availability_centroid = 0.0;  // centroid of the availability band
};

inline FuzzyResult compute_fuzzy(const FuzzyConfig& f)
{
    const auto lam = f.failure_number();
    const auto mu = f.repair_number();
    FuzzyResult r;
    r.failure_band = fuzzy_band(lam, f.alpha_grid, FuzzyQuantity::failure_rate);
    r.repair_band = fuzzy_band(mu, f.alpha_grid, FuzzyQuantity::repair_rate);
    r.availability = fuzzy_availability(lam, mu, f.alpha_grid);
    r.unavailability = complement(r.availability);
    r.crisp = crisp_rates(f);
    r.crisp_availability = detail::two_state_availability(r.crisp.failure_rate, r.crisp.repair_rate);
    r.availability_centroid = defuzzify(r.availability);
    return r;
}

inline CommandOutput write_fuzzy(const FuzzyResult& r, const std::filesystem::path& dir)
{
    CommandOutput out;
    detail::emit(band_csv(r.availability), dir, "availability.csv", out);
    detail::emit(band_csv(r.unavailability), dir, "unavailability.csv", out);
    detail::emit(band_csv(r.failure_band), dir, "failure_rate.csv", out);
    detail::emit(band_csv(r.repair_band), dir, "repair_rate.csv", out);
    CsvTable crisp({"failure_rate", "repair_rate", "availability", "availability_centroid"});
    crisp.add_row(std::vector<double>{r.crisp.failure_rate, r.crisp.repair_rate, r.crisp_availability,
                                      r.availability_centroid});
    detail::emit(crisp, dir, "crisp.csv", out);
    return out;
}

inline CommandOutput cmd_fuzzy(const RunConfig& rc, const CommandOptions& opts = {})
{
    validate(rc);
    if (opts.dry_run)
        return {};
    const auto r = compute_fuzzy(rc.fuzzy);
    return write_fuzzy(r, detail::prepare_output_dir(rc));
}

// ---------------------------------------------------------------------------

inline CsvTable compute_curve(const HardwareParams& hw, const SoftwareParams& sw,
                              const std::function<double(double)>& interaction, const TimeGrid& grid)
{
    CsvTable t({"t", "R_hw", "R_sw", "R_int", "R_pmu"});
    for (double s : grid.points()) {
        const double r_hw = weibull_reliability(hw, s);
        const double r_sw = software_reliability(sw, s);
        const double r_int = interaction(s);
        t.add_row(std::vector<double>{s, r_hw, r_sw, r_int, r_hw * r_sw * r_int});
    }
    return t;
}

inline CommandOutput cmd_curve(const RunConfig& rc, const CommandOptions& opts = {})
{
    validate(rc);
    std::function<double(double)> interaction;
    std::optional<GeneratorMatrix> model;
    if (rc.curve.source == InteractionSourceKind::markov) {
        try {
            model.emplace(build_unified_model(markov_transitions(rc, opts)));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        interaction = [&](double s) { return interaction_reliability_markov(*model, s); };
    } else {
        interaction = [&](double s) { return interaction_reliability_closed_form(rc.curve.interaction, s); };
    }
    if (opts.dry_run)
        return {};
    const auto table = compute_curve(rc.curve.hardware, rc.curve.software, interaction, rc.curve.grid);
    CommandOutput out;
    detail::emit(table, detail::prepare_output_dir(rc), "curve.csv", out);
    return out;
}

// ---------------------------------------------------------------------------

inline CsvTable compute_markov(const GeneratorMatrix& g, const TimeGrid& grid)
{
    std::vector<std::string> header{"t"};
    for (auto s : all_states)
        header.push_back("Q_" + std::string(to_string(s)));
    header.emplace_back("R_interaction");
    CsvTable t(std::move(header));
    const auto init = unified_initial();
    for (double s : grid.points()) {
        const auto d = transient_distribution(g, init, s);
        std::vector<double> row{s};
        for (auto st : all_states)
            row.push_back(d[index(st)]);
        row.push_back(operational_probability(d));
        t.add_row(row);
    }
    return t;
}

inline CommandOutput cmd_markov(const RunConfig& rc, const CommandOptions& opts = {})
{
    validate(rc);
    std::optional<GeneratorMatrix> g;
    try {
        g.emplace(build_unified_model(markov_transitions(rc, opts)));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (opts.dry_run)
        return {};
    CommandOutput out;
    detail::emit(compute_markov(*g, rc.markov.grid), detail::prepare_output_dir(rc), "markov.csv", out);
    return out;
}

// ---------------------------------------------------------------------------

inline CommandOutput write_simulation(const SimulationSummary& s, const std::filesystem::path& dir)
{
    CommandOutput out;
    detail::emit(summary_csv(s), dir, "summary.csv", out);
    detail::emit(exposure_csv(s.exposure), dir, "exposure.csv", out);
    return out;
}

inline CommandOutput cmd_simulate(const RunConfig& rc, const CommandOptions& opts = {})
{
    validate(rc);
    if (opts.dry_run)
        return {};
    const auto summary = run_simulation(simulation_config(rc), rc.simulation.threads);
    return write_simulation(summary, detail::prepare_output_dir(rc));
}

// ---------------------------------------------------------------------------

inline std::filesystem::path exposure_input(const RunConfig& rc, const CommandOptions& opts)
{
    if (opts.exposure_csv)
        return *opts.exposure_csv;
    if (rc.fitting.exposure_csv)
        return *rc.fitting.exposure_csv;
    return rc.output_dir / "exposure.csv";
}

inline CommandOutput cmd_fit(const RunConfig& rc, const CommandOptions& opts = {})
{
    validate(rc);
    if (opts.dry_run)
        return {};
    ExposureTable table;
    try {
        table = read_exposure_csv(exposure_input(rc, opts));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    const auto grid = rc.fitting.grid();
    const auto fits = fit_scan(table, grid);
    CommandOutput out;
    detail::emit(fit_csv(fits), detail::prepare_output_dir(rc), "fit.csv", out);
    return out;
}

// ---------------------------------------------------------------------------

struct PipelineResult {
    FuzzyResult fuzzy;
    SimulationSummary simulation;
    std::vector<FitResult> fits;
    FitResult chosen;  // fit at fitting.G, used for the curve
    std::string report;
    CommandOutput output;
};

namespace detail {

/// Runs one stage and prefixes any failure with the stage name. The
/// exception category (config / I/O / runtime) is preserved.
template <class F>
auto run_stage(const char* name, F&& fn) -> decltype(fn())
{
    try {
        return fn();
    } catch (const ConfigError& e) {
        throw ConfigError(std::string("stage '") + name + "': " + e.what());
    } catch (const IoError& e) {
        throw IoError(std::string("stage '") + name + "': " + e.what());
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("stage '") + name + "': " + e.what());
    }
}

inline void append(CommandOutput& into, const CommandOutput& from)
{
    into.files.insert(into.files.end(), from.files.begin(), from.files.end());
}

} // namespace detail

inline std::string pipeline_report(const RunConfig& rc, const PipelineResult& r)
{
    const auto sim = simulation_config(rc);
    std::ostringstream os;
    os << "pmurel pipeline report\n\n";
    os << "[fuzzy]  A = mu / (lambda + mu) over alpha-cuts of triangular rates\n";
    os << "  repair_unit           " << to_string(rc.fuzzy.repair_unit) << '\n';
    os << "  crisp failure rate    " << format_double(r.fuzzy.crisp.failure_rate) << " /year\n";
    os << "  crisp repair rate     " << format_double(r.fuzzy.crisp.repair_rate) << " /year\n";
    os << "  crisp availability    " << format_double(r.fuzzy.crisp_availability) << '\n';
    const auto& widest = r.fuzzy.availability.cuts.front();
    os << "  availability at alpha=" << format_double(widest.alpha) << "  [" << format_double(widest.lo)
       << ", " << format_double(widest.hi) << "]\n\n";
    os << "[simulate]  alternating Exp(lambda) up / Exp(mu) down cycles over the mission\n";
    os << "  mission_time          " << format_double(sim.mission_time) << '\n';
    os << "  replications          " << sim.n_replications << '\n';
    os << "  seed                  " << sim.master_seed << '\n';
    os << "  availability          " << format_double(r.simulation.availability) << " (se "
       << format_double(r.simulation.se_availability) << ")\n";
    os << "  mean failures         " << format_double(r.simulation.mean_failures) << " (se "
       << format_double(r.simulation.se_failures) << ")\n";
    os << "  renewal expectation   " << format_double(sim.mission_time / (1.0 / sim.failure_rate + 1.0 / sim.repair_rate))
       << '\n';
    os << "  closed-form A         " << format_double(sim.repair_rate / (sim.failure_rate + sim.repair_rate)) << "\n\n";
    os << "[fit]  lambda1 = (1 + 1/G) sum(X_i T_i) / sum(T_i^2), lambda2 = G lambda1\n";
    for (const auto& f : r.fits)
        os << "  G=" << format_double(f.G) << "  lambda1=" << format_double(f.lambda1)
           << "  lambda2=" << format_double(f.lambda2) << "  sse=" << format_double(f.sse) << '\n';
    os << "  effective rate 1/(1/lambda1 + 1/lambda2) = " << format_double(r.chosen.effective_rate())
       << " (identical for every G)\n\n";
    os << "[curve]  R_pmu(t) = exp(-lambda t^beta) * exp(-[m(t+T) - m(T)]) * R_int(t)\n";
    os << "  interaction rates     lambda1=" << format_double(r.chosen.lambda1)
       << " lambda2=" << format_double(r.chosen.lambda2) << " (fit at G=" << format_double(r.chosen.G) << ")\n";
    return os.str();
}

/// fuzzy -> defuzzify -> simulate -> fit -> curve. Files from completed
/// stages stay on disk if a later stage fails.
inline PipelineResult cmd_pipeline(const RunConfig& rc, const CommandOptions& opts = {})
{
    validate(rc);
    PipelineResult r;
    if (opts.dry_run)
        return r;
    const auto dir = detail::prepare_output_dir(rc);

    r.fuzzy = detail::run_stage("fuzzy", [&] { return compute_fuzzy(rc.fuzzy); });
    detail::append(r.output, detail::run_stage("fuzzy", [&] { return write_fuzzy(r.fuzzy, dir); }));

    r.simulation = detail::run_stage("simulate", [&] {
        return run_simulation(simulation_config(rc), rc.simulation.threads);
    });
    detail::append(r.output, detail::run_stage("simulate", [&] { return write_simulation(r.simulation, dir); }));

    detail::run_stage("fit", [&] {
        auto grid = rc.fitting.grid();
        if (std::find(grid.begin(), grid.end(), rc.fitting.G) == grid.end())
            grid.push_back(rc.fitting.G);
        r.fits = fit_scan(r.simulation.exposure, grid);
        r.chosen = fit_lambda1(r.simulation.exposure, rc.fitting.G);
        detail::emit(fit_csv(r.fits), dir, "fit.csv", r.output);
        return 0;
    });

    detail::run_stage("curve", [&] {
        const InteractionParams fitted{r.chosen.lambda1, r.chosen.lambda2};
        const auto table = compute_curve(
            rc.curve.hardware, rc.curve.software,
            [&](double s) { return interaction_reliability_closed_form(fitted, s); }, rc.curve.grid);
        detail::emit(table, dir, "curve.csv", r.output);
        return 0;
    });

    r.report = pipeline_report(rc, r);
    detail::run_stage("report", [&] {
        const auto path = dir / "report.txt";
        std::ofstream os(path, std::ios::binary | std::ios::trunc);
        if (!(os << r.report))
            throw IoError("cannot write '" + path.string() + "'");
        r.output.files.push_back(path);
        return 0;
    });
    return r;
}

} // namespace pmurel
