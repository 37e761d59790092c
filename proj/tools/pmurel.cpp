// pmurel: batch front end for the PMU reliability toolkit.
//
//   pmurel [--config run.json] [--out dir] [--seed n] [--dry-run] <command>
//
// Exit status: 0 success, 2 configuration error, 3 runtime/numerical error,
// 4 I/O error.

#include "pmurel/commands.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

struct Flags {
    std::optional<std::string> config;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
    bool dry_run = false;
    std::optional<double> g;
    std::vector<double> g_grid;
    std::optional<std::string> exposure;
    std::optional<std::string> model;
};

pmurel::RunConfig resolve_config(const Flags& f)
{
    pmurel::RunConfig rc = f.config ? pmurel::load_run_config(*f.config) : pmurel::RunConfig{};
    if (f.out)
        rc.output_dir = *f.out;
    if (f.seed)
        rc.simulation.seed = *f.seed;
    if (f.threads)
        rc.simulation.threads = *f.threads;
    if (f.g) {
        rc.fitting.G = *f.g;
        rc.fitting.G_grid.clear();
    }
    if (!f.g_grid.empty())
        rc.fitting.G_grid = f.g_grid;
    return rc;
}

pmurel::CommandOptions command_options(const Flags& f)
{
    pmurel::CommandOptions o;
    o.dry_run = f.dry_run;
    if (f.exposure)
        o.exposure_csv = *f.exposure;
    if (f.model)
        o.markov_model = *f.model;
    return o;
}

void print_files(const pmurel::CommandOutput& out)
{
    for (const auto& p : out.files)
        std::cout << "wrote " << p.string() << '\n';
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"PMU hardware/software reliability toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    Flags f;
    app.add_option("--config", f.config, "Run configuration (JSON, schema pmurel.run/1)");
    app.add_option("--out", f.out, "Output directory (overrides output_dir)");
    app.add_option("--seed", f.seed, "Master seed for the simulation");
    app.add_option("--threads", f.threads, "Simulation worker threads (0 = all cores)");
    app.add_flag("--dry-run", f.dry_run, "Validate the configuration and write nothing");

    auto* fuzzy = app.add_subcommand("fuzzy", "Fuzzy availability bands and crisp rates");
    auto* curve = app.add_subcommand("curve", "Hardware, software, interaction and PMU reliability curves");
    auto* markov = app.add_subcommand("markov", "Transient state probabilities of the unified model");
    markov->add_option("--model", f.model, "Standalone model file (schema pmurel.markov/1)");
    curve->add_option("--model", f.model, "Standalone model file for interaction_source=markov");
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo failure/repair simulation");
    auto* fit = app.add_subcommand("fit", "Least-squares interaction rate fit");
    auto* g_opt = fit->add_option("--g", f.g, "Rate ratio G = lambda2 / lambda1");
    fit->add_option("--g-grid", f.g_grid, "Several G values to scan")->excludes(g_opt)->delimiter(',');
    fit->add_option("--exposure", f.exposure, "Exposure CSV (default: <out>/exposure.csv)");
    auto* pipeline = app.add_subcommand("pipeline", "fuzzy -> simulate -> fit -> curve");
    pipeline->add_option("--g", f.g, "Rate ratio G used for the curve");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? pmurel::exit_ok : pmurel::exit_config;
    }

    try {
        const auto rc = resolve_config(f);
        const auto opts = command_options(f);
        if (fuzzy->parsed())
            print_files(pmurel::cmd_fuzzy(rc, opts));
        else if (curve->parsed())
            print_files(pmurel::cmd_curve(rc, opts));
        else if (markov->parsed())
            print_files(pmurel::cmd_markov(rc, opts));
        else if (simulate->parsed())
            print_files(pmurel::cmd_simulate(rc, opts));
        else if (fit->parsed())
            print_files(pmurel::cmd_fit(rc, opts));
        else if (pipeline->parsed()) {
            const auto r = pmurel::cmd_pipeline(rc, opts);
            print_files(r.output);
            std::cout << r.report;
        }
        if (f.dry_run)
            std::cout << "configuration OK (dry run, nothing written)\n";
        return pmurel::exit_ok;
    } catch (const pmurel::ConfigError& e) {
        std::cerr << "pmurel: configuration error: " << e.what() << '\n';
        return pmurel::exit_config;
    } catch (const pmurel::IoError& e) {
        std::cerr << "pmurel: I/O error: " << e.what() << '\n';
        return pmurel::exit_io;
    } catch (const std::exception& e) {
        std::cerr << "pmurel: error: " << e.what() << '\n';
        return pmurel::exit_runtime;
    }
}
