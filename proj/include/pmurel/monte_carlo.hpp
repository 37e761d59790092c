// Sequential Monte Carlo of alternating failure/repair cycles over a
// mission, with per-replication random substreams so results do not depend
// on how replications are scheduled across threads.

#pragma once

#include "pmurel/exposure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

namespace pmurel {

struct SimulationConfig {
    double failure_rate = 0.6566;   // per year
    double repair_rate = 22.2898;   // per year
    double mission_time = 10.0;     // years
    std::size_t n_replications = 10000;
    std::uint64_t master_seed = 42;
    std::size_t n_intervals = 8;

    void validate() const
    {
        if (!(failure_rate > 0.0) || !std::isfinite(failure_rate))
            throw std::invalid_argument("simulation failure_rate must be finite and > 0");
        if (!(repair_rate > 0.0) || !std::isfinite(repair_rate))
            throw std::invalid_argument("simulation repair_rate must be finite and > 0");
        if (!(mission_time > 0.0) || !std::isfinite(mission_time))
            throw std::invalid_argument("simulation mission_time must be finite and > 0");
        if (n_replications < 1)
            throw std::invalid_argument("simulation n_replications must be >= 1");
        if (n_intervals < 1)
            throw std::invalid_argument("simulation n_intervals must be >= 1");
    }
};

// ---------------------------------------------------------------------------
// Random substreams
//
// Replication i of a run seeded with S draws from a std::mt19937_64 whose
// seed is the (i+1)-th output of a SplitMix64 sequence started at state S.
// Both generators have fully specified output, so streams are identical on
// every platform.

inline constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept
{
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t substream_seed(std::uint64_t master_seed, std::uint64_t index) noexcept
{
    return splitmix64(master_seed + index * 0x9E3779B97F4A7C15ULL);
}

class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    static RandomStream for_replication(std::uint64_t master_seed, std::uint64_t index)
    {
        return RandomStream(substream_seed(master_seed, index));
    }

    /// Uniform on (0, 1] with 53 random bits.
    double uniform_open_closed()
    {
        return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    }

private:
    std::mt19937_64 engine_;
};

/// Inverse transform -ln(u) / rate, u in (0, 1].
inline double exponential_from_uniform(double rate, double u)
{
    if (!(rate > 0.0) || !std::isfinite(rate))
        throw std::invalid_argument("exponential rate must be finite and > 0");
    if (!(u > 0.0 && u <= 1.0))
        throw std::invalid_argument("uniform variate must lie in (0, 1]");
    return -std::log(u) / rate;
}

/// Always > 0; the u == 1 draw (probability 2^-53) is redrawn.
inline double sample_exponential(double rate, RandomStream& rng)
{
    double x = 0.0;
    do {
        x = exponential_from_uniform(rate, rng.uniform_open_closed());
    } while (x == 0.0);
    return x;
}

// ---------------------------------------------------------------------------
// Replications

struct RepairCycle {
    double time_to_failure = 0.0;
    double time_to_repair = 0.0;  // truncated at mission end
};

/// Completed failure/repair cycles of one mission, plus the censored up
/// period that was still running when the mission ended.
struct ReplicationTrace {
    double mission_time = 0.0;
    std::vector<RepairCycle> cycles;
    double censored_up_time = 0.0;

    [[nodiscard]] std::size_t failures() const noexcept { return cycles.size(); }

    [[nodiscard]] double up_time() const noexcept
    {
        double s = censored_up_time;
        for (const auto& c : cycles)
            s += c.time_to_failure;
        return s;
    }

    [[nodiscard]] double down_time() const noexcept
    {
        double s = 0.0;
        for (const auto& c : cycles)
            s += c.time_to_repair;
        return s;
    }

    [[nodiscard]] double availability() const noexcept { return up_time() / mission_time; }

    /// Absolute mission clock at each failure.
    [[nodiscard]] std::vector<double> failure_times() const
    {
        std::vector<double> out;
        out.reserve(cycles.size());
        double clock = 0.0;
        for (const auto& c : cycles) {
            clock += c.time_to_failure;
            out.push_back(clock);
            clock += c.time_to_repair;
        }
        return out;
    }
};

inline ReplicationTrace run_replication(const SimulationConfig& cfg, std::uint64_t replication_index)
{
    cfg.validate();
    auto rng = RandomStream::for_replication(cfg.master_seed, replication_index);
    ReplicationTrace trace;
    trace.mission_time = cfg.mission_time;
    double clock = 0.0;
    while (clock < cfg.mission_time) {
        const double ttf = sample_exponential(cfg.failure_rate, rng);
        if (clock + ttf >= cfg.mission_time) {
            trace.censored_up_time = cfg.mission_time - clock;
            break;
        }
        clock += ttf;
        const double ttr = sample_exponential(cfg.repair_rate, rng);
        const double credited = std::min(ttr, cfg.mission_time - clock);
        trace.cycles.push_back({ttf, credited});
        clock += ttr;
    }
    return trace;
}

/// Mission span split into n equal intervals; interval i covers
/// (t_{i-1}, t_i], the first one also includes t = 0. A failure on a
/// boundary therefore counts toward the earlier interval. T_i is up-time.
inline ExposureTable build_exposure_table(const std::vector<ReplicationTrace>& traces,
                                          const SimulationConfig& cfg)
{
    cfg.validate();
    if (traces.empty())
        throw std::invalid_argument("exposure table needs at least one trace");
    const std::size_t n = cfg.n_intervals;
    const double tm = cfg.mission_time;
    std::vector<double> bounds(n + 1);
    for (std::size_t j = 0; j <= n; ++j)
        bounds[j] = tm * static_cast<double>(j) / static_cast<double>(n);
    bounds[n] = tm;

    ExposureTable table{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};

    const auto add_up_segment = [&](double start, double end) {
        for (std::size_t k = 0; k < n; ++k) {
            const double overlap = std::min(end, bounds[k + 1]) - std::max(start, bounds[k]);
            if (overlap > 0.0)
                table.T[k] += overlap;
        }
    };
    const auto bin_of = [&](double t) {
        const auto it = std::lower_bound(bounds.begin() + 1, bounds.end(), t);
        const auto k = static_cast<std::size_t>(it - (bounds.begin() + 1));
        return std::min(k, n - 1);
    };

    for (const auto& tr : traces) {
        double clock = 0.0;
        for (const auto& c : tr.cycles) {
            add_up_segment(clock, clock + c.time_to_failure);
            clock += c.time_to_failure;
            table.X[bin_of(clock)] += 1.0;
            clock += c.time_to_repair;
        }
        if (tr.censored_up_time > 0.0)
            add_up_segment(clock, std::min(clock + tr.censored_up_time, tm));
    }
    return table;
}

struct SimulationSummary {
    std::size_t n_replications = 0;
    double mean_failures = 0.0;
    double availability = 0.0;
    double se_failures = 0.0;      // 0 when n_replications == 1
    double se_availability = 0.0;  // 0 when n_replications == 1
    std::size_t total_failures = 0;
    double total_up_time = 0.0;
    ExposureTable exposure;
};

/// Runs every replication. `threads == 0` picks the hardware concurrency.
/// Aggregation is in replication order, so the result is bit-identical for
/// any thread count.
inline std::vector<ReplicationTrace> run_replications(const SimulationConfig& cfg, unsigned threads = 1)
{
    cfg.validate();
    std::vector<ReplicationTrace> traces(cfg.n_replications);
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, cfg.n_replications));
    if (threads <= 1) {
        for (std::size_t i = 0; i < traces.size(); ++i)
            traces[i] = run_replication(cfg, i);
        return traces;
    }
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
        workers.emplace_back([&, w] {
            for (std::size_t i = w; i < traces.size(); i += threads)
                traces[i] = run_replication(cfg, i);
        });
    }
    workers.clear();
    return traces;
}

inline SimulationSummary summarize(const std::vector<ReplicationTrace>& traces, const SimulationConfig& cfg)
{
    if (traces.empty())
        throw std::invalid_argument("cannot summarize an empty simulation");
    SimulationSummary s;
    s.n_replications = traces.size();
    const double n = static_cast<double>(traces.size());

    double sum_f = 0.0, sum_a = 0.0;
    for (const auto& tr : traces) {
        s.total_failures += tr.failures();
        s.total_up_time += tr.up_time();
        sum_f += static_cast<double>(tr.failures());
        sum_a += tr.availability();
    }
    s.mean_failures = sum_f / n;
    s.availability = s.total_up_time / (n * cfg.mission_time);

    if (traces.size() > 1) {
        const double mean_a = sum_a / n;
        double ss_f = 0.0, ss_a = 0.0;
        for (const auto& tr : traces) {
            const double df = static_cast<double>(tr.failures()) - s.mean_failures;
            const double da = tr.availability() - mean_a;
            ss_f += df * df;
            ss_a += da * da;
        }
        s.se_failures = std::sqrt(ss_f / (n - 1.0) / n);
        s.se_availability = std::sqrt(ss_a / (n - 1.0) / n);
    }
    s.exposure = build_exposure_table(traces, cfg);
    return s;
}

inline SimulationSummary run_simulation(const SimulationConfig& cfg, unsigned threads = 1)
{
    return summarize(run_replications(cfg, threads), cfg);
}

} // namespace pmurel
