// Continuous-time Markov chains: generator matrices, transient solution by
// uniformization, and the unified hardware/software PMU state model.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pmurel {

struct Transition {
    std::size_t from = 0;
    std::size_t to = 0;
    double rate = 0.0;
};

/// Dense CTMC generator. Off-diagonal entries are transition rates, the
/// diagonal holds the negative row sum. Immutable after construction.
class GeneratorMatrix {
public:
    GeneratorMatrix(std::size_t n_states, std::span<const Transition> transitions,
                    std::vector<std::string> labels = {})
        : n_(n_states), q_(n_states * n_states, 0.0), labels_(std::move(labels))
    {
        if (n_states == 0)
            throw std::invalid_argument("generator needs at least one state");
        if (!labels_.empty() && labels_.size() != n_states)
            throw std::invalid_argument("generator label count does not match state count");
        for (const auto& tr : transitions) {
            if (tr.from >= n_ || tr.to >= n_)
                throw std::invalid_argument("transition references a state out of range");
            if (tr.from == tr.to)
                throw std::invalid_argument("self-transitions are not allowed in a generator");
            if (std::isnan(tr.rate) || !std::isfinite(tr.rate) || tr.rate < 0.0)
                throw std::invalid_argument("transition rates must be finite and >= 0");
            at(tr.from, tr.to) += tr.rate;
        }
        for (std::size_t i = 0; i < n_; ++i) {
            double out = 0.0;
            for (std::size_t j = 0; j < n_; ++j)
                if (j != i)
                    out += at(i, j);
            at(i, i) = -out;
        }
    }

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const { return q_[i * n_ + j]; }
    [[nodiscard]] double exit_rate(std::size_t i) const { return -q_[i * n_ + i]; }
    [[nodiscard]] bool is_absorbing(std::size_t i) const { return exit_rate(i) == 0.0; }
    [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return labels_; }

    [[nodiscard]] double row_sum(std::size_t i) const
    {
        double s = 0.0;
        for (std::size_t j = 0; j < n_; ++j)
            s += q_[i * n_ + j];
        return s;
    }

    /// Largest exit rate; the Poisson clock rate used by uniformization.
    [[nodiscard]] double uniformization_rate() const
    {
        double q = 0.0;
        for (std::size_t i = 0; i < n_; ++i)
            q = std::max(q, exit_rate(i));
        return q;
    }

    /// Throws unless off-diagonals are >= 0 and every row sums to 0 within `tol`.
    void validate(double tol = 1e-12) const
    {
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) {
                const double v = (*this)(i, j);
                if (!std::isfinite(v))
                    throw std::invalid_argument("generator has a non-finite entry");
                if (i != j && v < 0.0)
                    throw std::invalid_argument("generator has a negative off-diagonal rate");
            }
            if (std::abs(row_sum(i)) > tol)
                throw std::invalid_argument("generator row " + std::to_string(i) + " does not sum to zero");
        }
    }

private:
    double& at(std::size_t i, std::size_t j) { return q_[i * n_ + j]; }

    std::size_t n_;
    std::vector<double> q_;
    std::vector<std::string> labels_;
};

/// Probability vector over the states of a chain.
class StateDistribution {
public:
    explicit StateDistribution(std::vector<double> p) : p_(std::move(p)) { validate(); }

    static StateDistribution point_mass(std::size_t n_states, std::size_t state)
    {
        if (state >= n_states)
            throw std::invalid_argument("point mass state out of range");
        std::vector<double> p(n_states, 0.0);
        p[state] = 1.0;
        return StateDistribution(std::move(p));
    }

    [[nodiscard]] std::size_t size() const noexcept { return p_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return p_[i]; }
    [[nodiscard]] std::span<const double> values() const noexcept { return p_; }

    [[nodiscard]] double total() const noexcept
    {
        double s = 0.0;
        for (double v : p_)
            s += v;
        return s;
    }

private:
    void validate() const
    {
        if (p_.empty())
            throw std::invalid_argument("state distribution is empty");
        for (double v : p_)
            if (!(v >= 0.0 && v <= 1.0))
                throw std::invalid_argument("state probabilities must lie in [0, 1]");
        if (std::abs(total() - 1.0) > 1e-9)
            throw std::invalid_argument("state probabilities must sum to 1");
    }

    std::vector<double> p_;
};

namespace detail {

// y = v P with P = I + Q / q.
inline void uniformized_step(const GeneratorMatrix& g, double q, std::span<const double> v,
                             std::span<double> y)
{
    const std::size_t n = g.size();
    std::copy(v.begin(), v.end(), y.begin());
    for (std::size_t i = 0; i < n; ++i) {
        const double vi = v[i];
        if (vi == 0.0)
            continue;
        for (std::size_t j = 0; j < n; ++j)
            y[j] += vi * (g(i, j) / q);
    }
    // Rounding can push an emptied state a hair below zero.
    for (auto& x : y)
        x = std::max(x, 0.0);
}

} // namespace detail

/// Largest Poisson mean handled in one uniformization pass. Longer horizons
/// are split into equal sub-steps so e^{-qt} never underflows.
inline constexpr double max_poisson_mean_per_step = 32.0;

/// Transient distribution p(t) = p(0) exp(Qt) by uniformization.
/// `tol` bounds the total truncated Poisson mass over all sub-steps.
inline StateDistribution transient_distribution(const GeneratorMatrix& g,
                                                const StateDistribution& initial, double t,
                                                double tol = 1e-10)
{
    if (std::isnan(t) || t < 0.0)
        throw std::invalid_argument("transient time must be >= 0");
    if (!std::isfinite(t))
        throw std::invalid_argument("transient time must be finite");
    if (initial.size() != g.size())
        throw std::invalid_argument("initial distribution size does not match the generator");
    g.validate();

    const double q = g.uniformization_rate();
    if (q == 0.0 || t == 0.0)
        return initial;

    const double qt = q * t;
    const auto steps = static_cast<std::size_t>(std::ceil(qt / max_poisson_mean_per_step));
    const double mean = qt / static_cast<double>(steps);
    const double step_tol = std::max(tol / static_cast<double>(steps), 1e-15);
    const auto max_terms = static_cast<std::size_t>(mean + 12.0 * std::sqrt(mean) + 60.0);

    const std::size_t n = g.size();
    std::vector<double> current(initial.values().begin(), initial.values().end());
    std::vector<double> term(n), next(n), acc(n);

    for (std::size_t s = 0; s < steps; ++s) {
        term = current;
        double weight = std::exp(-mean);
        double mass = weight;
        for (std::size_t i = 0; i < n; ++i)
            acc[i] = weight * term[i];
        for (std::size_t k = 1; 1.0 - mass > step_tol && k <= max_terms; ++k) {
            detail::uniformized_step(g, q, term, next);
            std::swap(term, next);
            weight *= mean / static_cast<double>(k);
            mass += weight;
            for (std::size_t i = 0; i < n; ++i)
                acc[i] += weight * term[i];
        }
        current = acc;
    }
    for (auto& p : current)
        p = std::clamp(p, 0.0, 1.0);
    return StateDistribution(std::move(current));
}

// ---------------------------------------------------------------------------
// Unified hardware/software model

enum class StateId : std::size_t { UP, HD1, HD2, HD3, SD, F_HW, F_INT, F_SW };

inline constexpr std::size_t unified_state_count = 8;

inline constexpr std::array<StateId, unified_state_count> all_states{
    StateId::UP, StateId::HD1, StateId::HD2, StateId::HD3,
    StateId::SD, StateId::F_HW, StateId::F_INT, StateId::F_SW};

/// States counted as working by the interaction reliability.
inline constexpr std::array<StateId, 4> operational_states{
    StateId::UP, StateId::HD1, StateId::HD2, StateId::HD3};

/// Failure states, aggregated as total failure (TF).
inline constexpr std::array<StateId, 3> failure_states{
    StateId::F_HW, StateId::F_INT, StateId::F_SW};

constexpr std::size_t index(StateId s) noexcept { return static_cast<std::size_t>(s); }

inline std::string_view to_string(StateId s) noexcept
{
    switch (s) {
    case StateId::UP: return "UP";
    case StateId::HD1: return "HD1";
    case StateId::HD2: return "HD2";
    case StateId::HD3: return "HD3";
    case StateId::SD: return "SD";
    case StateId::F_HW: return "F_HW";
    case StateId::F_INT: return "F_INT";
    case StateId::F_SW: return "F_SW";
    }
    return "?";
}

inline std::optional<StateId> parse_state(std::string_view name) noexcept
{
    for (auto s : all_states)
        if (to_string(s) == name)
            return s;
    return std::nullopt;
}

/// The transitions the unified model admits. Everything else is rejected.
inline constexpr std::array<std::pair<StateId, StateId>, 10> allowed_transitions{{
    {StateId::UP, StateId::HD1},
    {StateId::UP, StateId::HD2},
    {StateId::UP, StateId::HD3},
    {StateId::UP, StateId::SD},
    {StateId::HD1, StateId::F_HW},
    {StateId::HD2, StateId::F_HW},
    {StateId::HD2, StateId::UP},  // detected and recovered by software
    {StateId::HD3, StateId::F_INT},
    {StateId::SD, StateId::F_SW},
    {StateId::SD, StateId::UP},   // restart
}};

inline std::string transition_name(StateId from, StateId to)
{
    std::string s(to_string(from));
    s += "->";
    s += to_string(to);
    return s;
}

/// Parses "FROM->TO" and checks it against the allowed set.
inline std::pair<StateId, StateId> parse_transition(std::string_view name)
{
    const auto arrow = name.find("->");
    if (arrow == std::string_view::npos)
        throw std::invalid_argument("transition name '" + std::string(name) + "' is not of the form FROM->TO");
    const auto from = parse_state(name.substr(0, arrow));
    const auto to = parse_state(name.substr(arrow + 2));
    if (!from || !to)
        throw std::invalid_argument("unknown state in transition '" + std::string(name) + "'");
    for (const auto& [f, t] : allowed_transitions)
        if (f == *from && t == *to)
            return {f, t};
    throw std::invalid_argument("transition '" + std::string(name) + "' is not part of the unified model");
}

/// Builds the unified 8-state generator from a "FROM->TO" -> rate map.
/// Unlisted allowed transitions default to zero.
inline GeneratorMatrix build_unified_model(const std::map<std::string, double>& rates)
{
    std::vector<Transition> transitions;
    transitions.reserve(rates.size());
    for (const auto& [name, rate] : rates) {
        const auto [from, to] = parse_transition(name);
        if (std::isnan(rate) || rate < 0.0)
            throw std::invalid_argument("rate for '" + name + "' must be >= 0");
        transitions.push_back({index(from), index(to), rate});
    }
    std::vector<std::string> labels;
    for (auto s : all_states)
        labels.emplace_back(to_string(s));
    return GeneratorMatrix(unified_state_count, transitions, std::move(labels));
}

/// The two-rate chain UP -> HD3 -> F_INT with every other rate zero.
inline GeneratorMatrix build_reduced_model(double lambda1, double lambda2)
{
    return build_unified_model({{"UP->HD3", lambda1}, {"HD3->F_INT", lambda2}});
}

inline StateDistribution unified_initial() { return StateDistribution::point_mass(unified_state_count, index(StateId::UP)); }

inline double operational_probability(const StateDistribution& d)
{
    if (d.size() != unified_state_count)
        throw std::invalid_argument("distribution is not over the unified model states");
    double r = 0.0;
    for (auto s : operational_states)
        r += d[index(s)];
    return std::min(r, 1.0);
}

inline double total_failure_probability(const StateDistribution& d)
{
    if (d.size() != unified_state_count)
        throw std::invalid_argument("distribution is not over the unified model states");
    double r = 0.0;
    for (auto s : failure_states)
        r += d[index(s)];
    return r;
}

/// Probability that the unified model, started in UP, is still in one of
/// UP, HD1, HD2, HD3 at time t.
inline double interaction_reliability_markov(const GeneratorMatrix& g, double t)
{
    if (g.size() != unified_state_count)
        throw std::invalid_argument("interaction reliability needs the unified 8-state generator");
    return operational_probability(transient_distribution(g, unified_initial(), t));
}

} // namespace pmurel
