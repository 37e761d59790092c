// Closed-form component reliability curves and the composite PMU reliability
// R_pmu(t) = R_hw(t) * R_sw(t) * R_int(t).
//
// All rates and times share one caller-declared unit; nothing here converts.

#pragma once

#include "pmurel/markov.hpp"

#include <algorithm>
#include <cmath>
#include <concepts>
#include <stdexcept>
#include <string>

namespace pmurel {

/// Weibull hardware model, R(t) = exp(-lambda t^beta).
struct HardwareParams {
    double lambda = 0.0;
    double beta = 1.0;

    void validate() const
    {
        if (std::isnan(lambda) || lambda < 0.0 || !std::isfinite(lambda))
            throw std::invalid_argument("hardware lambda must be finite and >= 0");
        if (std::isnan(beta) || beta <= 0.0 || !std::isfinite(beta))
            throw std::invalid_argument("hardware beta must be finite and > 0");
    }
};

/// Goel-Okumoto NHPP software model: a expected faults, detection rate b,
/// T accumulated test time before the mission starts.
struct SoftwareParams {
    double a = 0.0;
    double b = 0.0;
    double T = 0.0;

    void validate() const
    {
        if (std::isnan(a) || a < 0.0 || !std::isfinite(a))
            throw std::invalid_argument("software a must be finite and >= 0");
        if (std::isnan(b) || b < 0.0 || !std::isfinite(b))
            throw std::invalid_argument("software b must be finite and >= 0");
        if (std::isnan(T) || T < 0.0 || !std::isfinite(T))
            throw std::invalid_argument("software T must be finite and >= 0");
    }
};

/// Two-stage interaction path UP -> HD3 -> F_INT.
struct InteractionParams {
    double lambda1 = 0.0;
    double lambda2 = 0.0;

    void validate() const
    {
        if (!(lambda1 > 0.0) || !std::isfinite(lambda1))
            throw std::invalid_argument("interaction lambda1 must be finite and > 0");
        if (!(lambda2 > 0.0) || !std::isfinite(lambda2))
            throw std::invalid_argument("interaction lambda2 must be finite and > 0");
    }
};

namespace detail {

inline void check_time(double t)
{
    if (std::isnan(t))
        throw std::invalid_argument("time is NaN");
    if (t < 0.0)
        throw std::invalid_argument("time must be >= 0, got " + std::to_string(t));
}

} // namespace detail

inline double weibull_reliability(const HardwareParams& p, double t)
{
    p.validate();
    detail::check_time(t);
    if (t == 0.0)
        return 1.0;
    return std::exp(-p.lambda * std::pow(t, p.beta));
}

/// m(t) = a (1 - e^{-bt}).
inline double nhpp_mean_value(const SoftwareParams& p, double t)
{
    p.validate();
    detail::check_time(t);
    return p.a * -std::expm1(-p.b * t);
}

/// exp(-[m(t + T) - m(T)]): probability of no software failure during the
/// next t units after T units of testing.
inline double software_reliability(const SoftwareParams& p, double t)
{
    p.validate();
    detail::check_time(t);
    // m(t+T) - m(T) = a e^{-bT} (1 - e^{-bt}), evaluated without cancellation.
    const double expected = p.a * std::exp(-p.b * p.T) * -std::expm1(-p.b * t);
    return std::exp(-expected);
}

/// Relative rate gap below which the equal-rate limit is used.
inline constexpr double hypoexponential_degeneracy = 1e-9;

/// Survival function of the sum of Exp(lambda1) and Exp(lambda2):
/// (lambda2 e^{-lambda1 t} - lambda1 e^{-lambda2 t}) / (lambda2 - lambda1),
/// and (1 + lambda t) e^{-lambda t} when the rates coincide.
inline double interaction_reliability_closed_form(const InteractionParams& p, double t)
{
    p.validate();
    detail::check_time(t);
    if (t == 0.0)
        return 1.0;
    const double l1 = p.lambda1;
    const double l2 = p.lambda2;
    if (std::abs(l2 - l1) / l1 < hypoexponential_degeneracy) {
        const double l = 0.5 * (l1 + l2);
        return (1.0 + l * t) * std::exp(-l * t);
    }
    const double r = (l2 * std::exp(-l1 * t) - l1 * std::exp(-l2 * t)) / (l2 - l1);
    return std::clamp(r, 0.0, 1.0);
}

/// Anything that maps a time to an interaction reliability.
template <class F>
concept InteractionSource = std::invocable<const F&, double>
    && std::convertible_to<std::invoke_result_t<const F&, double>, double>;

template <InteractionSource F>
double composite_pmu_reliability(const HardwareParams& hw, const SoftwareParams& sw,
                                 const F& interaction, double t)
{
    return weibull_reliability(hw, t) * software_reliability(sw, t) * interaction(t);
}

inline double composite_pmu_reliability(const HardwareParams& hw, const SoftwareParams& sw,
                                        const InteractionParams& inter, double t)
{
    return composite_pmu_reliability(
        hw, sw, [&](double s) { return interaction_reliability_closed_form(inter, s); }, t);
}

inline double composite_pmu_reliability(const HardwareParams& hw, const SoftwareParams& sw,
                                        const GeneratorMatrix& model, double t)
{
    return composite_pmu_reliability(
        hw, sw, [&](double s) { return interaction_reliability_markov(model, s); }, t);
}

} // namespace pmurel
