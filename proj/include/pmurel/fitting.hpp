// Least-squares estimation of the interaction rates (lambda1, lambda2) from
// aggregate exposure data.
//
// The model predicts X_i = T_i * r with the effective rate
// r = 1 / (1/lambda1 + 1/lambda2). Only r is identified by the data, so the
// analyst fixes G = lambda2 / lambda1 and the estimate becomes
//   lambda1 = (1 + 1/G) * sum(X_i T_i) / sum(T_i^2),   lambda2 = G lambda1.

#pragma once

#include "pmurel/exposure.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace pmurel {

struct FitResult {
    double G = 0.0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double sse = 0.0;

    /// 1 / (1/lambda1 + 1/lambda2), the only identified combination.
    [[nodiscard]] double effective_rate() const noexcept { return 1.0 / (1.0 / lambda1 + 1.0 / lambda2); }
};

/// Reference fit at G = 2 from exposure data that is not available here.
/// The companion lambda2 = 3.92e-3 does not equal G * lambda1 = 1.784e-3.
inline constexpr double reference_lambda1_g2 = 8.92e-4;
inline constexpr double reference_lambda2_printed = 3.92e-3;

inline double effective_rate(double lambda1, double lambda2)
{
    if (!(lambda1 > 0.0) || !(lambda2 > 0.0))
        throw std::invalid_argument("rates must be > 0");
    return 1.0 / (1.0 / lambda1 + 1.0 / lambda2);
}

/// sum_i (X_i - T_i / (1/lambda1 + 1/lambda2))^2
inline double sse(const ExposureTable& table, double lambda1, double lambda2)
{
    table.validate();
    const double r = effective_rate(lambda1, lambda2);
    double s = 0.0;
    for (std::size_t i = 0; i < table.size(); ++i) {
        const double e = table.X[i] - table.T[i] * r;
        s += e * e;
    }
    return s;
}

/// Closed-form minimizer of sse over lambda1 with lambda2 = G lambda1.
inline FitResult fit_lambda1(const ExposureTable& table, double G)
{
    table.validate();
    if (!(G > 0.0) || !std::isfinite(G))
        throw std::invalid_argument("G must be finite and > 0");
    double sxt = 0.0;
    double stt = 0.0;
    for (std::size_t i = 0; i < table.size(); ++i) {
        sxt += table.X[i] * table.T[i];
        stt += table.T[i] * table.T[i];
    }
    if (stt == 0.0)
        throw std::invalid_argument("all exposure times are zero");
    if (sxt <= 0.0)
        throw std::domain_error("no failures observed; lambda1 is not estimable");

    FitResult r;
    r.G = G;
    r.lambda1 = (1.0 + 1.0 / G) * sxt / stt;
    r.lambda2 = G * r.lambda1;
    r.sse = sse(table, r.lambda1, r.lambda2);
    return r;
}

/// One fit per G, sorted by ascending G.
inline std::vector<FitResult> fit_scan(const ExposureTable& table, std::span<const double> G_grid)
{
    if (G_grid.empty())
        throw std::invalid_argument("G grid is empty");
    std::vector<double> grid(G_grid.begin(), G_grid.end());
    for (double g : grid)
        if (!(g > 0.0) || !std::isfinite(g))
            throw std::invalid_argument("G grid values must be finite and > 0");
    std::sort(grid.begin(), grid.end());
    std::vector<FitResult> out;
    out.reserve(grid.size());
    for (double g : grid)
        out.push_back(fit_lambda1(table, g));
    return out;
}

} // namespace pmurel
