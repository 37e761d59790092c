#pragma once

#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <stdexcept>
#include <vector>

namespace pmurel {

/// Aggregate exposure per interval: X_i failures observed, T_i time at risk.
struct ExposureTable {
    std::vector<double> X;
    std::vector<double> T;

    [[nodiscard]] std::size_t size() const noexcept { return X.size(); }
    [[nodiscard]] bool empty() const noexcept { return X.empty(); }

    [[nodiscard]] double total_exposure_number() const { return std::accumulate(X.begin(), X.end(), 0.0); }
    [[nodiscard]] double total_exposure_time() const { return std::accumulate(T.begin(), T.end(), 0.0); }

    void validate() const
    {
        if (X.size() != T.size())
            throw std::invalid_argument("exposure table columns differ in length");
        if (X.empty())
            throw std::invalid_argument("exposure table is empty");
        for (std::size_t i = 0; i < X.size(); ++i) {
            if (!std::isfinite(X[i]) || X[i] < 0.0)
                throw std::invalid_argument("exposure number X_" + std::to_string(i + 1) + " must be finite and >= 0");
            if (!std::isfinite(T[i]) || T[i] < 0.0)
                throw std::invalid_argument("exposure time T_" + std::to_string(i + 1) + " must be finite and >= 0");
        }
    }
};

} // namespace pmurel
