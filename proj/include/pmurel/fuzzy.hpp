// Type-1 triangular fuzzy numbers, alpha-cuts and the fuzzy two-state
// availability model.

#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pmurel {

/// Symmetric triangular membership function over a nonnegative rate.
class TriangularFuzzyNumber {
public:
    TriangularFuzzyNumber(double center, double halfwidth)
        : center_(center), halfwidth_(halfwidth)
    {
        if (std::isnan(center) || std::isnan(halfwidth))
            throw std::invalid_argument("TriangularFuzzyNumber: NaN parameter");
        if (!std::isfinite(center) || !std::isfinite(halfwidth))
            throw std::invalid_argument("TriangularFuzzyNumber: non-finite parameter");
        if (halfwidth < 0.0)
            throw std::invalid_argument("TriangularFuzzyNumber: halfwidth must be >= 0");
        if (center - halfwidth < 0.0)
            throw std::invalid_argument(
                "TriangularFuzzyNumber: support must stay nonnegative (center - halfwidth >= 0)");
    }

    /// Builds a number whose halfwidth is `fraction` of its center.
    static TriangularFuzzyNumber with_relative_spread(double center, double fraction)
    {
        return {center, center * fraction};
    }

    [[nodiscard]] double center() const noexcept { return center_; }
    [[nodiscard]] double halfwidth() const noexcept { return halfwidth_; }
    [[nodiscard]] double lower() const noexcept { return center_ - halfwidth_; }
    [[nodiscard]] double upper() const noexcept { return center_ + halfwidth_; }

    [[nodiscard]] double membership(double x) const noexcept
    {
        if (halfwidth_ == 0.0)
            return x == center_ ? 1.0 : 0.0;
        const double d = std::abs(x - center_);
        return d >= halfwidth_ ? 0.0 : 1.0 - d / halfwidth_;
    }

private:
    double center_;
    double halfwidth_;
};

struct AlphaCutInterval {
    double alpha = 1.0;
    double lo = 0.0;
    double hi = 0.0;

    [[nodiscard]] double width() const noexcept { return hi - lo; }
    [[nodiscard]] double midpoint() const noexcept { return 0.5 * (lo + hi); }
    [[nodiscard]] bool contains(double x) const noexcept { return lo <= x && x <= hi; }
    [[nodiscard]] bool contains(const AlphaCutInterval& o) const noexcept
    {
        return lo <= o.lo && o.hi <= hi;
    }
};

enum class FuzzyQuantity { availability, unavailability, failure_rate, repair_rate };

inline std::string_view to_string(FuzzyQuantity q) noexcept
{
    switch (q) {
    case FuzzyQuantity::availability: return "availability";
    case FuzzyQuantity::unavailability: return "unavailability";
    case FuzzyQuantity::failure_rate: return "failure_rate";
    case FuzzyQuantity::repair_rate: return "repair_rate";
    }
    return "unknown";
}

/// A fuzzy output sampled on a fixed alpha grid, in grid order.
struct FuzzyIndex {
    FuzzyQuantity quantity = FuzzyQuantity::availability;
    std::vector<AlphaCutInterval> cuts;
};

inline void check_alpha(double alpha)
{
    if (std::isnan(alpha))
        throw std::invalid_argument("alpha is NaN");
    if (alpha < 0.0 || alpha > 1.0)
        throw std::invalid_argument("alpha must lie in [0, 1], got " + std::to_string(alpha));
}

inline void check_alpha_grid(std::span<const double> grid)
{
    if (grid.empty())
        throw std::invalid_argument("alpha grid is empty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        check_alpha(grid[i]);
        if (i > 0 && grid[i] < grid[i - 1])
            throw std::invalid_argument("alpha grid must be sorted ascending");
    }
}

/// 0.0, 1/(n-1), ..., 1.0. The default grid is 11 levels.
inline std::vector<double> uniform_alpha_grid(std::size_t levels = 11)
{
    if (levels < 2)
        throw std::invalid_argument("alpha grid needs at least 2 levels");
    std::vector<double> grid(levels);
    for (std::size_t i = 0; i < levels; ++i)
        grid[i] = static_cast<double>(i) / static_cast<double>(levels - 1);
    return grid;
}

inline AlphaCutInterval alpha_cut(const TriangularFuzzyNumber& f, double alpha)
{
    check_alpha(alpha);
    const double spread = (1.0 - alpha) * f.halfwidth();
    // max() guards the last ulp when center == halfwidth.
    return {alpha, std::max(0.0, f.center() - spread), f.center() + spread};
}

/// Alpha-cut band of a fuzzy input rate.
inline FuzzyIndex fuzzy_band(const TriangularFuzzyNumber& f, std::span<const double> alpha_grid,
                             FuzzyQuantity quantity)
{
    check_alpha_grid(alpha_grid);
    FuzzyIndex out{quantity, {}};
    out.cuts.reserve(alpha_grid.size());
    for (double a : alpha_grid)
        out.cuts.push_back(alpha_cut(f, a));
    return out;
}

namespace detail {

// mu / (lambda + mu) over a single point; callers handle the box geometry.
inline double two_state_availability(double failure, double repair)
{
    const double denom = failure + repair;
    if (denom == 0.0)
        throw std::invalid_argument("availability undefined for zero failure and repair rates");
    return repair / denom;
}

} // namespace detail

/// Exact interval image of A = mu / (lambda + mu) on an alpha-cut box.
/// A is increasing in mu and decreasing in lambda, so the extremes sit on
/// the (mu_lo, lambda_hi) and (mu_hi, lambda_lo) corners.
inline AlphaCutInterval availability_cut(const AlphaCutInterval& failure,
                                         const AlphaCutInterval& repair)
{
    if (failure.hi == 0.0 && repair.hi == 0.0)
        throw std::invalid_argument("availability undefined: failure and repair rates are both zero");
    AlphaCutInterval out{failure.alpha, 0.0, 0.0};
    // lambda identically zero: every admissible point has A = 1.
    out.lo = failure.hi == 0.0 ? 1.0 : detail::two_state_availability(failure.hi, repair.lo);
    // mu identically zero: A = 0.
    out.hi = repair.hi == 0.0 ? 0.0 : detail::two_state_availability(failure.lo, repair.hi);
    return out;
}

inline FuzzyIndex fuzzy_availability(const TriangularFuzzyNumber& failure,
                                     const TriangularFuzzyNumber& repair,
                                     std::span<const double> alpha_grid)
{
    check_alpha_grid(alpha_grid);
    FuzzyIndex out{FuzzyQuantity::availability, {}};
    out.cuts.reserve(alpha_grid.size());
    for (double a : alpha_grid)
        out.cuts.push_back(availability_cut(alpha_cut(failure, a), alpha_cut(repair, a)));
    return out;
}

inline FuzzyIndex complement(const FuzzyIndex& availability)
{
    FuzzyIndex out{FuzzyQuantity::unavailability, {}};
    out.cuts.reserve(availability.cuts.size());
    for (const auto& c : availability.cuts)
        out.cuts.push_back({c.alpha, 1.0 - c.hi, 1.0 - c.lo});
    return out;
}

inline FuzzyIndex fuzzy_unavailability(const TriangularFuzzyNumber& failure,
                                       const TriangularFuzzyNumber& repair,
                                       std::span<const double> alpha_grid)
{
    return complement(fuzzy_availability(failure, repair, alpha_grid));
}

/// Centroid of a symmetric triangle is its center.
inline double defuzzify(const TriangularFuzzyNumber& f) noexcept { return f.center(); }

/// Centroid reconstructed from alpha-cuts.
///
/// The centroid of a fuzzy set is  int x mu(x) dx / int mu(x) dx, which in
/// level-set form is  int mid(a) w(a) da / int w(a) da  with w = hi - lo.
/// Both integrals use the trapezoid rule over the grid. When every cut has
/// zero width (crisp input) or the grid holds a single level, the result is
/// the mean of the cut midpoints.
inline double defuzzify(const FuzzyIndex& f)
{
    if (f.cuts.empty())
        throw std::invalid_argument("defuzzify: empty alpha grid");
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 1; i < f.cuts.size(); ++i) {
        const auto& a = f.cuts[i - 1];
        const auto& b = f.cuts[i];
        const double da = b.alpha - a.alpha;
        num += 0.5 * da * (a.midpoint() * a.width() + b.midpoint() * b.width());
        den += 0.5 * da * (a.width() + b.width());
    }
    if (den > 0.0)
        return num / den;
    double sum = 0.0;
    for (const auto& c : f.cuts)
        sum += c.midpoint();
    return sum / static_cast<double>(f.cuts.size());
}

/// How the configured repair figure is read.
///   events_per_year   the figure is already a rate
///   hours_per_repair  the figure is a mean repair duration in hours; rate = 8760 / figure
enum class RepairUnit { events_per_year, hours_per_repair };

inline constexpr double hours_per_year = 8760.0;

inline double repair_rate_per_year(double figure, RepairUnit unit)
{
    if (unit == RepairUnit::events_per_year)
        return figure;
    if (!(figure > 0.0))
        throw std::invalid_argument("hours_per_repair interpretation needs a positive repair figure");
    return hours_per_year / figure;
}

} // namespace pmurel
