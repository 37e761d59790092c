#include "pmurel/fuzzy.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace pmurel;

namespace {

const TriangularFuzzyNumber kFailure{0.6566, 0.06566};
const TriangularFuzzyNumber kRepair{22.2898, 2.22898};

} // namespace

TEST(TriangularFuzzyNumber, RejectsInvalidParameters)
{
    EXPECT_THROW(TriangularFuzzyNumber(1.0, -0.1), std::invalid_argument);
    EXPECT_THROW(TriangularFuzzyNumber(0.1, 0.2), std::invalid_argument);
    EXPECT_THROW(TriangularFuzzyNumber(std::nan(""), 0.0), std::invalid_argument);
    EXPECT_THROW(TriangularFuzzyNumber(1.0, std::numeric_limits<double>::infinity()), std::invalid_argument);
    EXPECT_NO_THROW(TriangularFuzzyNumber(0.5, 0.5));
}

TEST(TriangularFuzzyNumber, MembershipShape)
{
    const TriangularFuzzyNumber f{2.0, 1.0};
    EXPECT_DOUBLE_EQ(f.membership(2.0), 1.0);
    EXPECT_DOUBLE_EQ(f.membership(1.5), 0.5);
    EXPECT_DOUBLE_EQ(f.membership(2.5), 0.5);
    EXPECT_DOUBLE_EQ(f.membership(3.0), 0.0);
    EXPECT_DOUBLE_EQ(f.membership(0.5), 0.0);
}

TEST(AlphaCut, CoreCollapsesToCenter)
{
    const auto c = alpha_cut(kFailure, 1.0);
    EXPECT_EQ(c.lo, 0.6566);
    EXPECT_EQ(c.hi, 0.6566);
}

TEST(AlphaCut, LinearMembershipEndpoints)
{
    const auto c0 = alpha_cut(kFailure, 0.0);
    EXPECT_NEAR(c0.lo, 0.59094, 1e-14);
    EXPECT_NEAR(c0.hi, 0.72226, 1e-14);
    const auto c5 = alpha_cut(kFailure, 0.5);
    EXPECT_NEAR(c5.lo, 0.62377, 1e-14);
    EXPECT_NEAR(c5.hi, 0.68943, 1e-14);
}

TEST(AlphaCut, EndpointsHaveMembershipAlpha)
{
    const TriangularFuzzyNumber f{3.0, 1.5};
    for (double a : {0.1, 0.25, 0.6, 0.9}) {
        const auto c = alpha_cut(f, a);
        EXPECT_NEAR(f.membership(c.lo), a, 1e-12);
        EXPECT_NEAR(f.membership(c.hi), a, 1e-12);
    }
}

TEST(AlphaCut, RejectsBadAlpha)
{
    EXPECT_THROW(alpha_cut(kFailure, -0.01), std::invalid_argument);
    EXPECT_THROW(alpha_cut(kFailure, 1.01), std::invalid_argument);
    EXPECT_THROW(alpha_cut(kFailure, std::nan("")), std::invalid_argument);
}

TEST(AlphaCut, NestingProperty)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> center(0.0, 50.0), frac(0.0, 1.0);
    const auto grid = uniform_alpha_grid(11);
    for (int n = 0; n < 50; ++n) {
        const double c = center(rng);
        const TriangularFuzzyNumber f{c, c * frac(rng)};
        for (std::size_t i = 1; i < grid.size(); ++i)
            EXPECT_TRUE(alpha_cut(f, grid[i - 1]).contains(alpha_cut(f, grid[i])));
    }
}

TEST(AlphaGrid, DefaultHasElevenLevels)
{
    const auto g = uniform_alpha_grid();
    ASSERT_EQ(g.size(), 11u);
    EXPECT_EQ(g.front(), 0.0);
    EXPECT_EQ(g.back(), 1.0);
    EXPECT_DOUBLE_EQ(g[3], 0.3);
}

TEST(AlphaGrid, Validation)
{
    EXPECT_THROW(check_alpha_grid(std::vector<double>{}), std::invalid_argument);
    EXPECT_THROW(check_alpha_grid(std::vector<double>{0.5, 0.2}), std::invalid_argument);
    EXPECT_THROW(check_alpha_grid(std::vector<double>{0.0, 1.5}), std::invalid_argument);
}

TEST(FuzzyAvailability, CrispRatesGiveClosedForm)
{
    const auto grid = uniform_alpha_grid();
    const auto a = fuzzy_availability({0.6566, 0.0}, {22.2898, 0.0}, grid);
    ASSERT_EQ(a.cuts.size(), 11u);
    for (const auto& c : a.cuts) {
        EXPECT_NEAR(c.lo, 0.971385489662866, 1e-14);
        EXPECT_NEAR(c.hi, 0.971385489662866, 1e-14);
    }
}

TEST(FuzzyAvailability, EqualRatesGiveOneHalf)
{
    const std::vector<double> grid{0.0, 1.0};
    const auto a = fuzzy_availability({3.0, 0.0}, {3.0, 0.0}, grid);
    for (const auto& c : a.cuts) {
        EXPECT_DOUBLE_EQ(c.lo, 0.5);
        EXPECT_DOUBLE_EQ(c.hi, 0.5);
    }
}

TEST(FuzzyAvailability, WidestCutStraddlesCrispValue)
{
    const std::vector<double> grid{0.0};
    const auto c = fuzzy_availability(kFailure, kRepair, grid).cuts.front();
    EXPECT_LT(c.lo, 0.971385489662866);
    EXPECT_GT(c.hi, 0.971385489662866);
    // Corner values of the alpha = 0 box.
    EXPECT_NEAR(c.lo, 0.965247691872427, 1e-14);
    EXPECT_NEAR(c.hi, 0.976465687391178, 1e-14);
}

TEST(FuzzyAvailability, MatchesBruteForceGrid)
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> rate(0.01, 30.0), frac(0.0, 0.9);
    const auto grid = uniform_alpha_grid(11);
    for (int n = 0; n < 10; ++n) {
        const double lc = rate(rng), mc = rate(rng);
        const TriangularFuzzyNumber lam{lc, lc * frac(rng)}, mu{mc, mc * frac(rng)};
        const auto band = fuzzy_availability(lam, mu, grid);
        for (const auto& cut : band.cuts) {
            const auto l = alpha_cut(lam, cut.alpha);
            const auto m = alpha_cut(mu, cut.alpha);
            const auto bf = oracle::brute_force_availability(l.lo, l.hi, m.lo, m.hi);
            // Grid includes the corners, so extremes coincide.
            EXPECT_NEAR(bf.lo, cut.lo, 1e-15);
            EXPECT_NEAR(bf.hi, cut.hi, 1e-15);
            EXPECT_GE(bf.lo, cut.lo - 1e-15);
            EXPECT_LE(bf.hi, cut.hi + 1e-15);
        }
    }
}

TEST(FuzzyAvailability, NestedAndInUnitInterval)
{
    const auto band = fuzzy_availability(kFailure, kRepair, uniform_alpha_grid());
    for (std::size_t i = 0; i < band.cuts.size(); ++i) {
        EXPECT_GE(band.cuts[i].lo, 0.0);
        EXPECT_LE(band.cuts[i].hi, 1.0);
        if (i > 0) {
            EXPECT_TRUE(band.cuts[i - 1].contains(band.cuts[i]));
        }
    }
}

TEST(FuzzyAvailability, DegenerateZeroRatesRejected)
{
    const std::vector<double> grid{0.0, 1.0};
    EXPECT_THROW(fuzzy_availability({0.0, 0.0}, {0.0, 0.0}, grid), std::invalid_argument);
}

TEST(FuzzyAvailability, ZeroFailureRateGivesOne)
{
    const std::vector<double> grid{0.0, 1.0};
    const auto a = fuzzy_availability({0.0, 0.0}, {5.0, 1.0}, grid);
    for (const auto& c : a.cuts) {
        EXPECT_EQ(c.lo, 1.0);
        EXPECT_EQ(c.hi, 1.0);
    }
}

TEST(FuzzyUnavailability, CrispRates)
{
    const std::vector<double> grid{0.0, 0.5, 1.0};
    const auto u = fuzzy_unavailability({0.6566, 0.0}, {22.2898, 0.0}, grid);
    EXPECT_EQ(u.quantity, FuzzyQuantity::unavailability);
    for (const auto& c : u.cuts) {
        EXPECT_NEAR(c.lo, 0.028614510337133, 1e-14);
        EXPECT_NEAR(c.hi, 0.028614510337133, 1e-14);
    }
    const auto half = fuzzy_unavailability({2.0, 0.0}, {2.0, 0.0}, grid);
    EXPECT_DOUBLE_EQ(half.cuts[1].lo, 0.5);
}

TEST(FuzzyUnavailability, ComplementIdentity)
{
    const auto grid = uniform_alpha_grid();
    const auto a = fuzzy_availability(kFailure, kRepair, grid);
    const auto u = fuzzy_unavailability(kFailure, kRepair, grid);
    ASSERT_EQ(a.cuts.size(), u.cuts.size());
    for (std::size_t i = 0; i < a.cuts.size(); ++i) {
        EXPECT_EQ(u.cuts[i].lo, 1.0 - a.cuts[i].hi);
        EXPECT_EQ(u.cuts[i].hi, 1.0 - a.cuts[i].lo);
    }
}

TEST(Defuzzify, TriangleCentroidIsCenter)
{
    EXPECT_EQ(defuzzify(kFailure), 0.6566);
    EXPECT_EQ(defuzzify(kRepair), 22.2898);
}

TEST(Defuzzify, BandOfSymmetricTriangleIsCenter)
{
    const auto band = fuzzy_band(kRepair, uniform_alpha_grid(), FuzzyQuantity::repair_rate);
    EXPECT_NEAR(defuzzify(band), 22.2898, 1e-12);
}

TEST(Defuzzify, CrispAvailabilityIndex)
{
    const auto a = fuzzy_availability({0.6566, 0.0}, {22.2898, 0.0}, uniform_alpha_grid());
    EXPECT_NEAR(defuzzify(a), 0.971385489662866, 1e-14);
}

TEST(Defuzzify, AsymmetricBandMatchesIntegratedCentroid)
{
    // Right triangle on [0, 1] peaked at 1: membership x, centroid 2/3.
    FuzzyIndex f;
    for (double a : uniform_alpha_grid(101))
        f.cuts.push_back({a, a, 1.0});
    EXPECT_NEAR(defuzzify(f), 2.0 / 3.0, 1e-4);
}

TEST(Defuzzify, EmptyIndexRejected)
{
    EXPECT_THROW(defuzzify(FuzzyIndex{}), std::invalid_argument);
}

TEST(RepairUnit, HoursPerRepairConversion)
{
    EXPECT_EQ(repair_rate_per_year(22.2898, RepairUnit::events_per_year), 22.2898);
    EXPECT_NEAR(repair_rate_per_year(22.2898, RepairUnit::hours_per_repair), 8760.0 / 22.2898, 1e-12);
    EXPECT_THROW(repair_rate_per_year(0.0, RepairUnit::hours_per_repair), std::invalid_argument);
}
