#include "pmurel/markov.hpp"
#include "pmurel/reliability.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace pmurel;

namespace {

constexpr double kLambda1 = 8.92e-4;
constexpr double kLambda2 = 3.92e-3;

oracle::Matrix dense(const GeneratorMatrix& g)
{
    oracle::Matrix m(g.size(), std::vector<double>(g.size()));
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j)
            m[i][j] = g(i, j);
    return m;
}

GeneratorMatrix random_unified(std::mt19937_64& rng, bool with_recovery)
{
    std::uniform_real_distribution<double> rate(0.0, 2.0);
    std::map<std::string, double> rates;
    for (const auto& [from, to] : allowed_transitions) {
        const bool recovery = to == StateId::UP;
        if (recovery && !with_recovery)
            continue;
        rates[transition_name(from, to)] = rate(rng);
    }
    return build_unified_model(rates);
}

} // namespace

TEST(Generator, RowsSumToZero)
{
    std::mt19937_64 rng(3);
    for (int n = 0; n < 10; ++n) {
        const auto g = random_unified(rng, true);
        for (std::size_t i = 0; i < g.size(); ++i)
            EXPECT_NEAR(g.row_sum(i), 0.0, 1e-12);
        EXPECT_NO_THROW(g.validate());
    }
}

TEST(Generator, FailureStatesAbsorbing)
{
    std::mt19937_64 rng(5);
    const auto g = random_unified(rng, true);
    for (auto s : failure_states)
        EXPECT_TRUE(g.is_absorbing(index(s)));
}

TEST(Generator, RejectsBadTransitions)
{
    const std::vector<Transition> self{{0, 0, 1.0}};
    EXPECT_THROW(GeneratorMatrix(2, self), std::invalid_argument);
    const std::vector<Transition> negative{{0, 1, -1.0}};
    EXPECT_THROW(GeneratorMatrix(2, negative), std::invalid_argument);
    const std::vector<Transition> range{{0, 2, 1.0}};
    EXPECT_THROW(GeneratorMatrix(2, range), std::invalid_argument);
}

TEST(UnifiedModel, EmptyMapIsZeroGenerator)
{
    const auto g = build_unified_model({});
    EXPECT_EQ(g.size(), unified_state_count);
    EXPECT_EQ(g.uniformization_rate(), 0.0);
    const auto d = transient_distribution(g, unified_initial(), 123.0);
    EXPECT_EQ(d[index(StateId::UP)], 1.0);
    EXPECT_EQ(interaction_reliability_markov(g, 1e6), 1.0);
}

TEST(UnifiedModel, ReducedChainHasOnlyTwoRates)
{
    const auto g = build_reduced_model(kLambda1, kLambda2);
    EXPECT_EQ(g(index(StateId::UP), index(StateId::HD3)), kLambda1);
    EXPECT_EQ(g(index(StateId::HD3), index(StateId::F_INT)), kLambda2);
    EXPECT_EQ(g(index(StateId::UP), index(StateId::UP)), -kLambda1);
    EXPECT_EQ(g(index(StateId::HD3), index(StateId::HD3)), -kLambda2);
    int nonzero = 0;
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j)
            nonzero += g(i, j) != 0.0;
    EXPECT_EQ(nonzero, 4);
}

TEST(UnifiedModel, RejectsUnknownOrNegative)
{
    EXPECT_THROW(build_unified_model({{"UP->F_INT", 1.0}}), std::invalid_argument);
    EXPECT_THROW(build_unified_model({{"HD1->UP", 1.0}}), std::invalid_argument);
    EXPECT_THROW(build_unified_model({{"UP->XX", 1.0}}), std::invalid_argument);
    EXPECT_THROW(build_unified_model({{"UP HD3", 1.0}}), std::invalid_argument);
    EXPECT_THROW(build_unified_model({{"UP->HD3", -1e-3}}), std::invalid_argument);
}

TEST(UnifiedModel, AcceptsEveryAllowedTransition)
{
    for (const auto& [from, to] : allowed_transitions) {
        const auto g = build_unified_model({{transition_name(from, to), 0.5}});
        EXPECT_EQ(g(index(from), index(to)), 0.5);
    }
}

TEST(Transient, TimeZeroReturnsInitial)
{
    const auto g = build_reduced_model(kLambda1, kLambda2);
    const StateDistribution init({0.2, 0.1, 0.0, 0.3, 0.0, 0.1, 0.2, 0.1});
    const auto d = transient_distribution(g, init, 0.0);
    for (std::size_t i = 0; i < d.size(); ++i)
        EXPECT_EQ(d[i], init[i]);
}

TEST(Transient, TwoStateSteadyState)
{
    const std::vector<Transition> tr{{0, 1, 0.6566}, {1, 0, 22.2898}};
    const GeneratorMatrix g(2, tr, {"UP", "DOWN"});
    const auto d = transient_distribution(g, StateDistribution::point_mass(2, 0), 5.0);
    EXPECT_NEAR(d[0], 22.2898 / (0.6566 + 22.2898), 1e-6);
}

TEST(Transient, TwoStateExactTransient)
{
    // P_up(t) = mu/(l+mu) + l/(l+mu) e^{-(l+mu)t}
    const double l = 0.6566, mu = 22.2898;
    const std::vector<Transition> tr{{0, 1, l}, {1, 0, mu}};
    const GeneratorMatrix g(2, tr);
    for (double t : {0.001, 0.01, 0.05, 0.2, 1.0, 40.0}) {
        const auto d = transient_distribution(g, StateDistribution::point_mass(2, 0), t);
        EXPECT_NEAR(d[0], mu / (l + mu) + l / (l + mu) * std::exp(-(l + mu) * t), 1e-10) << t;
    }
}

TEST(Transient, ReducedChainSpotValue)
{
    const auto g = build_reduced_model(kLambda1, kLambda2);
    const auto d = transient_distribution(g, unified_initial(), 100.0);
    EXPECT_NEAR(d[index(StateId::UP)] + d[index(StateId::HD3)], 0.985055948331705, 1e-10);
}

TEST(Transient, MatchesMatrixExponentialOnRandomModels)
{
    std::mt19937_64 rng(17);
    for (int n = 0; n < 10; ++n) {
        const auto g = random_unified(rng, true);
        const auto q = dense(g);
        for (double t : {0.1, 1.0, 7.5, 60.0}) {
            const auto d = transient_distribution(g, unified_initial(), t);
            const auto ref = oracle::transient_row(q, index(StateId::UP), t);
            for (std::size_t i = 0; i < d.size(); ++i)
                EXPECT_NEAR(d[i], ref[i], 1e-9) << "state " << i << " t=" << t;
        }
    }
}

TEST(Transient, ProbabilityConservation)
{
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> time(0.0, 200.0);
    for (int n = 0; n < 50; ++n) {
        const auto g = random_unified(rng, n % 2 == 0);
        const auto d = transient_distribution(g, unified_initial(), time(rng));
        EXPECT_NEAR(d.total(), 1.0, 1e-9);
        for (double p : d.values()) {
            EXPECT_GE(p, 0.0);
            EXPECT_LE(p, 1.0);
        }
    }
}

TEST(Transient, ChapmanKolmogorov)
{
    const auto g = build_reduced_model(kLambda1, kLambda2);
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> time(0.0, 3000.0);
    for (int n = 0; n < 20; ++n) {
        const double s = time(rng), t = time(rng);
        const auto mid = transient_distribution(g, unified_initial(), s);
        const auto two_step = transient_distribution(g, mid, t);
        const auto direct = transient_distribution(g, unified_initial(), s + t);
        for (std::size_t i = 0; i < direct.size(); ++i)
            EXPECT_NEAR(two_step[i], direct[i], 1e-8);
    }
}

TEST(Transient, AbsorptionNeverDecreasesWithoutRecovery)
{
    std::mt19937_64 rng(31);
    for (int n = 0; n < 5; ++n) {
        const auto g = random_unified(rng, false);
        double prev = 0.0;
        for (int k = 0; k <= 40; ++k) {
            const double tf = total_failure_probability(transient_distribution(g, unified_initial(), 0.25 * k));
            EXPECT_GE(tf, prev - 1e-12);
            prev = tf;
        }
    }
}

TEST(Transient, StiffLongHorizon)
{
    // q t far beyond one uniformization pass.
    const std::vector<Transition> tr{{0, 1, 1e3}, {1, 0, 1e3}, {1, 2, 1e-3}};
    const GeneratorMatrix g(3, tr);
    const auto d = transient_distribution(g, StateDistribution::point_mass(3, 0), 100.0);
    const auto ref = oracle::transient_row({{-1e3, 1e3, 0.0}, {1e3, -1e3 - 1e-3, 1e-3}, {0.0, 0.0, 0.0}}, 0, 100.0);
    for (std::size_t i = 0; i < 3; ++i)
        EXPECT_NEAR(d[i], ref[i], 1e-8);
    EXPECT_NEAR(d.total(), 1.0, 1e-9);
}

TEST(Transient, RejectsBadInput)
{
    const auto g = build_reduced_model(kLambda1, kLambda2);
    EXPECT_THROW(transient_distribution(g, unified_initial(), -1.0), std::invalid_argument);
    EXPECT_THROW(transient_distribution(g, StateDistribution::point_mass(3, 0), 1.0), std::invalid_argument);
    EXPECT_THROW(StateDistribution({0.5, 0.4}), std::invalid_argument);
    EXPECT_THROW(StateDistribution({1.2, -0.2}), std::invalid_argument);
}

TEST(InteractionMarkov, StartsAtOne)
{
    std::mt19937_64 rng(37);
    EXPECT_EQ(interaction_reliability_markov(random_unified(rng, true), 0.0), 1.0);
}

TEST(InteractionMarkov, MatchesClosedFormOnReducedChain)
{
    const auto g = build_reduced_model(kLambda1, kLambda2);
    const InteractionParams p{kLambda1, kLambda2};
    for (double t : {0.0, 10.0, 100.0, 500.0, 1000.0, 5000.0})
        EXPECT_NEAR(interaction_reliability_markov(g, t), interaction_reliability_closed_form(p, t), 1e-8);
    for (int k = 0; k <= 50; ++k) {
        const double t = 5.0 / kLambda1 * k / 50.0;
        EXPECT_NEAR(interaction_reliability_markov(g, t), interaction_reliability_closed_form(p, t), 1e-8);
    }
}

TEST(InteractionMarkov, NonincreasingWithoutRecovery)
{
    std::mt19937_64 rng(41);
    const auto g = random_unified(rng, false);
    double prev = 1.0;
    for (int k = 0; k <= 30; ++k) {
        const double r = interaction_reliability_markov(g, 0.2 * k);
        EXPECT_LE(r, prev + 1e-12);
        prev = r;
    }
}

TEST(InteractionMarkov, RequiresUnifiedModel)
{
    const std::vector<Transition> tr{{0, 1, 1.0}};
    EXPECT_THROW(interaction_reliability_markov(GeneratorMatrix(2, tr), 1.0), std::invalid_argument);
}
