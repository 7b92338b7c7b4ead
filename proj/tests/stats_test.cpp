#include <vector>

#include <gtest/gtest.h>

#include <sensesearch/rng.hpp>
#include <sensesearch/stats.hpp>

#include "oracles.hpp"

using namespace sensesearch;

namespace
{

UTestResult test(const std::vector<double>& a, const std::vector<double>& b)
{
    return mann_whitney_u(std::span<const double>(a), std::span<const double>(b));
}

std::vector<double> random_sample(Rng& rng, std::size_t n, int levels)
{
    std::vector<double> out(n);
    for (auto& x : out) x = static_cast<double>(rng.below(static_cast<std::uint64_t>(levels))) / 4.0;
    return out;
}

} // namespace

TEST(MannWhitney, CompleteSeparation)
{
    const auto r = test({1, 2, 3}, {4, 5, 6});
    EXPECT_EQ(r.u_statistic, 0.0);
    EXPECT_EQ(r.u_a, 0.0);
    EXPECT_EQ(r.u_b, 9.0);
    EXPECT_TRUE(r.exact);
    EXPECT_DOUBLE_EQ(r.p_value, 0.1);
}

TEST(MannWhitney, IdenticalSamples)
{
    const std::vector<double> a = {0.3, 0.5, 0.1, 0.9};
    const auto r = test(a, a);
    EXPECT_EQ(r.u_a, 8.0);
    EXPECT_EQ(r.u_b, 8.0);
    EXPECT_DOUBLE_EQ(r.p_value, 1.0);
    EXPECT_FALSE(r.significant);
}

// Rank table for A=[1,2,4], B=[3,5,6]: A holds ranks 1, 2, 4, so R_A = 7 and
// U_A = 7 - 6 = 1. Over the 20 equally likely rank triples the null counts
// for U = 0..9 are 1,1,2,3,3,3,3,2,1,1, so P(U <= 1) = 2/20 and p = 0.2.
TEST(MannWhitney, HandRankTable)
{
    const auto r = test({1, 2, 4}, {3, 5, 6});
    EXPECT_EQ(r.u_a, 1.0);
    EXPECT_EQ(r.u_statistic, 1.0);
    EXPECT_DOUBLE_EQ(r.p_value, 0.2);
    EXPECT_DOUBLE_EQ(oracle::exact_u_p_by_enumeration({1, 2, 4}, {3, 5, 6}), 0.2);
}

TEST(MannWhitney, ExactBranchMatchesEnumeration)
{
    Rng rng(2718);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t na = 1 + rng.below(8);
        const std::size_t nb = 1 + rng.below(64 / na);
        ASSERT_LE(na * nb, kExactUTestLimit);
        const auto a = random_sample(rng, na, 6);
        const auto b = random_sample(rng, nb, 6);
        const auto r = test(a, b);
        ASSERT_TRUE(r.exact);
        EXPECT_NEAR(r.p_value, oracle::exact_u_p_by_enumeration(a, b), 1e-12);
        EXPECT_DOUBLE_EQ(r.u_a, oracle::u_a(a, b));
    }
}

TEST(MannWhitney, UaPlusUbAndSwapInvariance)
{
    Rng rng(55);
    for (int trial = 0; trial < 300; ++trial) {
        const auto a = random_sample(rng, 1 + rng.below(40), 10);
        const auto b = random_sample(rng, 1 + rng.below(40), 10);
        const auto ab = test(a, b);
        const auto ba = test(b, a);
        EXPECT_EQ(ab.u_a + ab.u_b, static_cast<double>(a.size() * b.size()));
        EXPECT_EQ(ab.u_statistic, ba.u_statistic);
        EXPECT_NEAR(ab.p_value, ba.p_value, 1e-12);
        EXPECT_LE(ab.u_statistic, static_cast<double>(a.size() * b.size()));
        EXPECT_GE(ab.p_value, 0.0);
        EXPECT_LE(ab.p_value, 1.0);
    }
}

TEST(MannWhitney, BranchesAgreeNearSwitchover)
{
    Rng rng(99);
    for (auto [na, nb] : std::vector<std::pair<std::size_t, std::size_t>>{{8, 8}, {7, 9}, {6, 10}}) {
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<double> a(na);
            std::vector<double> b(nb);
            for (auto& x : a) x = rng.uniform01();
            for (auto& x : b) x = rng.uniform01() + 0.2;
            const double exact = mann_whitney_exact_p(std::span<const double>(a), std::span<const double>(b));
            const double approx = mann_whitney_normal_p(std::span<const double>(a), std::span<const double>(b));
            EXPECT_NEAR(exact, approx, 0.02) << na << "x" << nb;
        }
    }
}

TEST(MannWhitney, NormalBranchAboveLimit)
{
    std::vector<double> a(30);
    std::vector<double> b(30);
    for (std::size_t i = 0; i < 30; ++i) {
        a[i] = static_cast<double>(i);
        b[i] = static_cast<double>(i) + 100.0;
    }
    const auto r = test(a, b);
    EXPECT_FALSE(r.exact);
    EXPECT_TRUE(r.significant);
    EXPECT_LT(r.p_value, 1e-6);
    EXPECT_NEAR(test(a, a).p_value, 1.0, 1e-12);
}

TEST(MannWhitney, AllTied)
{
    const auto r = test({0.5, 0.5, 0.5}, {0.5, 0.5});
    EXPECT_EQ(r.u_a, 3.0);
    EXPECT_DOUBLE_EQ(r.p_value, 1.0);
    std::vector<double> big(40, 0.7);
    EXPECT_DOUBLE_EQ(test(big, big).p_value, 1.0);
}

TEST(MannWhitney, Errors)
{
    EXPECT_THROW(test({}, {1.0}), InvalidInput);
    EXPECT_THROW(test({1.0}, {}), InvalidInput);
    const std::vector<double> a = {1.0};
    EXPECT_THROW(mann_whitney_u(std::span<const double>(a), std::span<const double>(a), 1.5), InvalidInput);
}
