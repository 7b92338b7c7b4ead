#include <set>

#include <gtest/gtest.h>

#include <sensesearch/core.hpp>

#include "test_support.hpp"

using namespace sensesearch;
using testing_support::make_doc;

TEST(Document, RejectsZeroSenses)
{
    EXPECT_THROW(Document("d", {{"a", 0, 0}}), InvalidInput);
}

TEST(Document, RejectsDecreasingSentences)
{
    EXPECT_THROW(Document("d", {{"a", 2, 1}, {"b", 2, 0}}), InvalidInput);
}

TEST(Document, RejectsMixedSentenceIndexing)
{
    EXPECT_THROW(Document("d", {{"a", 2, 0}, {"b", 2, std::nullopt}}), InvalidInput);
}

TEST(Document, SearchSpaceSize)
{
    EXPECT_EQ(make_doc({3, 1, 2, 5}).search_space_size(), 30u);
    EXPECT_EQ(make_doc({3, 1, 2, 5}).changeable(), (std::vector<std::size_t>{0, 2, 3}));
}

TEST(RandomConfiguration, MonosemousDocumentIsAllZero)
{
    const auto doc = make_doc({1, 1, 1, 1});
    for (std::uint64_t seed : {0ULL, 1ULL, 99ULL}) {
        Rng rng(seed);
        EXPECT_EQ(random_configuration(doc, rng), Configuration({0, 0, 0, 0}));
    }
}

TEST(RandomConfiguration, EntriesStayInRange)
{
    const auto doc = make_doc({3, 1, 2, 5});
    Rng rng(7);
    for (int k = 0; k < 1000; ++k) {
        EXPECT_TRUE(is_valid(doc, random_configuration(doc, rng)));
    }
}

TEST(RandomConfiguration, SameSeedSameVector)
{
    const auto doc = make_doc({4, 4, 4, 4, 4, 4});
    Rng a(42);
    Rng b(42);
    EXPECT_EQ(random_configuration(doc, a), random_configuration(doc, b));
}

TEST(RandomConfiguration, EmptyDocumentIsAnError)
{
    Rng rng(1);
    EXPECT_THROW(random_configuration(Document("empty", {}), rng), InvalidInput);
}

TEST(RandomConfiguration, CoversEverySense)
{
    const auto doc = make_doc({3, 2, 4});
    std::vector<std::set<Sense>> seen(3);
    Rng rng(5);
    for (int k = 0; k < 10000; ++k) {
        const auto c = random_configuration(doc, rng);
        for (std::size_t i = 0; i < 3; ++i) seen[i].insert(c[i]);
    }
    EXPECT_EQ(seen[0].size(), 3u);
    EXPECT_EQ(seen[1].size(), 2u);
    EXPECT_EQ(seen[2].size(), 4u);
}

TEST(MakeRandomChanges, ZeroChangesIsIdentity)
{
    const auto doc = make_doc({3, 3, 3});
    const Configuration c({1, 2, 0});
    Rng rng(3);
    EXPECT_EQ(make_random_changes(doc, c, 0, rng), c);
}

TEST(MakeRandomChanges, ChangeAlwaysPicksAnotherSense)
{
    const auto doc = make_doc({4});
    const Configuration c({1});
    std::set<Sense> seen;
    Rng rng(11);
    for (int k = 0; k < 2000; ++k) {
        const auto out = make_random_changes(doc, c, 1, rng);
        EXPECT_NE(out[0], 1u);
        seen.insert(out[0]);
    }
    EXPECT_EQ(seen, (std::set<Sense>{0, 2, 3}));
}

TEST(MakeRandomChanges, InputIsNotModified)
{
    const auto doc = make_doc({5, 5, 5, 5});
    const Configuration c({0, 1, 2, 3});
    const Configuration copy = c;
    Rng rng(1);
    (void)make_random_changes(doc, c, 10, rng);
    EXPECT_EQ(c, copy);
}

TEST(MakeRandomChanges, DegenerateSpaceIsUnchanged)
{
    const auto doc = make_doc({1, 1, 1});
    Rng rng(1);
    EXPECT_EQ(make_random_changes(doc, Configuration({0, 0, 0}), 7, rng), Configuration({0, 0, 0}));
}

TEST(MakeRandomChanges, MonosemousWordsAreNeverTouched)
{
    const auto doc = make_doc({1, 3, 1, 2});
    Rng rng(2);
    for (int k = 0; k < 500; ++k) {
        const auto out = make_random_changes(doc, Configuration({0, 0, 0, 0}), 3, rng);
        EXPECT_EQ(out[0], 0u);
        EXPECT_EQ(out[2], 0u);
    }
}

TEST(MakeRandomChanges, RejectsConfigurationOfWrongShape)
{
    const auto doc = make_doc({2, 2});
    Rng rng(1);
    EXPECT_THROW(make_random_changes(doc, Configuration({0}), 1, rng), InvalidInput);
    EXPECT_THROW(make_random_changes(doc, Configuration({0, 2}), 1, rng), InvalidInput);
}

// Five sequential changes on ten words. Repeated hits can revert a word, so
// the reachable Hamming distances were established by simulation: every
// value 0..5 on three-sense words, only odd values on two-sense words
// (each change flips one bit, so parity is preserved).
TEST(MakeRandomChanges, FiveChangesReachableDistances)
{
    const auto multi = make_doc(std::vector<Sense>(10, 3));
    const auto binary = make_doc(std::vector<Sense>(10, 2));
    const Configuration zero(std::vector<Sense>(10, 0));
    std::set<std::size_t> multi_seen;
    std::set<std::size_t> binary_seen;
    for (std::uint64_t seed = 0; seed < 20000; ++seed) {
        Rng rng(seed);
        multi_seen.insert(hamming_distance(zero, make_random_changes(multi, zero, 5, rng)));
        binary_seen.insert(hamming_distance(zero, make_random_changes(binary, zero, 5, rng)));
    }
    EXPECT_EQ(multi_seen, (std::set<std::size_t>{0, 1, 2, 3, 4, 5}));
    EXPECT_EQ(binary_seen, (std::set<std::size_t>{1, 3, 5}));
}

TEST(MakeRandomChanges, PropertyInRangeAndSingleChangeDistance)
{
    Rng meta(2024);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + meta.below(30);
        std::vector<Sense> senses(n);
        std::vector<Sense> poly(n);
        for (std::size_t i = 0; i < n; ++i) {
            senses[i] = static_cast<Sense>(1 + meta.below(6));
            poly[i] = static_cast<Sense>(2 + meta.below(5));
        }
        const auto doc = make_doc(senses);
        const auto poly_doc = make_doc(poly);
        Rng rng(meta.next_u64());
        const auto start = random_configuration(doc, rng);
        const auto moved = make_random_changes(doc, start, meta.below(40), rng);
        EXPECT_TRUE(is_valid(doc, moved));

        const auto p0 = random_configuration(poly_doc, rng);
        EXPECT_EQ(hamming_distance(p0, make_random_changes(poly_doc, p0, 1, rng)), 1u);
    }
}

TEST(MakeRandomChanges, DeterministicUnderSeed)
{
    const auto doc = make_doc({2, 3, 4, 5, 6, 7});
    const Configuration c({0, 0, 0, 0, 0, 0});
    Rng a(77);
    Rng b(77);
    EXPECT_EQ(make_random_changes(doc, c, 9, a), make_random_changes(doc, c, 9, b));
}

TEST(HammingDistance, Examples)
{
    EXPECT_EQ(hamming_distance(Configuration({1, 2, 3}), Configuration({1, 2, 3})), 0u);
    EXPECT_EQ(hamming_distance(Configuration({0, 1, 2}), Configuration({0, 2, 2})), 1u);
    EXPECT_EQ(hamming_distance(Configuration({1, 1, 1, 1}), Configuration({0, 0, 0, 0})), 4u);
}

TEST(HammingDistance, LengthMismatch)
{
    EXPECT_THROW(hamming_distance(Configuration({1}), Configuration({1, 2})), InvalidInput);
}

TEST(Rng, FixedStream)
{
    // std::mt19937_64 is specified bit-exactly: the 10000th output for the
    // default seed 5489 is 9981545732273789042.
    Rng rng(5489);
    std::uint64_t x = 0;
    for (int i = 0; i < 10000; ++i) x = rng.next_u64();
    EXPECT_EQ(x, 9981545732273789042ULL);
}

TEST(Rng, BelowIsUniformEnough)
{
    Rng rng(9);
    std::vector<int> counts(5, 0);
    for (int i = 0; i < 50000; ++i) ++counts[rng.below(5)];
    for (int c : counts) EXPECT_NEAR(c, 10000, 400);
}

TEST(Rng, DeriveSeedDependsOnEveryIndex)
{
    EXPECT_NE(derive_seed(1, 0, 1), derive_seed(1, 1, 0));
    EXPECT_NE(derive_seed(1, 2), derive_seed(2, 2));
    EXPECT_EQ(derive_seed(5, 3, 4), derive_seed(5, 3, 4));
}
