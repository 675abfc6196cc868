#include <demosim/sampling.h>

#include <gtest/gtest.h>

#include <cmath>
#include <set>

using namespace demosim;

TEST(Rng, SameSeedSameStream) {
    Rng a(42);
    Rng b(42);
    for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
    Rng c(43);
    EXPECT_NE(Rng(42).next_u64(), c.next_u64());
}

TEST(Rng, Uniform01InHalfOpenUnitInterval) {
    Rng r(1);
    double sum = 0;
    for (int i = 0; i < 100000; ++i) {
        const double u = r.uniform01();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
    }
    // mean of 1e5 uniforms: sd = sqrt(1/12/1e5) ~ 0.00091
    EXPECT_NEAR(sum / 100000, 0.5, 5 * 0.00091);
}

TEST(Rng, IndexCoversRangeUniformly) {
    Rng r(2);
    std::vector<int> counts(7, 0);
    const int n = 70000;
    for (int i = 0; i < n; ++i) ++counts[r.index(7)];
    for (int c : counts) {
        // binomial(70000, 1/7): sd ~ 92.6
        EXPECT_NEAR(c, 10000, 5 * 92.6);
    }
    EXPECT_EQ(r.uniform_int(3, 3), 3);
}

TEST(WeightedIndex, FollowsWeights) {
    Rng r(3);
    const std::vector<double> w{1.0, 0.0, 3.0};
    std::vector<int> counts(3, 0);
    const int n = 40000;
    for (int i = 0; i < n; ++i) ++counts[*weighted_index(w, r)];
    EXPECT_EQ(counts[1], 0);
    // p = 0.25: sd = sqrt(40000 * 0.25 * 0.75) ~ 86.6
    EXPECT_NEAR(counts[0], 10000, 5 * 86.6);
}

TEST(WeightedIndex, NoPositiveWeightGivesNothing) {
    Rng r(4);
    EXPECT_FALSE(weighted_index(std::vector<double>{}, r));
    EXPECT_FALSE(weighted_index(std::vector<double>{0.0, -1.0}, r));
    EXPECT_EQ(weighted_index(std::vector<double>{0.0, -1.0, 2.0}, r), 2u);
}

TEST(SampleWithoutReplacement, DistinctSortedAndClamped) {
    Rng r(5);
    for (int trial = 0; trial < 200; ++trial) {
        const auto s = sample_without_replacement(30, 10, r);
        ASSERT_EQ(s.size(), 10u);
        ASSERT_TRUE(std::is_sorted(s.begin(), s.end()));
        ASSERT_EQ(std::set<std::size_t>(s.begin(), s.end()).size(), 10u);
        ASSERT_LT(s.back(), 30u);
    }
    EXPECT_EQ(sample_without_replacement(3, 10, r), (std::vector<std::size_t>{0, 1, 2}));
    EXPECT_TRUE(sample_without_replacement(0, 5, r).empty());
}

TEST(SampleWithoutReplacement, EveryElementEquallyLikely) {
    Rng r(6);
    std::vector<int> counts(10, 0);
    const int trials = 30000;
    for (int t = 0; t < trials; ++t) {
        for (auto i : sample_without_replacement(10, 3, r)) ++counts[i];
    }
    // each element included with p = 0.3: sd = sqrt(30000 * 0.3 * 0.7) ~ 79.4
    for (int c : counts) EXPECT_NEAR(c, 9000, 5 * 79.4);
}
