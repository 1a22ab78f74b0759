#include "gapent/instance.h"

#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "support/test_support.h"

namespace gapent {
namespace {

using testing::brute_profile;
using testing::close_rel;

TEST(ParseInstance, EchoesMeansInFileOrder) {
  const Instance inst = parse_instance("1.0\n0.5\n0.75");
  EXPECT_EQ(inst.means(), (std::vector<double>{1.0, 0.5, 0.75}));
  EXPECT_EQ(inst.best_arm(), 0u);
}

TEST(ParseInstance, SkipsCommentsAndBlankLines) {
  const Instance inst = parse_instance("0.9\n# comment\n\n  0.4  \n");
  EXPECT_EQ(inst.means(), (std::vector<double>{0.9, 0.4}));
}

TEST(ParseInstance, RejectsTiedMaximum) {
  EXPECT_THROW(parse_instance("1.0\n1.0"), InstanceError);
  EXPECT_THROW(parse_instance("0.2\n0.7\n0.7"), InstanceError);
}

TEST(ParseInstance, RejectsBadInput) {
  EXPECT_THROW(parse_instance("1.5\n0.2"), InstanceError);
  EXPECT_THROW(parse_instance("-0.1\n0.2"), InstanceError);
  EXPECT_THROW(parse_instance("0.7"), InstanceError);
  EXPECT_THROW(parse_instance("0.7\nabc"), InstanceError);
  EXPECT_THROW(parse_instance("0.7\n0.3x"), InstanceError);
  EXPECT_THROW(parse_instance(""), InstanceError);
}

TEST(ParseInstance, FormatRoundTrips) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    const Instance inst = Instance::from_means(testing::random_means(rng, 2 + i % 9));
    EXPECT_EQ(parse_instance(format_instance(inst)).means(), inst.means());
  }
}

TEST(GroupIndex, HalfOpenIntervals) {
  EXPECT_EQ(group_index(0.5), 1);
  EXPECT_EQ(group_index(1.0), 0);
  EXPECT_EQ(group_index(0.3), 1);
  EXPECT_EQ(group_index(0.25), 2);
  EXPECT_EQ(group_index(std::nextafter(0.25, 1.0)), 1);
  EXPECT_EQ(group_index(0.51), 0);
}

TEST(GroupIndex, RejectsOutOfRange) {
  EXPECT_THROW(group_index(0.0), InstanceError);
  EXPECT_THROW(group_index(-0.2), InstanceError);
  EXPECT_THROW(group_index(1.0000001), InstanceError);
  EXPECT_THROW(group_index(std::nan("")), InstanceError);
}

TEST(GroupIndex, BracketsRandomGaps) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> expo(0.0, 40.0);
  for (int i = 0; i < 100000; ++i) {
    const double gap = std::min(1.0, std::exp2(-expo(rng)));
    const int k = group_index(gap);
    ASSERT_GE(k, 0);
    ASSERT_LT(std::ldexp(1.0, -(k + 1)), gap) << gap;
    ASSERT_LE(gap, std::ldexp(1.0, -k)) << gap;
  }
}

TEST(Profile, FourArmExample) {
  const GapProfile p = profile(Instance::from_means(std::vector<double>{1.0, 0.5, 0.5, 0.75}));
  EXPECT_EQ(p.gaps, (std::vector<double>{0.25, 0.5, 0.5}));
  EXPECT_EQ(p.group_of, (std::vector<int>{-1, 1, 1, 2}));
  EXPECT_EQ(p.group_size.at(1), 2u);
  EXPECT_EQ(p.group_size.at(2), 1u);
  EXPECT_DOUBLE_EQ(p.complexity, 24.0);
  EXPECT_DOUBLE_EQ(p.group_complexity.at(1), 8.0);
  EXPECT_DOUBLE_EQ(p.group_complexity.at(2), 16.0);
  EXPECT_DOUBLE_EQ(p.group_weight.at(1), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(p.group_weight.at(2), 2.0 / 3.0);
  // (1/3) ln 3 + (2/3) ln (3/2)
  EXPECT_NEAR(p.entropy, 0.636514168294813, 1e-12);
  EXPECT_EQ(p.r_max, 2);  // G_2 = {0.75} is the deepest nonempty group
}

TEST(Profile, SingleGroupHasZeroEntropy) {
  const GapProfile p = profile(Instance::from_means(std::vector<double>{1.0, 0.5}));
  EXPECT_EQ(p.group_weight.size(), 1u);
  EXPECT_DOUBLE_EQ(p.group_weight.at(1), 1.0);
  EXPECT_EQ(p.entropy, 0.0);
  EXPECT_DOUBLE_EQ(p.complexity, 4.0);
  EXPECT_EQ(p.r_max, 1);
}

TEST(Profile, UnitGapLandsInGroupZero) {
  const GapProfile p = profile(Instance::from_means(std::vector<double>{1.0, 0.0}));
  EXPECT_EQ(p.group_of[1], 0);
  EXPECT_DOUBLE_EQ(p.complexity, 1.0);
  EXPECT_EQ(p.r_max, 0);
}

TEST(Profile, RMaxIsFloorLogOfSmallestGap) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    const auto means = testing::random_means(rng, 2 + i % 20);
    const GapProfile p = profile(Instance::from_means(means));
    EXPECT_EQ(p.r_max, static_cast<int>(std::floor(std::log2(1.0 / p.gaps.front()))));
  }
}

TEST(Profile, MatchesBruteForceOnRandomInstances) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 300; ++i) {
    const auto means = testing::random_means(rng, 2 + i % 49);
    const GapProfile p = profile(Instance::from_means(means));
    const auto ref = brute_profile(means);
    ASSERT_TRUE(close_rel(p.complexity, ref.complexity));
    ASSERT_TRUE(close_rel(p.entropy, ref.entropy));
    ASSERT_EQ(p.r_max, ref.r_max);
    ASSERT_EQ(p.group_of, ref.group_of);
    ASSERT_EQ(p.group_complexity.size(), ref.group_complexity.size());
    for (const auto& [k, hk] : ref.group_complexity) {
      ASSERT_TRUE(close_rel(p.group_complexity.at(k), hk));
      ASSERT_TRUE(close_rel(p.group_weight.at(k), ref.group_weight.at(k)));
    }
  }
}

TEST(Profile, InvariantsHoldOnRandomInstances) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = 2 + i % 40;
    const GapProfile p = profile(Instance::from_means(testing::random_means(rng, n)));
    double hsum = 0.0, psum = 0.0;
    for (const auto& [k, hk] : p.group_complexity) hsum += hk;
    for (const auto& [k, pk] : p.group_weight) {
      EXPECT_GT(pk, 0.0);
      EXPECT_LE(pk, 1.0);
      psum += pk;
    }
    EXPECT_TRUE(close_rel(hsum, p.complexity));
    EXPECT_TRUE(close_rel(psum, 1.0));
    EXPECT_GE(p.entropy, 0.0);
    EXPECT_LE(p.entropy, std::log(static_cast<double>(p.group_weight.size())) + 1e-12);
    EXPECT_GE(p.complexity, static_cast<double>(n - 1));
  }
}

TEST(Profile, PermutationInvariant) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    auto means = testing::random_means(rng, 3 + i % 30);
    const GapProfile a = profile(Instance::from_means(means));
    std::shuffle(means.begin(), means.end(), rng);
    const GapProfile b = profile(Instance::from_means(means));
    EXPECT_EQ(a.gaps, b.gaps);
    EXPECT_EQ(a.complexity, b.complexity);
    EXPECT_EQ(a.group_complexity, b.group_complexity);
    EXPECT_EQ(a.group_weight, b.group_weight);
    EXPECT_EQ(a.entropy, b.entropy);
    EXPECT_EQ(a.r_max, b.r_max);
  }
}

TEST(ConjecturedBound, Examples) {
  const GapProfile p = profile(Instance::from_means(std::vector<double>{1.0, 0.5, 0.5, 0.75}));
  // 24 * (ln 100 + 0.636514...) and 24 * (ln 10 + 0.636514...)
  EXPECT_NEAR(conjectured_bound(p, 0.01), 125.80, 0.005);
  EXPECT_NEAR(conjectured_bound(p, 0.1), 70.538, 0.001);

  const GapProfile two = profile(Instance::from_means(std::vector<double>{1.0, 0.5}));
  EXPECT_NEAR(conjectured_bound(two, std::exp(-1.0)), 4.0, 1e-12);
}

TEST(ConjecturedBound, RejectsDeltaOutOfRange) {
  const GapProfile p = profile(Instance::from_means(std::vector<double>{1.0, 0.5}));
  EXPECT_THROW(conjectured_bound(p, 0.0), InstanceError);
  EXPECT_THROW(conjectured_bound(p, 1.0), InstanceError);
  EXPECT_THROW(conjectured_bound(p, -0.5), InstanceError);
}

TEST(DiscreteInstance, Construction) {
  EXPECT_EQ(make_discrete_instance({{1, 2}, {3, 1}}, 1.0).means(),
            (std::vector<double>{1.0, 0.5, 0.5, 0.875}));
  const Instance two = make_discrete_instance({{1, 1}}, 1.0);
  EXPECT_EQ(two.size(), 2u);
  EXPECT_EQ(profile(two).gaps, (std::vector<double>{0.5}));
}

TEST(DiscreteInstance, Errors) {
  EXPECT_THROW(make_discrete_instance({{2, 3}}, 0.2), InstanceError);
  EXPECT_THROW(make_discrete_instance({}, 1.0), InstanceError);
  EXPECT_THROW(make_discrete_instance({{1, 0}}, 1.0), InstanceError);
  EXPECT_THROW(make_discrete_instance({{0, 1}}, 1.0), InstanceError);
}

TEST(DiscreteInstance, ComplexityIsExactSumOfPowersOfFour) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::size_t> count(0, 6);
  for (int i = 0; i < 200; ++i) {
    std::map<int, std::size_t> counts;
    double expected = 0.0;
    for (int k = 1; k <= 6; ++k) {
      const std::size_t nk = count(rng);
      if (nk) counts[k] = nk;
      expected += std::ldexp(1.0, 2 * k) * static_cast<double>(nk);
    }
    if (counts.empty()) continue;
    const GapProfile p = profile(make_discrete_instance(counts, 1.0));
    EXPECT_EQ(p.complexity, expected);
    for (const auto& [k, nk] : counts) {
      EXPECT_EQ(p.group_size.at(k), nk);
    }
  }
}

TEST(ProfileCsv, RowLayout) {
  Instance inst = Instance::from_means(std::vector<double>{1.0, 0.5, 0.5, 0.75});
  inst.set_id("four");
  EXPECT_EQ(profile_csv_header(), "id,n,H,ent,r_max,k,H_k,p_k");
  const std::string row = profile_csv_row(profile(inst));
  EXPECT_EQ(row.rfind("four,4,24,0.6365141682948", 0), 0u) << row;
  EXPECT_NE(row.find(",1,8,0.33333333333333331,2,16,0.66666666666666663"),
            std::string::npos)
      << row;
}

}  // namespace
}  // namespace gapent
