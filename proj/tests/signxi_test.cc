#include "gapent/signxi.h"

#include <cmath>

#include <gtest/gtest.h>

#include "support/test_support.h"

namespace gapent {
namespace {

SolverOptions relaxed(double delta) {
  return {.delta = delta, .relaxed_delta = true};
}

TEST(SignReduction, RealArmIsShiftedHiddenArm) {
  SignReductionOracle oracle(
      std::make_unique<DeterministicOracle>(std::vector<double>{-0.25}), 1);
  EXPECT_EQ(oracle.real_arm(), 0u);
  EXPECT_EQ(oracle.fictitious_arm(), 1u);
  EXPECT_EQ(oracle.draw(0), 0.25);
  EXPECT_EQ(oracle.sample_mean(0, 10), 0.25);
  EXPECT_EQ(oracle.count_means_below(0, 5, 3, 0.3), 5u);
  EXPECT_EQ(oracle.hidden().total_draws(), 1u + 10u + 15u);
  EXPECT_EQ(oracle.draws(0), 26u);
}

TEST(SignReduction, FictitiousArmIsStandardGaussianAtOffset) {
  SignReductionOracle oracle(
      std::make_unique<DeterministicOracle>(std::vector<double>{0.1}), 8, 1);
  EXPECT_EQ(oracle.fictitious_arm(), 0u);
  double sum = 0.0;
  constexpr int kReps = 4000;
  for (int i = 0; i < kReps; ++i) sum += oracle.draw(0);
  EXPECT_NEAR(sum / kReps, kSignOffset, 4.0 / std::sqrt(kReps));
  EXPECT_EQ(oracle.hidden().total_draws(), 0u);
}

TEST(SignXi, RejectsMeansOutsideRange) {
  EXPECT_THROW(solve_sign_xi(0.0, 1, relaxed(0.05)), std::invalid_argument);
  EXPECT_THROW(solve_sign_xi(0.6, 1, relaxed(0.05)), std::invalid_argument);
  EXPECT_THROW(solve_sign_xi(-0.75, 1, relaxed(0.05)), std::invalid_argument);
}

TEST(SignXi, DecidesSignBothWays) {
  int correct = 0;
  constexpr int kTrials = 100;
  for (std::uint64_t seed = 0; seed < kTrials; ++seed) {
    const double mean = seed % 2 ? 0.25 : -0.25;
    const SignOutcome out = solve_sign_xi(mean, seed, relaxed(0.05));
    ASSERT_TRUE(out.sign.has_value());
    if (*out.sign == (mean > 0 ? Sign::kPositive : Sign::kNegative)) ++correct;
  }
  EXPECT_GE(correct, testing::binomial_floor(kTrials, 0.05));
}

TEST(SignXi, SamplesOfRealArmAreHiddenSamples) {
  for (ArmId real : {ArmId{0}, ArmId{1}}) {
    auto hidden = std::make_unique<GaussianOracle>(std::vector<double>{0.125}, 5);
    const SamplingOracle* view = hidden.get();
    const SignOutcome out = solve_sign_xi(std::move(hidden), 6, relaxed(0.05), real);
    EXPECT_EQ(out.sign, Sign::kPositive);
    EXPECT_EQ(out.run.per_arm_samples[real], view->total_draws());
    EXPECT_GT(out.run.per_arm_samples[1 - real], 0u);
  }
}

TEST(SignXi, BudgetLeavesSignEmpty) {
  SolverOptions opts = relaxed(0.05);
  opts.budget = 100;
  const SignOutcome out = solve_sign_xi(0.25, 3, opts);
  EXPECT_FALSE(out.sign.has_value());
  EXPECT_EQ(out.run.verdict, Verdict::kBudgetExceeded);
}

TEST(SignXi, RelabellingKeepsCost) {
  double cost[2] = {0.0, 0.0};
  for (ArmId real : {ArmId{0}, ArmId{1}}) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      cost[real] += static_cast<double>(
          solve_sign_xi(0.25, seed, relaxed(0.05), real).run.total_samples);
    }
  }
  EXPECT_NEAR(cost[1] / cost[0], 1.0, 0.2);
}

TEST(LossProfile, AlphaIsMeanSamplesOverFourToTheK) {
  // A stand-in solver with a fixed cost of 100 draws.
  const SignSolver fixed = [](SamplingOracle& o, double) {
    RunOutcome out;
    o.sample_mean(0, 60);
    o.sample_mean(1, 40);
    out.verdict = Verdict::kArm;
    out.arm = 0;
    out.total_samples = 100;
    return out;
  };
  const LossProfile prof =
      measure_loss_profile(fixed, uniform_weights(2), {.delta = 0.05, .trials = 3});
  ASSERT_EQ(prof.entries.size(), 2u);
  EXPECT_EQ(prof.entries[0].k, 1);
  EXPECT_EQ(prof.entries[0].alpha, 25.0);
  EXPECT_EQ(prof.entries[1].alpha, 6.25);
  EXPECT_EQ(prof.entries[1].mean_samples, 100.0);
  EXPECT_DOUBLE_EQ(prof.expected_loss, 0.5 * 25.0 + 0.5 * 6.25);
  EXPECT_NEAR(prof.entropy, std::log(2.0), 1e-15);
  EXPECT_FALSE(prof.partial);
}

TEST(LossProfile, NonArmRunsMarkProfilePartial) {
  const SignSolver give_up = [](SamplingOracle&, double) {
    return RunOutcome{.verdict = Verdict::kBudgetExceeded};
  };
  const LossProfile prof =
      measure_loss_profile(give_up, uniform_weights(1), {.trials = 2});
  EXPECT_TRUE(prof.partial);
  EXPECT_FALSE(prof.entries[0].alpha.has_value());
  EXPECT_NE(loss_profile_csv(prof).find("1,1,missing,missing"), std::string::npos);
}

TEST(LossProfile, RejectsBadDistributions) {
  const SignSolver noop = [](SamplingOracle&, double) { return RunOutcome{}; };
  EXPECT_THROW(measure_loss_profile(noop, {}, {}), std::invalid_argument);
  EXPECT_THROW(measure_loss_profile(noop, {{1, 0.5}}, {}), std::invalid_argument);
  EXPECT_THROW(measure_loss_profile(noop, {{0, 1.0}}, {}), std::invalid_argument);
  EXPECT_THROW(measure_loss_profile(noop, {{1, 1.0}}, {.trials = 0}),
               std::invalid_argument);
  EXPECT_THROW(uniform_weights(0), std::invalid_argument);
}

TEST(LossProfile, CsvLayout) {
  LossProfile prof;
  prof.entries.push_back({.k = 1, .weight = 1.0, .alpha = 2.0, .mean_samples = 8.0});
  prof.expected_loss = 2.0;
  prof.entropy = 0.0;
  prof.delta = std::exp(-3.0);
  EXPECT_EQ(loss_profile_csv(prof),
            "k,p_k,alpha_k,mean_samples\n1,1,2,8\n"
            "expected_loss,ent_P,ln_inv_delta\n2,0,3\n");
}

}  // namespace
}  // namespace gapent
