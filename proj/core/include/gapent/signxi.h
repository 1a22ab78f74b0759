#ifndef GAPENT_SIGNXI_H_
#define GAPENT_SIGNXI_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gapent/oracle.h"
#include "gapent/solvers.h"

namespace gapent {

enum class Sign { kPositive, kNegative };

// Mean at which the fictitious reference arm (and the zero threshold) sits.
inline constexpr double kSignOffset = 0.5;

// Presents a single hidden arm plus a fictitious N(0.5, 1) arm as a two-arm
// Best-1-Arm instance. Real-arm rewards are the hidden arm's rewards
// shifted by +0.5 and are drawn (and counted) through `hidden`.
class SignReductionOracle : public SamplingOracle {
 public:
  SignReductionOracle(std::unique_ptr<SamplingOracle> hidden,
                      std::uint64_t seed, ArmId real_arm = 0);

  ArmId real_arm() const { return real_; }
  ArmId fictitious_arm() const { return 1 - real_; }
  const SamplingOracle& hidden() const { return *hidden_; }

 protected:
  double reward(ArmId arm) override;
  double mean_of(ArmId arm, std::uint64_t draws) override;
  std::uint64_t below_of(ArmId arm, std::uint64_t repetitions,
                         std::uint64_t draws_each, double threshold) override;

 private:
  std::unique_ptr<SamplingOracle> hidden_;
  ArmId real_;
  std::unique_ptr<GaussianOracle> reference_;
};

struct SignOutcome {
  std::optional<Sign> sign;  // empty when the run hit its budget
  RunOutcome run;
};

// Decides the sign of the hidden arm's mean (xi = 0) by running
// Complexity-Guessing on the reduction.
SignOutcome solve_sign_xi(std::unique_ptr<SamplingOracle> hidden,
                          std::uint64_t seed, const SolverOptions& options,
                          ArmId real_arm = 0);

// Convenience overload: a unit-variance Gaussian hidden arm with the given
// mean, which must satisfy 0 < |mean| <= 0.5.
SignOutcome solve_sign_xi(double hidden_mean, std::uint64_t seed,
                          const SolverOptions& options, ArmId real_arm = 0);

struct LossEntry {
  int k = 0;
  double weight = 0.0;  // p_k
  std::optional<double> alpha;         // mean samples / 4^k
  std::optional<double> mean_samples;  // empty when any run hit the budget
};

struct LossProfile {
  std::vector<LossEntry> entries;
  double expected_loss = 0.0;  // sum p_k alpha_k over measured k
  double entropy = 0.0;        // Shannon entropy of P
  double delta = 0.0;
  bool partial = false;
};

// Solver applied to the reduction: (oracle, delta) -> outcome.
using SignSolver = InnerSolver;

struct LossOptions {
  double delta = 0.05;
  std::size_t trials = 30;
  std::uint64_t base_seed = 0;
  std::uint64_t budget = kDefaultBudget;
  ArmId real_arm = 0;
};

// For each k with weight p_k, runs `solver` on the reduction of hidden mean
// 2^-k for `trials` seeded runs and records alpha_k = mean samples / 4^k.
LossProfile measure_loss_profile(const SignSolver& solver,
                                 const std::map<int, double>& weights,
                                 const LossOptions& options);

// Uniform P over k = 1..m.
std::map<int, double> uniform_weights(int m);

std::string loss_profile_csv(const LossProfile& profile);

}  // namespace gapent

#endif  // GAPENT_SIGNXI_H_
