#ifndef GAPENT_ORACLE_H_
#define GAPENT_ORACLE_H_

#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "gapent/instance.h"

namespace gapent {

// Hard stop used when no explicit sample cap is given. The algorithms'
// constants put ordinary runs at 1e10..1e13 draws.
inline constexpr std::uint64_t kDefaultBudget = 100'000'000'000'000'000ULL;

// Thrown by an oracle when a request would exceed its draw budget. The
// draws that still fit are charged before the throw.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded() : std::runtime_error("sample budget exceeded") {}
};

// The only channel through which algorithms see rewards. Every reward drawn
// is charged to exactly one arm. The oracle also owns the random stream used
// for algorithm-side randomness (arm shuffles, Frac-Test picks), so a whole
// run replays from one seed.
class SamplingOracle {
 public:
  SamplingOracle(std::size_t arm_count, std::uint64_t seed);
  virtual ~SamplingOracle() = default;

  SamplingOracle(const SamplingOracle&) = delete;
  SamplingOracle& operator=(const SamplingOracle&) = delete;

  std::size_t arm_count() const { return counts_.size(); }
  std::uint64_t seed() const { return seed_; }

  // One reward from `arm`.
  double draw(ArmId arm);

  // Average of `draws` fresh rewards from `arm`.
  double sample_mean(ArmId arm, std::uint64_t draws);

  // Forms `repetitions` independent empirical means, each over
  // `draws_each` fresh rewards of `arm`, and returns how many fall strictly
  // below `threshold`.
  std::uint64_t count_means_below(ArmId arm, std::uint64_t repetitions,
                                  std::uint64_t draws_each, double threshold);

  // Throws BudgetExceeded (charging what is left to `arm`) when `draws`
  // more rewards would not fit. `draws` may exceed the integer range.
  void require(ArmId arm, double draws);

  std::uint64_t draws(ArmId arm) const { return counts_.at(arm); }
  std::uint64_t total_draws() const { return total_; }
  const std::vector<std::uint64_t>& draw_counts() const { return counts_; }

  std::uint64_t budget() const { return budget_; }
  void set_budget(std::uint64_t budget) { budget_ = budget; }
  std::uint64_t remaining() const {
    return budget_ > total_ ? budget_ - total_ : 0;
  }

  std::mt19937_64& rng() { return rng_; }

 protected:
  virtual double reward(ArmId arm) = 0;
  // Defaults loop over reward(); subclasses may answer in closed form as
  // long as the result has the same distribution.
  virtual double mean_of(ArmId arm, std::uint64_t draws);
  virtual std::uint64_t below_of(ArmId arm, std::uint64_t repetitions,
                                 std::uint64_t draws_each, double threshold);

 private:
  void charge(ArmId arm, std::uint64_t draws);
  void check_arm(ArmId arm) const;

  std::uint64_t seed_;
  std::mt19937_64 rng_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
  std::uint64_t budget_ = kDefaultBudget;
};

// Unit-variance Gaussian arms.
class GaussianOracle : public SamplingOracle {
 public:
  enum class Mode {
    kBatched,  // closed-form sample means and threshold counts
    kPerDraw,  // one normal variate per reward
  };

  GaussianOracle(std::vector<double> means, std::uint64_t seed,
                 Mode mode = Mode::kBatched);
  GaussianOracle(const Instance& instance, std::uint64_t seed,
                 Mode mode = Mode::kBatched);

  const std::vector<double>& means() const { return means_; }

 protected:
  double reward(ArmId arm) override;
  double mean_of(ArmId arm, std::uint64_t draws) override;
  std::uint64_t below_of(ArmId arm, std::uint64_t repetitions,
                         std::uint64_t draws_each, double threshold) override;

 private:
  std::vector<double> means_;
  Mode mode_;
  std::normal_distribution<double> normal_;
};

// Variance-0 test double: every reward equals the arm's mean.
class DeterministicOracle : public SamplingOracle {
 public:
  DeterministicOracle(std::vector<double> values, std::uint64_t seed = 0);

 protected:
  double reward(ArmId arm) override { return values_[arm]; }
  double mean_of(ArmId arm, std::uint64_t) override { return values_[arm]; }
  std::uint64_t below_of(ArmId arm, std::uint64_t repetitions, std::uint64_t,
                         double threshold) override {
    return values_[arm] < threshold ? repetitions : 0;
  }

 private:
  std::vector<double> values_;
};

// Derives the seed of an independent stream (e.g. a parallel-simulation
// copy) from a base seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace gapent

#endif  // GAPENT_ORACLE_H_
