#include "gapent/oracle.h"

#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace gapent {

SamplingOracle::SamplingOracle(std::size_t arm_count, std::uint64_t seed)
    : seed_(seed), rng_(seed), counts_(arm_count, 0) {}

void SamplingOracle::check_arm(ArmId arm) const {
  if (arm >= counts_.size()) {
    throw std::out_of_range(
        fmt::format("arm {} out of range ({} arms)", arm, counts_.size()));
  }
}

void SamplingOracle::require(ArmId arm, double draws) {
  check_arm(arm);
  if (draws > static_cast<double>(remaining())) {
    const std::uint64_t left = remaining();
    counts_[arm] += left;
    total_ += left;
    throw BudgetExceeded();
  }
}

void SamplingOracle::charge(ArmId arm, std::uint64_t draws) {
  check_arm(arm);
  if (draws > remaining()) {
    const std::uint64_t left = remaining();
    counts_[arm] += left;
    total_ += left;
    throw BudgetExceeded();
  }
  counts_[arm] += draws;
  total_ += draws;
}

double SamplingOracle::draw(ArmId arm) {
  charge(arm, 1);
  return reward(arm);
}

double SamplingOracle::sample_mean(ArmId arm, std::uint64_t draws) {
  if (draws == 0) {
    throw std::invalid_argument("sample_mean needs at least one draw");
  }
  charge(arm, draws);
  return mean_of(arm, draws);
}

std::uint64_t SamplingOracle::count_means_below(ArmId arm,
                                                std::uint64_t repetitions,
                                                std::uint64_t draws_each,
                                                double threshold) {
  if (repetitions == 0) return 0;
  if (draws_each == 0) {
    throw std::invalid_argument("count_means_below needs draws_each >= 1");
  }
  require(arm, static_cast<double>(repetitions) *
                   static_cast<double>(draws_each));
  charge(arm, repetitions * draws_each);
  return below_of(arm, repetitions, draws_each, threshold);
}

double SamplingOracle::mean_of(ArmId arm, std::uint64_t draws) {
  double sum = 0.0;
  for (std::uint64_t i = 0; i < draws; ++i) sum += reward(arm);
  return sum / static_cast<double>(draws);
}

std::uint64_t SamplingOracle::below_of(ArmId arm, std::uint64_t repetitions,
                                       std::uint64_t draws_each,
                                       double threshold) {
  std::uint64_t below = 0;
  for (std::uint64_t r = 0; r < repetitions; ++r) {
    if (mean_of(arm, draws_each) < threshold) ++below;
  }
  return below;
}

GaussianOracle::GaussianOracle(std::vector<double> means, std::uint64_t seed,
                               Mode mode)
    : SamplingOracle(means.size(), seed), means_(std::move(means)),
      mode_(mode) {}

GaussianOracle::GaussianOracle(const Instance& instance, std::uint64_t seed,
                               Mode mode)
    : GaussianOracle(instance.means(), seed, mode) {}

double GaussianOracle::reward(ArmId arm) {
  return means_[arm] + normal_(rng());
}

double GaussianOracle::mean_of(ArmId arm, std::uint64_t draws) {
  if (mode_ == Mode::kPerDraw) return SamplingOracle::mean_of(arm, draws);
  // The mean of k unit-variance Gaussians is N(mu, 1/k).
  return means_[arm] + normal_(rng()) / std::sqrt(static_cast<double>(draws));
}

std::uint64_t GaussianOracle::below_of(ArmId arm, std::uint64_t repetitions,
                                       std::uint64_t draws_each,
                                       double threshold) {
  if (mode_ == Mode::kPerDraw) {
    return SamplingOracle::below_of(arm, repetitions, draws_each, threshold);
  }
  // Each empirical mean falls below the threshold independently with
  // probability Phi((threshold - mu) * sqrt(k)).
  const double z =
      (threshold - means_[arm]) * std::sqrt(static_cast<double>(draws_each));
  const double p = 0.5 * std::erfc(-z / std::sqrt(2.0));
  if (p <= 0.0) return 0;
  if (p >= 1.0) return repetitions;
  std::binomial_distribution<std::uint64_t> binom(repetitions, p);
  return binom(rng());
}

DeterministicOracle::DeterministicOracle(std::vector<double> values,
                                         std::uint64_t seed)
    : SamplingOracle(values.size(), seed), values_(std::move(values)) {}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  // splitmix64 finalizer over a stream-dependent offset.
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace gapent
