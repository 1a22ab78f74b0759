#include "gapent/signxi.h"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace gapent {

SignReductionOracle::SignReductionOracle(std::unique_ptr<SamplingOracle> hidden,
                                         std::uint64_t seed, ArmId real_arm)
    : SamplingOracle(2, seed), hidden_(std::move(hidden)), real_(real_arm) {
  if (!hidden_ || hidden_->arm_count() != 1) {
    throw std::invalid_argument("sign reduction needs a single hidden arm");
  }
  if (real_arm > 1) throw std::invalid_argument("real arm must be 0 or 1");
  // The reference arm lives on this oracle's stream via its own generator
  // seeded from it, so a run replays from `seed`.
  reference_ = std::make_unique<GaussianOracle>(
      std::vector<double>{kSignOffset}, rng()());
  reference_->set_budget(~std::uint64_t{0});
  hidden_->set_budget(~std::uint64_t{0});
}

double SignReductionOracle::reward(ArmId arm) {
  if (arm == real_) return kSignOffset + hidden_->draw(0);
  return reference_->draw(0);
}

double SignReductionOracle::mean_of(ArmId arm, std::uint64_t draws) {
  if (arm == real_) return kSignOffset + hidden_->sample_mean(0, draws);
  return reference_->sample_mean(0, draws);
}

std::uint64_t SignReductionOracle::below_of(ArmId arm,
                                            std::uint64_t repetitions,
                                            std::uint64_t draws_each,
                                            double threshold) {
  if (arm == real_) {
    return hidden_->count_means_below(0, repetitions, draws_each,
                                      threshold - kSignOffset);
  }
  return reference_->count_means_below(0, repetitions, draws_each, threshold);
}

SignOutcome solve_sign_xi(std::unique_ptr<SamplingOracle> hidden,
                          std::uint64_t seed, const SolverOptions& options,
                          ArmId real_arm) {
  SignReductionOracle oracle(std::move(hidden), seed, real_arm);
  SignOutcome out;
  out.run = complexity_guessing(oracle, options);
  if (out.run.verdict == Verdict::kArm) {
    out.sign = *out.run.arm == oracle.real_arm() ? Sign::kPositive
                                                 : Sign::kNegative;
  }
  return out;
}

SignOutcome solve_sign_xi(double hidden_mean, std::uint64_t seed,
                          const SolverOptions& options, ArmId real_arm) {
  if (!(std::abs(hidden_mean) > 0.0 && std::abs(hidden_mean) <= 0.5)) {
    throw std::invalid_argument(fmt::format(
        "hidden mean {} must satisfy 0 < |mean| <= 0.5", hidden_mean));
  }
  auto hidden = std::make_unique<GaussianOracle>(
      std::vector<double>{hidden_mean}, derive_seed(seed, 0xA11CE));
  return solve_sign_xi(std::move(hidden), seed, options, real_arm);
}

std::map<int, double> uniform_weights(int m) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  std::map<int, double> w;
  for (int k = 1; k <= m; ++k) w[k] = 1.0 / m;
  return w;
}

LossProfile measure_loss_profile(const SignSolver& solver,
                                 const std::map<int, double>& weights,
                                 const LossOptions& options) {
  if (weights.empty()) throw std::invalid_argument("empty distribution P");
  if (options.trials == 0) throw std::invalid_argument("trials must be >= 1");
  double total_weight = 0.0;
  for (const auto& [k, p] : weights) {
    if (k < 1 || !(p > 0.0)) {
      throw std::invalid_argument(fmt::format("invalid weight p_{} = {}", k, p));
    }
    total_weight += p;
  }
  if (std::abs(total_weight - 1.0) > 1e-9) {
    throw std::invalid_argument("weights must sum to 1");
  }

  LossProfile prof;
  prof.delta = options.delta;
  for (const auto& [k, p] : weights) {
    prof.entropy += p * std::log(1.0 / p);
    LossEntry entry{.k = k, .weight = p};
    const double hidden_mean = std::ldexp(1.0, -k);
    double sum = 0.0;
    bool complete = true;
    for (std::size_t i = 0; i < options.trials; ++i) {
      const std::uint64_t seed = options.base_seed + i;
      auto hidden = std::make_unique<GaussianOracle>(
          std::vector<double>{hidden_mean}, derive_seed(seed, 0xA11CE));
      SignReductionOracle oracle(std::move(hidden), seed, options.real_arm);
      oracle.set_budget(options.budget);
      const RunOutcome run = solver(oracle, options.delta);
      if (run.verdict != Verdict::kArm) {
        complete = false;
        break;
      }
      sum += static_cast<double>(run.total_samples);
    }
    if (complete) {
      entry.mean_samples = sum / static_cast<double>(options.trials);
      entry.alpha = *entry.mean_samples / std::ldexp(1.0, 2 * k);
      prof.expected_loss += p * *entry.alpha;
    } else {
      prof.partial = true;
    }
    prof.entries.push_back(entry);
  }
  return prof;
}

std::string loss_profile_csv(const LossProfile& prof) {
  std::string out = "k,p_k,alpha_k,mean_samples\n";
  for (const auto& e : prof.entries) {
    out += fmt::format("{},{:.17g},{},{}\n", e.k, e.weight,
                       e.alpha ? fmt::format("{:.17g}", *e.alpha) : "missing",
                       e.mean_samples ? fmt::format("{:.17g}", *e.mean_samples)
                                      : "missing");
  }
  out += "expected_loss,ent_P,ln_inv_delta\n";
  out += fmt::format("{:.17g},{:.17g},{:.17g}\n", prof.expected_loss,
                     prof.entropy, std::log(1.0 / prof.delta));
  return out;
}

}  // namespace gapent
