#include "gapent/primitives.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include <fmt/format.h>

namespace gapent {

namespace {

void require_set(std::span<const ArmId> arms, const char* who) {
  if (arms.empty()) {
    throw std::invalid_argument(fmt::format("{}: empty arm set", who));
  }
}

void require_confidence(double delta, const char* who) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument(
        fmt::format("{}: confidence {} outside (0, 1)", who, delta));
  }
}

std::uint64_t to_count(double x) { return static_cast<std::uint64_t>(x); }

}  // namespace

double round_up_count(double x) {
  const double nearest = std::round(x);
  if (std::abs(x - nearest) <= 1e-12 * std::max(1.0, std::abs(x))) {
    return nearest;
  }
  return std::ceil(x);
}

double unif_sampl_draws(double eps, double delta) {
  return round_up_count(2.0 / (eps * eps) * std::log(2.0 / delta));
}

double frac_test_iterations(double theta_gap, double delta) {
  const double step = theta_gap / 6.0;
  return round_up_count(std::log(2.0 / delta) / (step * step));
}

double med_elim_round_draws(double eps_l, double delta_l) {
  const double half = eps_l / 2.0;
  return round_up_count(2.0 / (half * half) * std::log(3.0 / delta_l));
}

EstimateMap unif_sampl(SamplingOracle& oracle, std::span<const ArmId> arms,
                       double eps, double delta, EventSink* sink) {
  require_set(arms, "unif_sampl");
  require_confidence(delta, "unif_sampl");
  if (!(eps > 0.0)) throw std::invalid_argument("unif_sampl: eps must be > 0");

  const double per_arm = unif_sampl_draws(eps, delta);
  oracle.require(arms.front(), per_arm * static_cast<double>(arms.size()));
  EstimateMap est;
  for (ArmId a : arms) est[a] = oracle.sample_mean(a, to_count(per_arm));

  if (sink) {
    sink->on_primitive({.primitive = Primitive::kUnifSampl,
                        .set_size = arms.size(),
                        .draws = to_count(per_arm) * arms.size()});
  }
  return est;
}

ArmId med_elim(SamplingOracle& oracle, std::span<const ArmId> arms, double eps,
               double delta, EventSink* sink) {
  require_set(arms, "med_elim");
  require_confidence(delta, "med_elim");
  if (!(eps > 0.0)) throw std::invalid_argument("med_elim: eps must be > 0");

  const std::uint64_t before = oracle.total_draws();
  ArmSet alive(arms.begin(), arms.end());
  double eps_l = eps / 4.0;
  double delta_l = delta / 2.0;
  std::vector<std::pair<double, ArmId>> ranked;
  while (alive.size() > 1) {
    const double per_arm = med_elim_round_draws(eps_l, delta_l);
    oracle.require(alive.front(), per_arm * static_cast<double>(alive.size()));
    ranked.clear();
    for (ArmId a : alive) {
      ranked.emplace_back(oracle.sample_mean(a, to_count(per_arm)), a);
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) {
      return x.first != y.first ? x.first > y.first : x.second < y.second;
    });
    const std::size_t keep = (alive.size() + 1) / 2;
    alive.clear();
    for (std::size_t i = 0; i < keep; ++i) alive.push_back(ranked[i].second);
    eps_l *= 0.75;
    delta_l /= 2.0;
  }

  if (sink) {
    sink->on_primitive({.primitive = Primitive::kMedElim,
                        .set_size = arms.size(),
                        .draws = oracle.total_draws() - before});
  }
  return alive.front();
}

bool frac_test(SamplingOracle& oracle, std::span<const ArmId> arms,
               double c_lo, double c_hi, double theta_lo, double theta_hi,
               double delta, EventSink* sink) {
  require_set(arms, "frac_test");
  require_confidence(delta, "frac_test");
  if (!(c_lo < c_hi)) {
    throw std::invalid_argument(
        fmt::format("frac_test: c_lo {} must be < c_hi {}", c_lo, c_hi));
  }
  if (!(theta_lo < theta_hi)) {
    throw std::invalid_argument(fmt::format(
        "frac_test: theta_lo {} must be < theta_hi {}", theta_lo, theta_hi));
  }

  const double eps = c_hi - c_lo;
  const double gap = theta_hi - theta_lo;
  const double iterations = frac_test_iterations(gap, delta);
  const double per_pick = unif_sampl_draws(eps / 2.0, gap / 6.0);
  const double mid = (c_lo + c_hi) / 2.0;

  const std::uint64_t before = oracle.total_draws();
  oracle.require(arms.front(), iterations * per_pick);

  // Uniform picks with replacement, tallied per arm: a multinomial split
  // drawn as a chain of binomials on the oracle's stream.
  std::uint64_t left = to_count(iterations);
  std::uint64_t below = 0;
  for (std::size_t j = 0; j < arms.size() && left > 0; ++j) {
    std::uint64_t picks = left;
    if (j + 1 < arms.size()) {
      std::binomial_distribution<std::uint64_t> split(
          left, 1.0 / static_cast<double>(arms.size() - j));
      picks = split(oracle.rng());
    }
    left -= picks;
    below += oracle.count_means_below(arms[j], picks, to_count(per_pick), mid);
  }
  const bool verdict = static_cast<double>(below) / iterations >
                       (theta_lo + theta_hi) / 2.0;

  if (sink) {
    sink->on_primitive({.primitive = Primitive::kFracTest,
                        .set_size = arms.size(),
                        .draws = oracle.total_draws() - before,
                        .verdict = verdict});
  }
  return verdict;
}

ArmSet elimination(SamplingOracle& oracle, std::span<const ArmId> arms,
                   double d_lo, double d_hi, double delta, EventSink* sink) {
  require_set(arms, "elimination");
  require_confidence(delta, "elimination");
  if (!(d_lo < d_hi)) {
    throw std::invalid_argument(
        fmt::format("elimination: d_lo {} must be < d_hi {}", d_lo, d_hi));
  }

  const std::uint64_t before = oracle.total_draws();
  const double d_mid = (d_lo + d_hi) / 2.0;
  const double keep_above = (d_mid + d_hi) / 2.0;
  ArmSet alive(arms.begin(), arms.end());
  for (int r = 1; !alive.empty(); ++r) {
    const double delta_r = delta / (10.0 * std::ldexp(1.0, r));
    if (!frac_test(oracle, alive, d_lo, d_mid, 0.05, 0.1, delta_r, sink)) {
      break;
    }
    const EstimateMap est =
        unif_sampl(oracle, alive, (d_hi - d_mid) / 2.0, delta_r, sink);
    ArmSet next;
    for (ArmId a : alive) {
      if (est.at(a) > keep_above) next.push_back(a);
    }
    alive = std::move(next);
  }

  if (sink) {
    sink->on_primitive({.primitive = Primitive::kElimination,
                        .set_size = arms.size(),
                        .draws = oracle.total_draws() - before,
                        .result_size = alive.size()});
  }
  return alive;
}

}  // namespace gapent
