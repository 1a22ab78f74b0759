#include "gapent/solvers.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

#include "gapent/primitives.h"

namespace gapent {

namespace {

void validate_delta(const SolverOptions& options, const char* who) {
  const double d = options.delta;
  if (options.relaxed_delta) {
    if (!(d > 0.0 && d < 1.0)) {
      throw std::invalid_argument(
          fmt::format("{}: delta {} outside (0, 1)", who, d));
    }
  } else if (!(d > 0.0 && d <= 0.01)) {
    throw std::invalid_argument(
        fmt::format("{}: delta {} outside (0, 0.01]", who, d));
  }
}

ArmSet shuffled_arms(SamplingOracle& oracle) {
  ArmSet arms(oracle.arm_count());
  std::iota(arms.begin(), arms.end(), ArmId{0});
  std::shuffle(arms.begin(), arms.end(), oracle.rng());
  return arms;
}

// Fills the sample accounting of `out` relative to a snapshot taken at the
// start of the run.
void settle(const SamplingOracle& oracle,
            const std::vector<std::uint64_t>& start, RunOutcome& out) {
  out.per_arm_samples.resize(oracle.arm_count());
  out.total_samples = 0;
  for (ArmId a = 0; a < oracle.arm_count(); ++a) {
    out.per_arm_samples[a] = oracle.draws(a) - start[a];
    out.total_samples += out.per_arm_samples[a];
  }
}

double inv_sq(double eps) { return 1.0 / (eps * eps); }

// Common tail of a round: pick a near-best arm and estimate its mean.
double leader_estimate(SamplingOracle& oracle, const ArmSet& alive, double eps,
                       double delta_r, EventSink* sink, ArmId& leader) {
  leader = med_elim(oracle, alive, 0.125 * eps, 0.01, sink);
  const ArmId single[] = {leader};
  return unif_sampl(oracle, single, 0.125 * eps, delta_r, sink).at(leader);
}

struct PassResult {
  Verdict verdict = Verdict::kRejected;
  std::optional<ArmId> arm;
  int rounds = 0;
};

PassResult entropy_elimination_pass(SamplingOracle& oracle, ArmSet alive,
                                    int guess, double delta,
                                    EventSink* sink) {
  const double guess_h = std::pow(100.0, guess);
  const double c = round_cap_constant();
  double h_r = 0.0;
  double t_r = 0.0;
  double theta_prev = 0.3;

  for (int r = 1;; ++r) {
    RoundEvent ev{.solver = "entropy_elimination",
                  .guess = guess,
                  .round = r,
                  .eps = std::ldexp(1.0, -r),
                  .set_size = alive.size(),
                  .complexity_estimate = h_r};
    const std::uint64_t before = oracle.total_draws();
    if (alive.size() == 1) {
      if (sink) {
        ev.next_set_size = 1;
        ev.budget_estimate = t_r;
        ev.status = "return";
        sink->on_round(ev);
      }
      return {Verdict::kArm, alive.front(), r};
    }
    const double eps = ev.eps;
    const double delta_r =
        delta / (50.0 * r * r * static_cast<double>(guess) * guess);
    const double load = static_cast<double>(alive.size()) * inv_sq(eps);
    const double delta_elim = 4.0 * load / guess_h * delta * delta;
    // The log factor turns negative once load*delta exceeds the guess;
    // clamping at 1 keeps T monotone and only hastens rejection.
    const double t_next =
        t_r + load * std::max(std::log(guess_h / (load * delta)), 1.0);
    ev.budget_estimate = t_next;

    if (h_r + 4.0 * load >= guess_h || t_next >= 100.0 * guess_h) {
      if (sink) {
        ev.next_set_size = alive.size();
        ev.status = "reject";
        sink->on_round(ev);
      }
      return {Verdict::kRejected, std::nullopt, r};
    }

    ArmId leader = 0;
    const double mu = leader_estimate(oracle, alive, eps, delta_r, sink, leader);
    const double theta = theta_prev + 0.1 / std::pow(c * guess - r, 2.0);
    const bool verdict = frac_test(oracle, alive, mu - 1.75 * eps,
                                   mu - 1.125 * eps, theta_prev, theta,
                                   delta_r, sink);
    if (verdict) {
      h_r += 4.0 * load;
      alive = elimination(oracle, alive, mu - 0.75 * eps, mu - 0.625 * eps,
                          delta_elim, sink);
      if (alive.empty()) alive = {leader};
    }
    if (sink) {
      ev.frac_verdict = verdict;
      ev.next_set_size = alive.size();
      ev.theta_lo = theta_prev;
      ev.theta_hi = theta;
      ev.draws = oracle.total_draws() - before;
      ev.status = "continue";
      sink->on_round(ev);
    }
    t_r = t_next;
    theta_prev = theta;
  }
}

template <typename Body>
RunOutcome guarded_run(SamplingOracle& oracle, const SolverOptions& options,
                       Body&& body) {
  if (options.budget) oracle.set_budget(*options.budget);
  const std::vector<std::uint64_t> start = oracle.draw_counts();
  RunOutcome out;
  try {
    body(out);
  } catch (const BudgetExceeded&) {
    out.verdict = Verdict::kBudgetExceeded;
    out.arm.reset();
    out.accepted_guess.reset();
  }
  settle(oracle, start, out);
  return out;
}

}  // namespace

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kArm: return "arm";
    case Verdict::kRejected: return "rejected";
    case Verdict::kBudgetExceeded: return "budget_exceeded";
  }
  return "unknown";
}

double round_cap_constant() { return std::log(100.0) / std::log(4.0); }

RunOutcome known_complexity(SamplingOracle& oracle, double complexity,
                            const SolverOptions& options) {
  validate_delta(options, "known_complexity");
  if (!(complexity > 0.0)) {
    throw std::invalid_argument("known_complexity: H must be positive");
  }
  const double delta = options.delta;
  EventSink* sink = options.sink;

  return guarded_run(oracle, options, [&](RunOutcome& out) {
    ArmSet alive = shuffled_arms(oracle);
    const double guess_h = 4096.0 * complexity;
    for (int r = 1;; ++r) {
      out.rounds_executed = r;
      RoundEvent ev{.solver = "known_complexity",
                    .round = r,
                    .eps = std::ldexp(1.0, -r),
                    .set_size = alive.size()};
      if (alive.size() == 1) {
        out.verdict = Verdict::kArm;
        out.arm = alive.front();
        if (sink) {
          ev.next_set_size = 1;
          ev.status = "return";
          sink->on_round(ev);
        }
        return;
      }
      const std::uint64_t before = oracle.total_draws();
      const double eps = ev.eps;
      const double delta_r = delta / (10.0 * r * r);
      ArmId leader = 0;
      const double mu =
          leader_estimate(oracle, alive, eps, delta_r, sink, leader);
      const bool verdict = frac_test(oracle, alive, mu - 1.75 * eps,
                                     mu - 1.125 * eps, 0.3, 0.5, delta_r, sink);
      if (verdict) {
        const double load = static_cast<double>(alive.size()) * inv_sq(eps);
        const double delta_elim = std::min(load / guess_h * delta, delta);
        alive = elimination(oracle, alive, mu - 0.75 * eps, mu - 0.625 * eps,
                            delta_elim, sink);
        if (alive.empty()) alive = {leader};
      }
      if (sink) {
        ev.frac_verdict = verdict;
        ev.next_set_size = alive.size();
        ev.theta_lo = 0.3;
        ev.theta_hi = 0.5;
        ev.draws = oracle.total_draws() - before;
        ev.status = "continue";
        sink->on_round(ev);
      }
    }
  });
}

RunOutcome entropy_elimination(SamplingOracle& oracle, int guess,
                               const SolverOptions& options) {
  validate_delta(options, "entropy_elimination");
  if (guess < 1) {
    throw std::invalid_argument("entropy_elimination: guess index must be >= 1");
  }
  return guarded_run(oracle, options, [&](RunOutcome& out) {
    const PassResult pass = entropy_elimination_pass(
        oracle, shuffled_arms(oracle), guess, options.delta, options.sink);
    out.verdict = pass.verdict;
    out.arm = pass.arm;
    out.rounds_executed = pass.rounds;
  });
}

RunOutcome complexity_guessing(SamplingOracle& oracle,
                               const SolverOptions& options) {
  validate_delta(options, "complexity_guessing");
  return guarded_run(oracle, options, [&](RunOutcome& out) {
    const ArmSet arms = shuffled_arms(oracle);
    for (int t = 1;; ++t) {
      const PassResult pass =
          entropy_elimination_pass(oracle, arms, t, options.delta, options.sink);
      out.rounds_executed = pass.rounds;
      if (pass.verdict == Verdict::kArm) {
        out.verdict = Verdict::kArm;
        out.arm = pass.arm;
        out.accepted_guess = t;
        return;
      }
    }
  });
}

RunOutcome baseline_successive_elimination(SamplingOracle& oracle,
                                           const SolverOptions& options) {
  if (!(options.delta > 0.0 && options.delta < 1.0)) {
    throw std::invalid_argument("baseline: delta outside (0, 1)");
  }
  const double delta = options.delta;
  const double n = static_cast<double>(oracle.arm_count());
  return guarded_run(oracle, options, [&](RunOutcome& out) {
    ArmSet alive = shuffled_arms(oracle);
    std::vector<double> sum(oracle.arm_count(), 0.0);
    for (int r = 1;; ++r) {
      out.rounds_executed = r;
      for (ArmId a : alive) sum[a] += oracle.draw(a);
      const double rd = r;
      const double radius = std::sqrt(2.0 * std::log(4.0 * n * rd * rd / delta) / rd);
      double best_lower = -HUGE_VAL;
      for (ArmId a : alive) best_lower = std::max(best_lower, sum[a] / rd - radius);
      std::erase_if(alive, [&](ArmId a) { return sum[a] / rd + radius < best_lower; });
      if (alive.size() == 1) {
        out.verdict = Verdict::kArm;
        out.arm = alive.front();
        return;
      }
    }
  });
}

std::vector<int> copies_advanced(std::uint64_t iteration, int max_copies) {
  std::vector<int> ks;
  for (int k = 1; k <= max_copies && k <= 64; ++k) {
    const std::uint64_t period = std::uint64_t{1} << (k - 1);
    if (iteration % period != 0) break;
    ks.push_back(k);
  }
  return ks;
}

ScheduleResult resolve_schedule(
    std::span<const std::optional<std::uint64_t>> needs) {
  using u128 = unsigned __int128;
  ScheduleResult res;
  res.draws.assign(needs.size(), 0);
  for (std::size_t i = 0; i < needs.size(); ++i) {
    if (!needs[i]) continue;
    const u128 stop = static_cast<u128>(*needs[i]) << i;
    if (!res.winner || stop < res.iteration) {
      res.winner = static_cast<int>(i) + 1;
      res.iteration = stop;
    }
  }
  if (!res.winner) return res;
  const std::size_t w = static_cast<std::size_t>(*res.winner) - 1;
  for (std::size_t i = 0; i < needs.size(); ++i) {
    // Within the final iteration copies are advanced in increasing k, so
    // copies before the winner already got their draw.
    const u128 iters = i <= w ? res.iteration : res.iteration - 1;
    res.draws[i] = static_cast<std::uint64_t>(iters >> i);
  }
  return res;
}

RunOutcome parallel_simulation(const OracleFactory& make_oracle,
                               const InnerSolver& inner,
                               const ParallelOptions& options) {
  if (!(options.delta > 0.0 && options.delta < 1.0)) {
    throw std::invalid_argument("parallel_simulation: delta outside (0, 1)");
  }
  if (options.max_copies < 1 || options.max_copies > 62) {
    throw std::invalid_argument("parallel_simulation: max_copies in [1, 62]");
  }
  using u128 = unsigned __int128;

  auto seed_of = [&](int k) {
    return k == 1 ? options.seed : derive_seed(options.seed, k);
  };
  auto run_copy = [&](int k, std::uint64_t cap) {
    auto oracle = make_oracle(seed_of(k));
    oracle->set_budget(cap);
    RunOutcome out = inner(*oracle, std::ldexp(options.delta, -k));
    return std::pair{std::move(oracle), std::move(out)};
  };

  // First pass: find every copy that can still finish before the current
  // leader, capping each at the draws it could receive by then.
  std::vector<std::optional<std::uint64_t>> needs;
  std::vector<RunOutcome> results;
  std::optional<u128> best;
  for (int k = 1; k <= options.max_copies; ++k) {
    const u128 period = u128{1} << (k - 1);
    if (best && period >= *best) break;
    std::uint64_t cap = options.budget;
    if (best) {
      const u128 limit = (*best + period - 1) / period - 1;
      cap = static_cast<std::uint64_t>(std::min<u128>(limit, cap));
    }
    auto [oracle, out] = run_copy(k, cap);
    if (out.verdict != Verdict::kBudgetExceeded) {
      needs.emplace_back(out.total_samples);
      const u128 stop = static_cast<u128>(out.total_samples) * period;
      if (!best || stop < *best) best = stop;
    } else {
      needs.emplace_back(std::nullopt);
    }
    results.push_back(std::move(out));
  }

  const ScheduleResult sched = resolve_schedule(needs);
  RunOutcome out;
  if (!sched.winner) {
    out.verdict = Verdict::kBudgetExceeded;
    return out;
  }
  const std::uint64_t total = std::accumulate(
      sched.draws.begin(), sched.draws.end(), std::uint64_t{0});
  if (total > options.budget) {
    out.verdict = Verdict::kBudgetExceeded;
    out.total_samples = options.budget;
    return out;
  }

  const RunOutcome& win = results[*sched.winner - 1];
  out.verdict = win.verdict;
  out.arm = win.arm;
  out.rounds_executed = win.rounds_executed;
  out.accepted_guess = win.accepted_guess;
  out.winning_copy = sched.winner;
  out.per_arm_samples.assign(win.per_arm_samples.size(), 0);
  // Suspended copies are replayed up to the draw at which they stopped.
  for (std::size_t i = 0; i < sched.draws.size(); ++i) {
    const int k = static_cast<int>(i) + 1;
    if (sched.draws[i] == 0) continue;
    std::vector<std::uint64_t> counts;
    if (k == *sched.winner) {
      counts = win.per_arm_samples;
    } else {
      auto [oracle, partial] = run_copy(k, sched.draws[i]);
      counts = partial.per_arm_samples;
    }
    for (std::size_t a = 0; a < counts.size(); ++a) {
      out.per_arm_samples[a] += counts[a];
    }
  }
  out.total_samples = std::accumulate(out.per_arm_samples.begin(),
                                      out.per_arm_samples.end(),
                                      std::uint64_t{0});
  return out;
}

}  // namespace gapent
