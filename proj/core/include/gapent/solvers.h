#ifndef GAPENT_SOLVERS_H_
#define GAPENT_SOLVERS_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gapent/events.h"
#include "gapent/oracle.h"

namespace gapent {

enum class Verdict { kArm, kRejected, kBudgetExceeded };

std::string_view verdict_name(Verdict v);

struct RunOutcome {
  Verdict verdict = Verdict::kBudgetExceeded;
  std::optional<ArmId> arm;
  std::uint64_t total_samples = 0;
  std::vector<std::uint64_t> per_arm_samples;
  int rounds_executed = 0;
  std::optional<int> accepted_guess;  // Complexity-Guessing only
  std::optional<int> winning_copy;    // parallel simulation only

  bool operator==(const RunOutcome&) const = default;
};

struct SolverOptions {
  double delta = 0.01;
  // Absolute cap on the oracle's total draws; unset keeps the oracle's own.
  std::optional<std::uint64_t> budget;
  // The guarantees are stated for delta <= 0.01. Relaxed mode accepts any
  // delta in (0, 1) for trend experiments.
  bool relaxed_delta = false;
  EventSink* sink = nullptr;
};

// log_4 100, the round-cap constant of Entropy-Elimination.
double round_cap_constant();

// Known-Complexity: elimination rounds with confidence split by the supplied
// instance complexity H.
RunOutcome known_complexity(SamplingOracle& oracle, double complexity,
                            const SolverOptions& options);

// One Entropy-Elimination pass for the guess H_t = 100^t. Returns the
// surviving arm or kRejected.
RunOutcome entropy_elimination(SamplingOracle& oracle, int guess,
                               const SolverOptions& options);

// Runs Entropy-Elimination for t = 1, 2, ... until a guess is accepted.
RunOutcome complexity_guessing(SamplingOracle& oracle,
                               const SolverOptions& options);

// Classical successive elimination with radius sqrt(2 ln(4 n r^2/delta)/r).
RunOutcome baseline_successive_elimination(SamplingOracle& oracle,
                                           const SolverOptions& options);

// Copy k of the parallel simulation at confidence delta_k. The copy owns
// `oracle`, which carries that copy's draw cap.
using InnerSolver =
    std::function<RunOutcome(SamplingOracle& oracle, double delta)>;
using OracleFactory =
    std::function<std::unique_ptr<SamplingOracle>(std::uint64_t seed)>;

struct ParallelOptions {
  double delta = 0.01;
  std::uint64_t seed = 0;  // copy 1 uses it verbatim, copy k>1 a derived one
  std::uint64_t budget = kDefaultBudget;  // over all copies
  int max_copies = 62;
};

// Iteration t advances copy k by one draw whenever 2^(k-1) divides t.
std::vector<int> copies_advanced(std::uint64_t iteration, int max_copies);

// Draw accounting of the interleaved schedule. `needs[k-1]` is the number
// of draws copy k consumes before it terminates (nullopt: not within the
// examined horizon).
struct ScheduleResult {
  std::optional<int> winner;         // 1-based copy index
  unsigned __int128 iteration = 0;   // iteration in which the winner stops
  std::vector<std::uint64_t> draws;  // per copy, at termination
};
ScheduleResult resolve_schedule(
    std::span<const std::optional<std::uint64_t>> needs);

// Interleaves copies A_k at delta/2^k and returns the first to terminate.
// Each copy is a deterministic function of its oracle, so suspending it
// after d draws is realised by re-running it with a cap of d draws.
RunOutcome parallel_simulation(const OracleFactory& make_oracle,
                               const InnerSolver& inner,
                               const ParallelOptions& options);

}  // namespace gapent

#endif  // GAPENT_SOLVERS_H_
