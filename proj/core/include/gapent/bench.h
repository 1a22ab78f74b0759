#ifndef GAPENT_BENCH_H_
#define GAPENT_BENCH_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gapent/instance.h"
#include "gapent/solvers.h"

namespace gapent {

enum class Algorithm { kKnown, kGuess, kParallel, kBaseline };

Algorithm parse_algorithm(std::string_view name);
std::string_view algorithm_name(Algorithm algo);

struct RunConfig {
  std::optional<std::uint64_t> budget;
  bool relaxed_delta = false;
  EventSink* sink = nullptr;
};

// One seeded run of `algo` on a fresh Gaussian oracle. `known` is given
// H(I) from the instance profile.
RunOutcome run_once(Algorithm algo, const Instance& instance, double delta,
                    std::uint64_t seed, const RunConfig& config = {});

struct TrialReport {
  std::string algorithm;
  std::string instance_id;
  std::size_t n = 0;
  double delta = 0.0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  std::size_t error_count = 0;
  std::size_t budget_exceeded = 0;
  double empirical_error = 0.0;  // error_count / trials
  double mean_samples = 0.0;
  double median_samples = 0.0;
  double p95_samples = 0.0;
  std::optional<double> mean_accepted_guess;
  double conjectured_bound = 0.0;
  double ratio = 0.0;  // mean_samples / conjectured_bound
  std::vector<std::uint64_t> samples;  // per trial, in seed order

  bool operator==(const TrialReport&) const = default;
};

struct TrialConfig {
  std::optional<std::uint64_t> budget;
  bool relaxed_delta = true;
  unsigned threads = 0;  // 0: hardware concurrency
};

// Trial i runs with seed base_seed + i. Budget-exceeded trials are counted
// separately and never as answers.
TrialReport run_trials(Algorithm algo, const Instance& instance, double delta,
                       std::size_t trials, std::uint64_t base_seed,
                       const TrialConfig& config = {});

std::string trial_csv_header();
std::string trial_csv_row(const TrialReport& report);
// Appends one row, writing the header first when the file is new or empty.
void append_trial_csv(const std::string& path, const TrialReport& report);

enum class InstanceKind { kDiscreteRandom, kTwoArm, kEqualHVaryingEnt };

InstanceKind parse_instance_kind(std::string_view name);

struct GenerateParams {
  std::size_t count = 5;            // discrete-random: instances to emit
  int k_max = 3;                    // largest group index (min gap 2^-k_max)
  std::size_t max_per_group = 3;    // discrete-random: arms per group
  std::map<int, std::size_t> counts;  // discrete-random: fixed counts
  double gap = 0.5;                 // two-arm
  double top_mean = 1.0;
  std::uint64_t target_h = 32;      // equal-H-varying-ent
  std::size_t max_count = 8;        // equal-H search bound per group
};

// Parses "key=value,key=value"; counts use "counts=1:2;3:1".
GenerateParams parse_generate_params(std::string_view text);

std::vector<Instance> generate_instances(InstanceKind kind,
                                         const GenerateParams& params,
                                         std::uint64_t seed);

}  // namespace gapent

#endif  // GAPENT_BENCH_H_
