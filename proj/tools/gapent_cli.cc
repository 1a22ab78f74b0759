// gapent: command-line front end for instance statistics, single runs,
// Monte-Carlo benchmarks, the sign harness and instance generation.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif
#include <fmt/format.h>

#include "gapent/bench.h"
#include "gapent/instance.h"
#include "gapent/signxi.h"
#include "gapent/solvers.h"

namespace fs = std::filesystem;

namespace {

constexpr int kConfigError = 1;
constexpr int kBudgetExhausted = 2;

// Streams round events as CSV while a run progresses.
class TraceSink : public gapent::EventSink {
 public:
  TraceSink() { fmt::print("{}\n", gapent::round_event_csv_header()); }
  void on_round(const gapent::RoundEvent& e) override {
    fmt::print("{}\n", gapent::round_event_csv_row(e));
  }
};

std::string join(const std::vector<std::uint64_t>& xs) {
  return fmt::format("{}", fmt::join(xs, " "));
}

int cmd_stats(const std::string& path, double delta) {
  const gapent::Instance inst = gapent::load_instance(path);
  const gapent::GapProfile prof = gapent::profile(inst);
  fmt::print("{}\n{}\n", gapent::profile_csv_header(), gapent::profile_csv_row(prof));
  fmt::print("delta,conjectured_bound\n{:.17g},{:.17g}\n", delta,
             gapent::conjectured_bound(prof, delta));
  return 0;
}

struct RunArgs {
  std::string instance;
  std::string algo;
  double delta = 0.01;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> budget;
  bool trace = false;
  bool allow_large_delta = false;
};

int cmd_run(const RunArgs& a) {
  const gapent::Instance inst = gapent::load_instance(a.instance);
  const gapent::Algorithm algo = gapent::parse_algorithm(a.algo);
  std::optional<TraceSink> sink;
  if (a.trace) sink.emplace();
  const gapent::RunOutcome out = gapent::run_once(
      algo, inst, a.delta, a.seed,
      {.budget = a.budget,
       .relaxed_delta = a.allow_large_delta,
       .sink = sink ? &*sink : nullptr});

  fmt::print("instance={}\nalgo={}\nseed={}\nverdict={}\n", inst.id(), a.algo, a.seed,
             gapent::verdict_name(out.verdict));
  if (out.arm) {
    fmt::print("arm={}\ncorrect={}\n", *out.arm, *out.arm == inst.best_arm());
  }
  fmt::print("total_samples={}\nper_arm_samples={}\nrounds={}\n", out.total_samples,
             join(out.per_arm_samples), out.rounds_executed);
  if (out.accepted_guess) fmt::print("accepted_guess={}\n", *out.accepted_guess);
  if (out.winning_copy) fmt::print("winning_copy={}\n", *out.winning_copy);
  return out.verdict == gapent::Verdict::kBudgetExceeded ? kBudgetExhausted : 0;
}

struct BenchArgs {
  std::string algo;
  std::string dir;
  std::vector<double> deltas;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::string out;
  std::optional<std::uint64_t> budget;
  unsigned threads = 0;
};

int cmd_bench(const BenchArgs& a) {
  const gapent::Algorithm algo = gapent::parse_algorithm(a.algo);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(a.dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw std::invalid_argument(fmt::format("no instances in '{}'", a.dir));

  fmt::print("{}\n", gapent::trial_csv_header());
  for (const fs::path& file : files) {
    const gapent::Instance inst = gapent::load_instance(file.string());
    for (double delta : a.deltas) {
      const gapent::TrialReport rep = gapent::run_trials(
          algo, inst, delta, a.trials, a.seed, {.budget = a.budget, .threads = a.threads});
      gapent::append_trial_csv(a.out, rep);
      fmt::print("{}\n", gapent::trial_csv_row(rep));
      std::fflush(stdout);
    }
  }
  return 0;
}

struct SignArgs {
  int m = 2;
  double delta = 0.05;
  std::size_t trials = 30;
  std::uint64_t seed = 0;
  std::string out;
  std::uint64_t budget = gapent::kDefaultBudget;
};

int cmd_signxi(const SignArgs& a) {
  const gapent::SignSolver solver = [](gapent::SamplingOracle& o, double d) {
    return gapent::complexity_guessing(o, {.delta = d, .relaxed_delta = true});
  };
  const gapent::LossProfile prof = gapent::measure_loss_profile(
      solver, gapent::uniform_weights(a.m),
      {.delta = a.delta, .trials = a.trials, .base_seed = a.seed, .budget = a.budget});
  const std::string csv = gapent::loss_profile_csv(prof);
  std::ofstream out(a.out);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", a.out));
  out << csv;
  fmt::print("{}", csv);
  return 0;
}

int cmd_gen(const std::string& kind, const std::string& params, std::uint64_t seed,
            const std::string& dir) {
  const auto instances = gapent::generate_instances(
      gapent::parse_instance_kind(kind), gapent::parse_generate_params(params), seed);
  fs::create_directories(dir);
  for (const gapent::Instance& inst : instances) {
    const fs::path path = fs::path(dir) / (inst.id() + ".txt");
    gapent::save_instance(inst, path.string());
    fmt::print("{}\n", path.string());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Best-arm identification with gap-entropy algorithms"};
  app.require_subcommand(1);

  double delta = 0.01;

  auto* stats = app.add_subcommand("stats", "Print the gap profile and conjectured bound");
  std::string stats_instance;
  stats->add_option("--instance", stats_instance, "Instance file")->required();
  stats->add_option("--delta", delta, "Confidence parameter")->required();

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run one algorithm once");
  run_cmd->add_option("--instance", run.instance, "Instance file")->required();
  run_cmd->add_option("--algo", run.algo, "known, guess, parallel or baseline")->required();
  run_cmd->add_option("--delta", run.delta, "Confidence parameter")->required();
  run_cmd->add_option("--seed", run.seed, "RNG seed")->required();
  run_cmd->add_option("--budget", run.budget, "Maximum total draws");
  run_cmd->add_flag("--trace", run.trace, "Print one CSV line per round");
  run_cmd->add_flag("--allow-large-delta", run.allow_large_delta,
                    "Accept delta in (0.01, 1)");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Seeded trials over a directory of instances");
  bench_cmd->add_option("--algo", bench.algo, "known, guess, parallel or baseline")->required();
  bench_cmd->add_option("--instances", bench.dir, "Directory of instance files")->required();
  bench_cmd->add_option("--delta", bench.deltas, "Confidence parameter(s)")->required();
  bench_cmd->add_option("--trials", bench.trials, "Trials per instance and delta")->required();
  bench_cmd->add_option("--seed", bench.seed, "Base seed; trial i uses seed+i")->required();
  bench_cmd->add_option("--out", bench.out, "CSV file to append to")->required();
  bench_cmd->add_option("--budget", bench.budget, "Maximum total draws per trial");
  bench_cmd->add_option("--threads", bench.threads, "Worker threads (0: all cores)");

  SignArgs sign;
  auto* sign_cmd = app.add_subcommand("signxi", "Measure the sign-problem loss profile");
  sign_cmd->add_option("--m", sign.m, "Uniform P over k = 1..m")->required();
  sign_cmd->add_option("--delta", sign.delta, "Confidence parameter")->required();
  sign_cmd->add_option("--trials", sign.trials, "Trials per k")->required();
  sign_cmd->add_option("--out", sign.out, "CSV file")->required();
  sign_cmd->add_option("--seed", sign.seed, "Base seed");
  sign_cmd->add_option("--budget", sign.budget, "Maximum draws per run");

  std::string gen_kind, gen_params, gen_dir;
  std::uint64_t gen_seed = 0;
  auto* gen = app.add_subcommand("gen", "Generate instance files");
  gen->add_option("--kind", gen_kind, "discrete-random, two-arm or equal-H-varying-ent")
      ->required();
  gen->add_option("--params", gen_params, "key=value,... e.g. counts=1:2;3:1");
  gen->add_option("--seed", gen_seed, "RNG seed");
  gen->add_option("--out", gen_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (*stats) return cmd_stats(stats_instance, delta);
    if (*run_cmd) return cmd_run(run);
    if (*bench_cmd) return cmd_bench(bench);
    if (*sign_cmd) return cmd_signxi(sign);
    if (*gen) return cmd_gen(gen_kind, gen_params, gen_seed, gen_dir);
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kConfigError;
  }
  return kConfigError;
}
