#include "gapent/bench.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

namespace gapent {

Algorithm parse_algorithm(std::string_view name) {
  if (name == "known") return Algorithm::kKnown;
  if (name == "guess") return Algorithm::kGuess;
  if (name == "parallel") return Algorithm::kParallel;
  if (name == "baseline") return Algorithm::kBaseline;
  throw std::invalid_argument(fmt::format(
      "unknown algorithm '{}' (known, guess, parallel, baseline)", name));
}

std::string_view algorithm_name(Algorithm algo) {
  switch (algo) {
    case Algorithm::kKnown: return "known";
    case Algorithm::kGuess: return "guess";
    case Algorithm::kParallel: return "parallel";
    case Algorithm::kBaseline: return "baseline";
  }
  return "unknown";
}

RunOutcome run_once(Algorithm algo, const Instance& instance, double delta,
                    std::uint64_t seed, const RunConfig& config) {
  const SolverOptions options{.delta = delta,
                              .budget = config.budget,
                              .relaxed_delta = config.relaxed_delta,
                              .sink = config.sink};
  if (algo == Algorithm::kParallel) {
    ParallelOptions popts{.delta = delta, .seed = seed};
    if (config.budget) popts.budget = *config.budget;
    RunOutcome out = parallel_simulation(
        [&](std::uint64_t s) {
          return std::make_unique<GaussianOracle>(instance, s);
        },
        [&](SamplingOracle& oracle, double copy_delta) {
          SolverOptions inner = options;
          inner.delta = copy_delta;
          inner.budget.reset();
          inner.sink = nullptr;
          return complexity_guessing(oracle, inner);
        },
        popts);
    // Copies run untraced; replaying the winner reproduces its rounds.
    if (config.sink && out.winning_copy) {
      const int k = *out.winning_copy;
      GaussianOracle oracle(instance, k == 1 ? seed : derive_seed(seed, k));
      SolverOptions traced = options;
      traced.delta = std::ldexp(delta, -k);
      traced.budget.reset();
      complexity_guessing(oracle, traced);
    }
    return out;
  }

  GaussianOracle oracle(instance, seed);
  RunOutcome out;
  switch (algo) {
    case Algorithm::kKnown:
      out = known_complexity(oracle, profile(instance).complexity, options);
      break;
    case Algorithm::kGuess:
      out = complexity_guessing(oracle, options);
      break;
    case Algorithm::kBaseline:
      out = baseline_successive_elimination(oracle, options);
      break;
    case Algorithm::kParallel:
      break;
  }
  if (out.total_samples != oracle.total_draws()) {
    throw std::logic_error(fmt::format(
        "sample reconciliation failed: outcome {} vs oracle {}",
        out.total_samples, oracle.total_draws()));
  }
  return out;
}

TrialReport run_trials(Algorithm algo, const Instance& instance, double delta,
                       std::size_t trials, std::uint64_t base_seed,
                       const TrialConfig& config) {
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  const GapProfile prof = profile(instance);

  std::vector<RunOutcome> outcomes(trials);
  const RunConfig run_config{.budget = config.budget,
                             .relaxed_delta = config.relaxed_delta};
  unsigned workers =
      config.threads ? config.threads : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(trials));
  {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto work = [&] {
      for (std::size_t i; (i = next.fetch_add(1)) < trials;) {
        try {
          outcomes[i] = run_once(algo, instance, delta, base_seed + i,
                                 run_config);
        } catch (...) {
          std::lock_guard lock(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      }
    };
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    pool.clear();
    if (failure) std::rethrow_exception(failure);
  }

  TrialReport rep;
  rep.algorithm = std::string(algorithm_name(algo));
  rep.instance_id = instance.id();
  rep.n = instance.size();
  rep.delta = delta;
  rep.trials = trials;
  double guess_sum = 0.0;
  std::size_t guess_count = 0;
  for (const RunOutcome& o : outcomes) {
    rep.samples.push_back(o.total_samples);
    if (o.verdict == Verdict::kBudgetExceeded) {
      ++rep.budget_exceeded;
      continue;
    }
    if (o.arm == instance.best_arm()) {
      ++rep.successes;
    } else {
      ++rep.error_count;
    }
    if (o.accepted_guess) {
      guess_sum += *o.accepted_guess;
      ++guess_count;
    }
  }
  rep.empirical_error =
      static_cast<double>(rep.error_count) / static_cast<double>(trials);

  std::vector<std::uint64_t> sorted = rep.samples;
  std::sort(sorted.begin(), sorted.end());
  double sum = 0.0;
  for (auto s : sorted) sum += static_cast<double>(s);
  rep.mean_samples = sum / static_cast<double>(trials);
  const std::size_t mid = trials / 2;
  rep.median_samples =
      trials % 2 ? static_cast<double>(sorted[mid])
                 : (static_cast<double>(sorted[mid - 1]) +
                    static_cast<double>(sorted[mid])) / 2.0;
  // Nearest-rank percentile.
  const auto rank = static_cast<std::size_t>(
      std::ceil(0.95 * static_cast<double>(trials)));
  rep.p95_samples = static_cast<double>(sorted[std::max<std::size_t>(rank, 1) - 1]);
  if (guess_count) rep.mean_accepted_guess = guess_sum / guess_count;
  rep.conjectured_bound = conjectured_bound(prof, delta);
  rep.ratio = rep.mean_samples / rep.conjectured_bound;
  return rep;
}

std::string trial_csv_header() {
  return "algo,instance,n,delta,trials,successes,errors,budget_exceeded,"
         "empirical_error,mean_samples,median_samples,p95_samples,"
         "mean_accepted_guess,conjectured_bound,ratio";
}

std::string trial_csv_row(const TrialReport& r) {
  return fmt::format(
      "{},{},{},{:.17g},{},{},{},{},{:.17g},{:.17g},{:.17g},{:.17g},{},"
      "{:.17g},{:.17g}",
      r.algorithm, r.instance_id, r.n, r.delta, r.trials, r.successes,
      r.error_count, r.budget_exceeded, r.empirical_error, r.mean_samples,
      r.median_samples, r.p95_samples,
      r.mean_accepted_guess ? fmt::format("{:.17g}", *r.mean_accepted_guess)
                            : std::string{},
      r.conjectured_bound, r.ratio);
}

void append_trial_csv(const std::string& path, const TrialReport& report) {
  namespace fs = std::filesystem;
  std::error_code ec;
  const bool fresh = !fs::exists(path, ec) || fs::file_size(path, ec) == 0;
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path));
  if (fresh) out << trial_csv_header() << '\n';
  out << trial_csv_row(report) << '\n';
}

InstanceKind parse_instance_kind(std::string_view name) {
  if (name == "discrete-random") return InstanceKind::kDiscreteRandom;
  if (name == "two-arm") return InstanceKind::kTwoArm;
  if (name == "equal-H-varying-ent") return InstanceKind::kEqualHVaryingEnt;
  throw std::invalid_argument(fmt::format(
      "unknown instance kind '{}' (discrete-random, two-arm, "
      "equal-H-varying-ent)",
      name));
}

namespace {

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::invalid_argument(
        fmt::format("parameter {}: cannot parse '{}'", key, text));
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  while (!text.empty()) {
    const auto pos = text.find(sep);
    parts.push_back(text.substr(0, pos));
    if (pos == std::string_view::npos) break;
    text.remove_prefix(pos + 1);
  }
  return parts;
}

}  // namespace

GenerateParams parse_generate_params(std::string_view text) {
  GenerateParams p;
  for (std::string_view item : split(text, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument(fmt::format("parameter '{}' lacks '='", item));
    }
    const std::string_view key = item.substr(0, eq);
    const std::string_view value = item.substr(eq + 1);
    if (key == "count") {
      p.count = parse_number<std::size_t>(key, value);
    } else if (key == "k_max") {
      p.k_max = parse_number<int>(key, value);
    } else if (key == "max_per_group") {
      p.max_per_group = parse_number<std::size_t>(key, value);
    } else if (key == "gap") {
      p.gap = parse_number<double>(key, value);
    } else if (key == "top_mean") {
      p.top_mean = parse_number<double>(key, value);
    } else if (key == "H") {
      p.target_h = parse_number<std::uint64_t>(key, value);
    } else if (key == "max_count") {
      p.max_count = parse_number<std::size_t>(key, value);
    } else if (key == "counts") {
      for (std::string_view pair : split(value, ';')) {
        const auto colon = pair.find(':');
        if (colon == std::string_view::npos) {
          throw std::invalid_argument(
              fmt::format("counts entry '{}' must be k:n", pair));
        }
        p.counts[parse_number<int>(key, pair.substr(0, colon))] =
            parse_number<std::size_t>(key, pair.substr(colon + 1));
      }
    } else {
      throw std::invalid_argument(fmt::format("unknown parameter '{}'", key));
    }
  }
  return p;
}

namespace {

std::string counts_label(const std::map<int, std::size_t>& counts) {
  std::string label = "discrete";
  for (const auto& [k, n] : counts) {
    if (n > 0) label += fmt::format("_k{}x{}", k, n);
  }
  return label;
}

std::vector<Instance> equal_h_pair(const GenerateParams& p) {
  struct Candidate {
    std::map<int, std::size_t> counts;
    double entropy;
    std::size_t arms;
  };
  std::vector<Candidate> found;
  std::vector<std::size_t> n(static_cast<std::size_t>(p.k_max), 0);
  // Odometer over n_k in [0, max_count] for k = 1..k_max.
  while (true) {
    std::uint64_t h = 0;
    std::size_t arms = 0;
    for (int k = 1; k <= p.k_max; ++k) {
      h += (std::uint64_t{1} << (2 * k)) * n[k - 1];
      arms += n[k - 1];
    }
    if (h == p.target_h && arms > 0) {
      std::map<int, std::size_t> counts;
      for (int k = 1; k <= p.k_max; ++k) {
        if (n[k - 1]) counts[k] = n[k - 1];
      }
      const double ent =
          profile(make_discrete_instance(counts, p.top_mean)).entropy;
      found.push_back({counts, ent, arms});
    }
    std::size_t i = 0;
    while (i < n.size() && n[i] == p.max_count) n[i++] = 0;
    if (i == n.size()) break;
    ++n[i];
  }
  if (found.empty()) {
    throw std::invalid_argument(fmt::format(
        "no discrete instance with H = {} (k <= {}, n_k <= {})", p.target_h,
        p.k_max, p.max_count));
  }
  // Lowest entropy (most arms on ties) against highest entropy.
  const auto lo = std::min_element(
      found.begin(), found.end(), [](const Candidate& a, const Candidate& b) {
        return a.entropy != b.entropy ? a.entropy < b.entropy : a.arms > b.arms;
      });
  const auto hi = std::max_element(
      found.begin(), found.end(), [](const Candidate& a, const Candidate& b) {
        return a.entropy < b.entropy;
      });
  if (!(hi->entropy > lo->entropy + 1e-12)) {
    throw std::invalid_argument(fmt::format(
        "every discrete instance with H = {} has the same entropy",
        p.target_h));
  }
  std::vector<Instance> out;
  for (const auto* c : {&*lo, &*hi}) {
    Instance inst = make_discrete_instance(c->counts, p.top_mean);
    inst.set_id(fmt::format("eqH{}_{}", p.target_h, counts_label(c->counts)));
    out.push_back(std::move(inst));
  }
  return out;
}

}  // namespace

std::vector<Instance> generate_instances(InstanceKind kind,
                                         const GenerateParams& p,
                                         std::uint64_t seed) {
  if (p.k_max < 1 || p.k_max > 30) {
    throw std::invalid_argument("k_max must be in [1, 30]");
  }
  std::vector<Instance> out;
  switch (kind) {
    case InstanceKind::kTwoArm: {
      const double values[] = {p.top_mean, p.top_mean - p.gap};
      if (!(p.gap > 0.0)) throw std::invalid_argument("gap must be positive");
      Instance inst = Instance::from_means(values);
      inst.set_id(fmt::format("two_arm_gap{}", p.gap));
      out.push_back(std::move(inst));
      break;
    }
    case InstanceKind::kDiscreteRandom: {
      for (const auto& [k, n] : p.counts) {
        if (k > p.k_max && n > 0) {
          throw std::invalid_argument(
              fmt::format("group {} exceeds k_max {}", k, p.k_max));
        }
      }
      if (!p.counts.empty()) {
        Instance inst = make_discrete_instance(p.counts, p.top_mean);
        inst.set_id(counts_label(p.counts));
        out.push_back(std::move(inst));
        break;
      }
      if (p.max_per_group == 0) {
        throw std::invalid_argument("max_per_group must be >= 1");
      }
      std::mt19937_64 rng(seed);
      std::uniform_int_distribution<std::size_t> pick(0, p.max_per_group);
      for (std::size_t i = 0; i < p.count; ++i) {
        std::map<int, std::size_t> counts;
        std::size_t arms = 0;
        while (arms == 0) {
          counts.clear();
          for (int k = 1; k <= p.k_max; ++k) {
            const std::size_t nk = pick(rng);
            if (nk) counts[k] = nk;
            arms += nk;
          }
        }
        Instance inst = make_discrete_instance(counts, p.top_mean);
        inst.set_id(fmt::format("{}_{}", counts_label(counts), i));
        out.push_back(std::move(inst));
      }
      break;
    }
    case InstanceKind::kEqualHVaryingEnt:
      out = equal_h_pair(p);
      break;
  }
  return out;
}

}  // namespace gapent
