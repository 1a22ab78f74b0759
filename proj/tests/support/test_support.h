#ifndef GAPENT_TESTS_SUPPORT_TEST_SUPPORT_H_
#define GAPENT_TESTS_SUPPORT_TEST_SUPPORT_H_

// Test-only helpers: an independent re-derivation of the gap statistics
// straight from their definitions, and an event recorder.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "gapent/events.h"

namespace gapent::testing {

struct BruteProfile {
  double complexity = 0.0;
  std::map<int, double> group_complexity;
  std::map<int, double> group_weight;
  double entropy = 0.0;
  int r_max = -1;
  std::vector<int> group_of;  // -1 for the best arm
};

// Scans k = 0, 1, ... until 2^-(k+1) < gap <= 2^-k; no logarithms.
inline int brute_group(double gap) {
  for (int k = 0; k < 1100; ++k) {
    const double hi = std::ldexp(1.0, -k);
    const double lo = std::ldexp(1.0, -(k + 1));
    if (lo < gap && gap <= hi) return k;
  }
  return -1;
}

inline BruteProfile brute_profile(const std::vector<double>& means) {
  BruteProfile p;
  std::size_t best = 0;
  for (std::size_t i = 0; i < means.size(); ++i) {
    if (means[i] > means[best]) best = i;
  }
  p.group_of.assign(means.size(), -1);
  // Accumulate with long double in arm order.
  std::map<int, long double> hk;
  long double h = 0.0L;
  for (std::size_t i = 0; i < means.size(); ++i) {
    if (i == best) continue;
    const long double gap =
        static_cast<long double>(means[best]) - static_cast<long double>(means[i]);
    const int k = brute_group(static_cast<double>(gap));
    p.group_of[i] = k;
    const long double w = 1.0L / (gap * gap);
    hk[k] += w;
    h += w;
    p.r_max = std::max(p.r_max, k);
  }
  p.complexity = static_cast<double>(h);
  long double ent = 0.0L;
  for (const auto& [k, v] : hk) {
    p.group_complexity[k] = static_cast<double>(v);
    const long double pk = v / h;
    p.group_weight[k] = static_cast<double>(pk);
    ent -= pk * std::log(pk);
  }
  p.entropy = static_cast<double>(ent);
  return p;
}

inline bool close_rel(double a, double b, double tol = 1e-12) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

// Random instance with n arms, means uniform in [0,1], unique maximum.
inline std::vector<double> random_means(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  while (true) {
    std::vector<double> m(n);
    for (auto& x : m) x = u(rng);
    const double top = *std::max_element(m.begin(), m.end());
    if (std::count(m.begin(), m.end(), top) == 1) return m;
  }
}

class RecordingSink : public EventSink {
 public:
  void on_primitive(const PrimitiveEvent& e) override {
    primitives.push_back(e);
  }
  void on_round(const RoundEvent& e) override { rounds.push_back(e); }

  std::vector<PrimitiveEvent> primitives;
  std::vector<RoundEvent> rounds;
};

// Lower edge of the two-sided 95% binomial band around trials*(1-delta).
inline double binomial_floor(std::size_t trials, double delta) {
  const double n = static_cast<double>(trials);
  return n * (1.0 - delta) - 1.96 * std::sqrt(n * delta * (1.0 - delta));
}

}  // namespace gapent::testing

#endif  // GAPENT_TESTS_SUPPORT_TEST_SUPPORT_H_
