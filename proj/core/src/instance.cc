#include "gapent/instance.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace gapent {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

ArmSpec::ArmSpec(double mean) : mean_(mean) {
  if (!(mean >= 0.0 && mean <= 1.0)) {
    throw InstanceError(fmt::format("arm mean {} outside [0, 1]", mean));
  }
}

Instance::Instance(std::vector<ArmSpec> arms, std::string id)
    : arms_(std::move(arms)), id_(std::move(id)) {
  if (arms_.size() < 2) {
    throw InstanceError("an instance needs at least two arms");
  }
  for (ArmId i = 1; i < arms_.size(); ++i) {
    if (arms_[i].mean() > arms_[best_].mean()) best_ = i;
  }
  for (ArmId i = 0; i < arms_.size(); ++i) {
    if (i != best_ && arms_[i].mean() == arms_[best_].mean()) {
      throw InstanceError(fmt::format(
          "tied maximum mean {} (arms {} and {}); the optimal arm must be "
          "unique",
          arms_[best_].mean(), best_, i));
    }
  }
}

Instance Instance::from_means(std::span<const double> means, std::string id) {
  std::vector<ArmSpec> arms;
  arms.reserve(means.size());
  for (double m : means) arms.emplace_back(m);
  return Instance(std::move(arms), std::move(id));
}

std::vector<double> Instance::means() const {
  std::vector<double> out;
  out.reserve(arms_.size());
  for (const auto& a : arms_) out.push_back(a.mean());
  return out;
}

Instance parse_instance(std::string_view text, std::string id) {
  std::vector<ArmSpec> arms;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{}
                                        : text.substr(nl + 1);
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    double value = 0.0;
    const char* end = line.data() + line.size();
    auto [ptr, ec] = std::from_chars(line.data(), end, value);
    if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
      throw InstanceError(
          fmt::format("line {}: malformed mean '{}'", line_no, line));
    }
    try {
      arms.emplace_back(value);
    } catch (const InstanceError& e) {
      throw InstanceError(fmt::format("line {}: {}", line_no, e.what()));
    }
  }
  return Instance(std::move(arms), std::move(id));
}

std::string format_instance(const Instance& instance) {
  std::string out;
  if (!instance.id().empty()) out += fmt::format("# {}\n", instance.id());
  for (const auto& arm : instance.arms()) {
    out += fmt::format("{}\n", arm.mean());
  }
  return out;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InstanceError(fmt::format("cannot open '{}'", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::string id = path;
  if (const auto slash = id.find_last_of('/'); slash != std::string::npos) {
    id = id.substr(slash + 1);
  }
  if (const auto dot = id.find_last_of('.'); dot != std::string::npos) {
    id = id.substr(0, dot);
  }
  return parse_instance(buffer.str(), std::move(id));
}

void save_instance(const Instance& instance, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InstanceError(fmt::format("cannot write '{}'", path));
  out << format_instance(instance);
}

int group_index(double gap) {
  if (!(gap > 0.0 && gap <= 1.0)) {
    throw InstanceError(fmt::format("gap {} outside (0, 1]", gap));
  }
  // gap = mantissa * 2^exp with mantissa in [0.5, 1).
  int exp = 0;
  const double mantissa = std::frexp(gap, &exp);
  return mantissa == 0.5 ? 1 - exp : -exp;
}

GapProfile profile(const Instance& instance) {
  GapProfile p;
  p.id = instance.id();
  p.n = instance.size();
  const double top = instance.arms()[instance.best_arm()].mean();

  p.group_of.assign(p.n, -1);
  for (ArmId i = 0; i < p.n; ++i) {
    if (i == instance.best_arm()) continue;
    const double gap = top - instance.arms()[i].mean();
    p.gaps.push_back(gap);
    p.group_of[i] = group_index(gap);
  }
  // Sorted accumulation makes every sum independent of storage order.
  std::sort(p.gaps.begin(), p.gaps.end());
  for (double gap : p.gaps) {
    const double w = 1.0 / (gap * gap);
    const int k = group_index(gap);
    p.complexity += w;
    p.group_complexity[k] += w;
    ++p.group_size[k];
  }
  for (const auto& [k, hk] : p.group_complexity) {
    const double pk = hk / p.complexity;
    p.group_weight[k] = pk;
    if (pk > 0.0) p.entropy += pk * std::log(1.0 / pk);
  }
  p.r_max = p.group_complexity.rbegin()->first;
  return p;
}

double conjectured_bound(const GapProfile& profile, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw InstanceError(fmt::format("delta {} outside (0, 1)", delta));
  }
  return profile.complexity * (std::log(1.0 / delta) + profile.entropy);
}

Instance make_discrete_instance(const std::map<int, std::size_t>& counts,
                                double top_mean) {
  std::vector<double> means{top_mean};
  for (const auto& [k, count] : counts) {
    if (k < 1) {
      throw InstanceError(fmt::format("group index {} must be >= 1", k));
    }
    const double mean = top_mean - std::ldexp(1.0, -k);
    if (count > 0 && mean < 0.0) {
      throw InstanceError(fmt::format(
          "top mean {} minus 2^-{} is below 0", top_mean, k));
    }
    means.insert(means.end(), count, mean);
  }
  if (means.size() < 2) {
    throw InstanceError("discrete instance needs at least one sub-optimal arm");
  }
  return Instance::from_means(means);
}

std::string profile_csv_header() { return "id,n,H,ent,r_max,k,H_k,p_k"; }

std::string profile_csv_row(const GapProfile& p) {
  std::string row = fmt::format("{},{},{:.17g},{:.17g},{}", p.id, p.n,
                                p.complexity, p.entropy, p.r_max);
  for (const auto& [k, hk] : p.group_complexity) {
    row += fmt::format(",{},{:.17g},{:.17g}", k, hk, p.group_weight.at(k));
  }
  return row;
}

}  // namespace gapent
