#ifndef GAPENT_INSTANCE_H_
#define GAPENT_INSTANCE_H_

#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gapent {

using ArmId = std::size_t;

// Raised for malformed instance files and out-of-range analytic inputs.
class InstanceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// One unit-variance Gaussian arm, identified by its (unknown to solvers)
// mean in [0, 1].
class ArmSpec {
 public:
  explicit ArmSpec(double mean);

  double mean() const { return mean_; }

 private:
  double mean_;
};

// A Best-1-Arm instance: at least two arms and a unique optimal arm.
// Storage order is only a labelling; analytics treat the arms as a set.
class Instance {
 public:
  Instance(std::vector<ArmSpec> arms, std::string id = {});

  static Instance from_means(std::span<const double> means,
                             std::string id = {});

  std::size_t size() const { return arms_.size(); }
  const std::vector<ArmSpec>& arms() const { return arms_; }
  std::vector<double> means() const;
  const std::string& id() const { return id_; }
  void set_id(std::string id) { id_ = std::move(id); }

  // Index of the arm with the largest mean.
  ArmId best_arm() const { return best_; }

 private:
  std::vector<ArmSpec> arms_;
  std::string id_;
  ArmId best_ = 0;
};

// Parses one decimal mean per non-empty line; lines whose first
// non-blank character is '#' are comments.
Instance parse_instance(std::string_view text, std::string id = {});
std::string format_instance(const Instance& instance);

Instance load_instance(const std::string& path);
void save_instance(const Instance& instance, const std::string& path);

// Statistics of the gap structure. Group k holds the arms whose gap lies
// in (2^-(k+1), 2^-k].
struct GapProfile {
  std::string id;
  std::size_t n = 0;
  std::vector<double> gaps;            // sorted ascending, n-1 entries
  std::vector<int> group_of;           // per arm (storage order); -1 = best
  double complexity = 0.0;             // H = sum of gap^-2
  std::map<int, double> group_complexity;  // H_k
  std::map<int, double> group_weight;      // p_k = H_k / H
  std::map<int, std::size_t> group_size;
  double entropy = 0.0;                // sum p_k ln(1/p_k)
  int r_max = 0;                       // largest nonempty group index
};

// Unique k >= 0 with gap in (2^-(k+1), 2^-k]. Throws for gap outside (0,1].
int group_index(double gap);

GapProfile profile(const Instance& instance);

// H * (ln(1/delta) + Ent): the conjectured instance-optimal sample scale
// with the leading constant set to one.
double conjectured_bound(const GapProfile& profile, double delta);

// One arm at top_mean plus counts[k] arms at top_mean - 2^-k for each k.
Instance make_discrete_instance(const std::map<int, std::size_t>& counts,
                                double top_mean = 1.0);

// CSV: id,n,H,ent,r_max followed by one (k,H_k,p_k) triple per nonempty
// group in increasing k.
std::string profile_csv_header();
std::string profile_csv_row(const GapProfile& profile);

}  // namespace gapent

#endif  // GAPENT_INSTANCE_H_
