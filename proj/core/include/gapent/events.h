#ifndef GAPENT_EVENTS_H_
#define GAPENT_EVENTS_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace gapent {

enum class Primitive { kUnifSampl, kMedElim, kFracTest, kElimination };

std::string_view primitive_name(Primitive p);

// Emitted once per primitive call, after it returns.
struct PrimitiveEvent {
  Primitive primitive;
  std::size_t set_size = 0;
  std::uint64_t draws = 0;
  bool verdict = false;          // Frac-Test result
  std::size_t result_size = 0;   // Elimination output size
};

// Emitted once per solver round (including the terminal round).
struct RoundEvent {
  std::string_view solver;
  int guess = 0;  // Complexity-Guessing index t; 0 when not applicable
  int round = 0;
  double eps = 0.0;
  std::size_t set_size = 0;
  std::size_t next_set_size = 0;
  bool frac_verdict = false;
  double complexity_estimate = 0.0;  // H_r
  double budget_estimate = 0.0;      // T_{r+1}
  double theta_lo = 0.0;
  double theta_hi = 0.0;
  std::uint64_t draws = 0;
  std::string_view status;  // "continue", "return", "reject"
};

class EventSink {
 public:
  virtual ~EventSink() = default;
  virtual void on_primitive(const PrimitiveEvent&) {}
  virtual void on_round(const RoundEvent&) {}
};

std::string round_event_csv_header();
std::string round_event_csv_row(const RoundEvent& e);

}  // namespace gapent

#endif  // GAPENT_EVENTS_H_
