#include "gapent/events.h"

#include <fmt/format.h>

namespace gapent {

std::string_view primitive_name(Primitive p) {
  switch (p) {
    case Primitive::kUnifSampl: return "unif_sampl";
    case Primitive::kMedElim: return "med_elim";
    case Primitive::kFracTest: return "frac_test";
    case Primitive::kElimination: return "elimination";
  }
  return "unknown";
}

std::string round_event_csv_header() {
  return "solver,guess,round,eps,set_size,next_set_size,frac_verdict,H_r,T_r,"
         "theta_lo,theta_hi,draws,status";
}

std::string round_event_csv_row(const RoundEvent& e) {
  return fmt::format("{},{},{},{:.17g},{},{},{},{:.17g},{:.17g},{:.17g},"
                     "{:.17g},{},{}",
                     e.solver, e.guess, e.round, e.eps, e.set_size,
                     e.next_set_size, e.frac_verdict ? 1 : 0,
                     e.complexity_estimate, e.budget_estimate, e.theta_lo,
                     e.theta_hi, e.draws, e.status);
}

}  // namespace gapent
