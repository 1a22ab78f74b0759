#ifndef GAPENT_PRIMITIVES_H_
#define GAPENT_PRIMITIVES_H_

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "gapent/events.h"
#include "gapent/oracle.h"

namespace gapent {

using ArmSet = std::vector<ArmId>;

// Empirical mean per queried arm.
using EstimateMap = std::map<ArmId, double>;

// Rounds a real-valued sample count up. Values within 1e-12 (relative) of
// an integer are taken as that integer so that e.g. 2*ln(e^2) is 4, not 5.
double round_up_count(double x);

// ceil(2 eps^-2 ln(2/delta)): per-arm draws of unif_sampl.
double unif_sampl_draws(double eps, double delta);

// ceil((gap/6)^-2 ln(2/delta)): iterations of frac_test, gap = theta_hi -
// theta_lo.
double frac_test_iterations(double theta_gap, double delta);

// ceil(2 (eps_l/2)^-2 ln(3/delta_l)): per-arm draws of one median
// elimination round.
double med_elim_round_draws(double eps_l, double delta_l);

// Samples every arm of `arms` unif_sampl_draws(eps, delta) times.
EstimateMap unif_sampl(SamplingOracle& oracle, std::span<const ArmId> arms,
                       double eps, double delta, EventSink* sink = nullptr);

// Median elimination: returns an arm whose mean is within eps of the best
// in `arms` with probability at least 1 - delta.
//
// Schedule: eps_1 = eps/4, delta_1 = delta/2; each round draws
// med_elim_round_draws(eps_l, delta_l) per surviving arm and keeps the
// ceil(|S_l|/2) best empirical means (ties to the lower arm id); then
// eps_{l+1} = 3/4 eps_l and delta_{l+1} = delta_l/2.
ArmId med_elim(SamplingOracle& oracle, std::span<const ArmId> arms, double eps,
               double delta, EventSink* sink = nullptr);

// Fraction test. Draws m = frac_test_iterations(theta_hi - theta_lo, delta)
// uniform picks from `arms`, estimates each pick with
// unif_sampl({A}, eps/2, (theta_hi - theta_lo)/6), eps = c_hi - c_lo, and
// counts estimates below (c_lo + c_hi)/2. True iff count/m exceeds
// (theta_lo + theta_hi)/2.
bool frac_test(SamplingOracle& oracle, std::span<const ArmId> arms,
               double c_lo, double c_hi, double theta_lo, double theta_hi,
               double delta, EventSink* sink = nullptr);

// Repeated fraction-test-gated elimination of arms below d_lo. Keeps arms
// with mean >= d_hi with probability >= 1 - delta/2 each. Returns an empty
// set only if a purge removes every arm.
ArmSet elimination(SamplingOracle& oracle, std::span<const ArmId> arms,
                   double d_lo, double d_hi, double delta,
                   EventSink* sink = nullptr);

}  // namespace gapent

#endif  // GAPENT_PRIMITIVES_H_
