#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "slitsim/observables.hpp"
#include "slitsim/packet.hpp"
#include "slitsim/propagator.hpp"

namespace slitsim {

struct IntensityProfile {
  std::vector<double> x;
  std::vector<double> intensity;
  std::string config_hash;
  std::int64_t steps = 0;
  double leaked_at_stop = 0.0;
};

IntensityProfile make_profile(const ScreenRecord& record, std::string config_hash,
                              std::int64_t steps, double leaked_at_stop);

// Local extrema of the lightly smoothed profile (3-point moving average, which
// suppresses single-node noise without moving fringe-scale features).
struct ProfileExtrema {
  std::vector<std::size_t> maxima;
  std::vector<std::size_t> minima;
  std::vector<double> smoothed;
};
ProfileExtrema find_extrema(const IntensityProfile& profile, double x_lo,
                            double x_hi);

// (I_max - I_min) / (I_max + I_min) over the extrema inside the window.
// Errors when the window holds fewer than two maxima or no minimum.
double fringe_visibility(const IntensityProfile& profile, double x_lo = -0.3,
                         double x_hi = 0.3);

struct PatternSymmetry {
  double defect = 0.0;      // sum |I(x) - I(-x)| / sum |I(x)|
  bool central_maximum = false;
};
PatternSymmetry pattern_symmetry(const IntensityProfile& profile);

// L1 distance between the two-slit profile and the sum of the two one-slit
// profiles, each scaled to unit area first (range [0, 2], symmetric, zero iff
// the shapes agree). The area normalization matters: a billiard with one slit
// closed drains more slowly, so the one-slit runs put systematically more
// probability through their open slit than the two-slit run does, and raw
// amplitudes never coincide even when the shapes do.
double incoherent_sum_compare(const IntensityProfile& two_slit,
                              const IntensityProfile& only_a,
                              const IntensityProfile& only_b);

// Initial-packet sensitivity to a wave-vector change. The worst-case estimate
// uses the coefficient bounds A <= 0.25, B <= 1, |C| <= 0.5 of the quadratic
// form in (k - k~); the exact value is the grid norm ||psi0 - psi0~||.
struct KPerturbation {
  double worst_case_bound = 0.0;
  double exact_norm = 0.0;
};
KPerturbation k_perturbation_bound(const PacketSpec& packet,
                                   const PacketSpec& perturbed,
                                   const GridSpec& grid);

// First-order response to a barrier change V_B -> V_B~:
//   lhs  = || e^{-i H~ t} psi0 - e^{-i H t} psi0 ||   (two full evolutions)
//   rhs  = || -i  int_0^t e^{-i H (t-s)} (V_B~ - V_B) e^{-i H s} psi0 ds ||
// The integral is accumulated alongside the unperturbed evolution (rectangle
// rule, one injection every `stride` steps).
struct DuhamelReport {
  double lhs_norm = 0.0;
  double rhs_norm = 0.0;
  double ratio = 0.0;            // rhs / lhs (0 when both vanish)
  double mismatch = 0.0;         // ||lhs_field - rhs_field|| / lhs_norm
};
DuhamelReport duhamel_firstorder_check(const ComplexField& psi0,
                                       const PotentialField& V,
                                       const PotentialField& V_tilde,
                                       std::int64_t n_steps,
                                       const StepperConfig& cfg,
                                       std::int64_t stride = 1);

}  // namespace slitsim
