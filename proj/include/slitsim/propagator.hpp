#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "slitsim/geometry.hpp"
#include "slitsim/grid.hpp"

namespace slitsim {

// One step advances psi by the exponential series of exp(-i H tau) truncated
// at `order`, evaluated in Horner form (order applications of H per step).
struct StepperConfig {
  double tau = 1e-6;
  int order = 4;
  std::int64_t check_stride = 100;   // norm / finiteness guard interval
  double drift_tolerance = 1e-4;     // cumulative norm-increase abort threshold
};

struct EvolutionDiagnostics {
  double initial_norm2 = -1.0;  // set on first guard check
  double last_norm2 = 0.0;
  std::vector<std::pair<std::int64_t, double>> norm_history;
};

struct EvolutionState {
  ComplexField psi;
  std::int64_t step = 0;
  EvolutionDiagnostics diagnostics;

  double time(const StepperConfig& cfg) const { return static_cast<double>(step) * cfg.tau; }
};

EvolutionState make_state(ComplexField psi);

// Invoked after every step whose index is a multiple of `stride`.
struct Observer {
  std::int64_t stride = 1;
  std::function<void(const EvolutionState&)> callback;
};

// (H psi)_ij = -[psi_{i+1,j} + psi_{i-1,j} + psi_{i,j+1} + psi_{i,j-1}
//               - 4 psi_ij] / (2 delta^2) + (V_B - i V_A)_ij psi_ij,
// with psi treated as 0 beyond the region border.
void apply_hamiltonian(const ComplexField& psi, const PotentialField& V,
                       ComplexField& out);
ComplexField apply_hamiltonian(const ComplexField& psi, const PotentialField& V);

class Propagator {
 public:
  Propagator(const GridSpec& grid, StepperConfig cfg);

  const StepperConfig& config() const { return cfg_; }

  // Advances one step. Every check_stride steps the norm is recomputed; a
  // cumulative increase past drift_tolerance or a non-finite norm aborts with
  // NumericsError (the truncated series must never amplify the field; the
  // absorber only removes probability).
  void step(EvolutionState& state, const PotentialField& V);

  void evolve(EvolutionState& state, const PotentialField& V,
              std::span<const Observer> observers, std::int64_t n_steps);

 private:
  void guard(EvolutionState& state);

  StepperConfig cfg_;
  GridSpec grid_;
  ComplexField scratch_a_;
  ComplexField scratch_b_;
};

// Largest |R_order(i z)| <= 1 region for the order-4 truncation ends at
// z = 2 sqrt(2); the stored threshold keeps a small margin and is validated
// against the dense oracle in the tests.
inline constexpr double kStabilityThreshold = 2.8;

struct StabilityReport {
  double kinetic_bound = 0.0;    // 4 / delta^2
  double barrier_max = 0.0;
  double absorber_max = 0.0;
  double hnorm_estimate = 0.0;   // kinetic + barrier + absorber
  double tau_hnorm = 0.0;
  double tau_hnorm_no_barrier = 0.0;  // barrier excluded: the packet barely
                                      // populates barrier-interior modes
  bool pass = false;
  bool pass_no_barrier = false;

  std::string summary() const;
};

StabilityReport stability_report(const GridSpec& grid, const PotentialField& V,
                                 const StepperConfig& cfg);

}  // namespace slitsim
