#include "slitsim/propagator.hpp"

#include <cmath>
#include <sstream>

namespace slitsim {

EvolutionState make_state(ComplexField psi) {
  EvolutionState state;
  state.psi = std::move(psi);
  const double n2 = norm_squared(state.psi);
  state.diagnostics.initial_norm2 = n2;
  state.diagnostics.last_norm2 = n2;
  return state;
}

namespace {

// out = base + (-i w) (H in), or out = H in when base is null and w frozen to
// -1 via the raw flag. Neighbor sums are grouped (up+down) + (left+right) so
// that mirror-image fields produce bit-identical mirror-image outputs.
template <bool kRawHamiltonian>
void stencil_sweep(const ComplexField* basef, const ComplexField& inf,
                   ComplexField& outf, const PotentialField& V, double w) {
  const GridSpec& g = inf.grid();
  const int nrows = g.rows();
  const int ncols = g.cols();
  const double kin = -0.5 / (g.delta * g.delta);
  const double* base =
      basef ? reinterpret_cast<const double*>(basef->data()) : nullptr;
  const double* in = reinterpret_cast<const double*>(inf.data());
  double* out = reinterpret_cast<double*>(outf.data());
  const double* vb = V.barrier.data();
  const double* va = V.absorber.data();

#pragma omp parallel for schedule(static)
  for (int i = 0; i < nrows; ++i) {
    const std::size_t row0 = static_cast<std::size_t>(i) * ncols;
    const double* in_c = in + 2 * row0;
    const double* in_u = (i + 1 < nrows) ? in_c + 2 * ncols : nullptr;
    const double* in_d = (i > 0) ? in_c - 2 * ncols : nullptr;
    const double* b_c = base ? base + 2 * row0 : nullptr;
    double* o_c = out + 2 * row0;
    const double* vb_c = vb + row0;
    const double* va_c = va + row0;

    auto emit = [&](int j, double nbr, double nbi) {
      const double cr = in_c[2 * j];
      const double ci = in_c[2 * j + 1];
      const double hr = kin * (nbr - 4.0 * cr) + vb_c[j] * cr + va_c[j] * ci;
      const double hi = kin * (nbi - 4.0 * ci) + vb_c[j] * ci - va_c[j] * cr;
      if constexpr (kRawHamiltonian) {
        o_c[2 * j] = hr;
        o_c[2 * j + 1] = hi;
      } else {
        o_c[2 * j] = b_c[2 * j] + w * hi;
        o_c[2 * j + 1] = b_c[2 * j + 1] - w * hr;
      }
    };

    if (in_u && in_d) {
      {
        const double nbr = (in_u[0] + in_d[0]) + in_c[2];
        const double nbi = (in_u[1] + in_d[1]) + in_c[3];
        emit(0, nbr, nbi);
      }
      for (int j = 1; j < ncols - 1; ++j) {
        const double nbr =
            (in_u[2 * j] + in_d[2 * j]) + (in_c[2 * j - 2] + in_c[2 * j + 2]);
        const double nbi =
            (in_u[2 * j + 1] + in_d[2 * j + 1]) + (in_c[2 * j - 1] + in_c[2 * j + 3]);
        emit(j, nbr, nbi);
      }
      {
        const int j = ncols - 1;
        const double nbr = (in_u[2 * j] + in_d[2 * j]) + in_c[2 * j - 2];
        const double nbi = (in_u[2 * j + 1] + in_d[2 * j + 1]) + in_c[2 * j - 1];
        emit(j, nbr, nbi);
      }
    } else {
      for (int j = 0; j < ncols; ++j) {
        double vr = 0.0, vi = 0.0;
        if (in_u) {
          vr += in_u[2 * j];
          vi += in_u[2 * j + 1];
        }
        if (in_d) {
          vr += in_d[2 * j];
          vi += in_d[2 * j + 1];
        }
        double hr2 = 0.0, hi2 = 0.0;
        if (j > 0) {
          hr2 += in_c[2 * j - 2];
          hi2 += in_c[2 * j - 1];
        }
        if (j + 1 < ncols) {
          hr2 += in_c[2 * j + 2];
          hi2 += in_c[2 * j + 3];
        }
        emit(j, vr + hr2, vi + hi2);
      }
    }
  }
}

}  // namespace

void apply_hamiltonian(const ComplexField& psi, const PotentialField& V,
                       ComplexField& out) {
  if (!(psi.grid() == V.grid)) {
    throw StructureError("apply_hamiltonian: field and potential on different grids");
  }
  if (!(out.grid() == psi.grid())) out = ComplexField(psi.grid());
  stencil_sweep<true>(nullptr, psi, out, V, 0.0);
}

ComplexField apply_hamiltonian(const ComplexField& psi, const PotentialField& V) {
  ComplexField out(psi.grid());
  apply_hamiltonian(psi, V, out);
  return out;
}

Propagator::Propagator(const GridSpec& grid, StepperConfig cfg)
    : cfg_(cfg), grid_(grid), scratch_a_(grid), scratch_b_(grid) {
  if (!(cfg_.tau > 0.0)) throw ConfigError("stepper: tau must be positive");
  if (cfg_.order < 1 || cfg_.order > 6) {
    throw ConfigError("stepper: series order must lie in 1..6");
  }
}

void Propagator::step(EvolutionState& state, const PotentialField& V) {
  if (!(state.psi.grid() == grid_) || !(V.grid == grid_)) {
    throw StructureError("step: state/potential grid does not match the propagator");
  }
  ComplexField* in = &state.psi;
  ComplexField* out = &scratch_a_;
  ComplexField* spare = &scratch_b_;
  for (int n = cfg_.order; n >= 1; --n) {
    stencil_sweep<false>(&state.psi, *in, *out, V, cfg_.tau / n);
    if (in == &state.psi) {
      in = out;
      out = spare;
    } else {
      std::swap(in, out);
    }
  }
  std::swap(state.psi, *in);
  state.step += 1;
  if (cfg_.check_stride > 0 && state.step % cfg_.check_stride == 0) guard(state);
}

void Propagator::guard(EvolutionState& state) {
  const double n2 = norm_squared(state.psi);
  auto& d = state.diagnostics;
  if (!std::isfinite(n2)) {
    throw NumericsError("propagator: non-finite field at step " +
                        std::to_string(state.step));
  }
  if (d.initial_norm2 >= 0.0 &&
      n2 > d.initial_norm2 * (1.0 + cfg_.drift_tolerance)) {
    throw NumericsError(
        "propagator: norm grew past the drift tolerance at step " +
        std::to_string(state.step) + " (norm^2 " + std::to_string(n2) +
        " vs initial " + std::to_string(d.initial_norm2) +
        "); the configuration is unstable");
  }
  d.last_norm2 = n2;
  d.norm_history.emplace_back(state.step, n2);
}

void Propagator::evolve(EvolutionState& state, const PotentialField& V,
                        std::span<const Observer> observers,
                        std::int64_t n_steps) {
  if (n_steps < 0) throw ConfigError("evolve: n_steps must be >= 0");
  for (std::int64_t s = 0; s < n_steps; ++s) {
    step(state, V);
    for (const auto& ob : observers) {
      if (ob.stride > 0 && ob.callback && state.step % ob.stride == 0) {
        ob.callback(state);
      }
    }
  }
}

StabilityReport stability_report(const GridSpec& grid, const PotentialField& V,
                                 const StepperConfig& cfg) {
  StabilityReport r;
  r.kinetic_bound = 4.0 / (grid.delta * grid.delta);
  r.barrier_max = V.max_barrier();
  r.absorber_max = V.max_absorber();
  r.hnorm_estimate = r.kinetic_bound + r.barrier_max + r.absorber_max;
  r.tau_hnorm = cfg.tau * r.hnorm_estimate;
  r.tau_hnorm_no_barrier = cfg.tau * (r.kinetic_bound + r.absorber_max);
  r.pass = r.tau_hnorm < kStabilityThreshold;
  r.pass_no_barrier = r.tau_hnorm_no_barrier < kStabilityThreshold;
  return r;
}

std::string StabilityReport::summary() const {
  std::ostringstream os;
  os << "tau*|H| = " << tau_hnorm << " (threshold " << kStabilityThreshold
     << ", kinetic " << kinetic_bound << ", barrier " << barrier_max
     << ", absorber " << absorber_max << "): "
     << (pass ? "stable" : "UNSTABLE");
  if (!pass && pass_no_barrier) {
    os << "; barrier-interior amplitudes are evanescent for a packet far below "
          "the barrier energy, so the effective bound tau*|H| = "
       << tau_hnorm_no_barrier << " without the barrier still passes";
  } else if (pass) {
    os << "; barrier excluded: tau*|H| = " << tau_hnorm_no_barrier;
  }
  return os.str();
}

}  // namespace slitsim
