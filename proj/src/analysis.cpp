#include "slitsim/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace slitsim {

IntensityProfile make_profile(const ScreenRecord& record, std::string config_hash,
                              std::int64_t steps, double leaked_at_stop) {
  IntensityProfile p;
  p.x = record.screen_x();
  p.intensity = record.intensity();
  p.config_hash = std::move(config_hash);
  p.steps = steps;
  p.leaked_at_stop = leaked_at_stop;
  return p;
}

namespace {

void check_profile(const IntensityProfile& p, const char* who) {
  if (p.x.size() != p.intensity.size() || p.x.empty()) {
    throw StructureError(std::string(who) + ": profile arrays empty or mismatched");
  }
  for (double v : p.intensity) {
    if (!std::isfinite(v)) throw StructureError(std::string(who) + ": non-finite intensity");
  }
}

std::vector<double> smooth3(const std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<double> out(n);
  if (n < 3) return v;
  out[0] = v[0];
  out[n - 1] = v[n - 1];
  for (std::size_t i = 1; i + 1 < n; ++i) out[i] = (v[i - 1] + v[i] + v[i + 1]) / 3.0;
  return out;
}

}  // namespace

ProfileExtrema find_extrema(const IntensityProfile& profile, double x_lo,
                            double x_hi) {
  check_profile(profile, "find_extrema");
  ProfileExtrema e;
  e.smoothed = smooth3(profile.intensity);
  for (std::size_t i = 1; i + 1 < e.smoothed.size(); ++i) {
    if (profile.x[i] < x_lo || profile.x[i] > x_hi) continue;
    const double v = e.smoothed[i];
    if (v > e.smoothed[i - 1] && v > e.smoothed[i + 1]) e.maxima.push_back(i);
    if (v < e.smoothed[i - 1] && v < e.smoothed[i + 1]) e.minima.push_back(i);
  }
  return e;
}

double fringe_visibility(const IntensityProfile& profile, double x_lo,
                         double x_hi) {
  const ProfileExtrema e = find_extrema(profile, x_lo, x_hi);
  if (e.maxima.size() < 2 || e.minima.empty()) {
    throw ConfigError("fringe_visibility: window holds too few extrema (" +
                      std::to_string(e.maxima.size()) + " maxima, " +
                      std::to_string(e.minima.size()) + " minima)");
  }
  double vmax = e.smoothed[e.maxima.front()];
  for (std::size_t i : e.maxima) vmax = std::max(vmax, e.smoothed[i]);
  double vmin = e.smoothed[e.minima.front()];
  for (std::size_t i : e.minima) vmin = std::min(vmin, e.smoothed[i]);
  vmin = std::max(vmin, 0.0);  // signed back-flow can dip a hair below zero
  if (vmax + vmin <= 0.0) {
    throw ConfigError("fringe_visibility: profile vanishes inside the window");
  }
  return (vmax - vmin) / (vmax + vmin);
}

PatternSymmetry pattern_symmetry(const IntensityProfile& profile) {
  check_profile(profile, "pattern_symmetry");
  const std::size_t n = profile.x.size();
  // The profile must sample a symmetric x range.
  std::size_t center = 0;
  double best = std::abs(profile.x[0]);
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs(profile.x[i]) < best) {
      best = std::abs(profile.x[i]);
      center = i;
    }
  }
  if (center == 0 || center + 1 >= n || 2 * center != n - 1) {
    throw StructureError("pattern_symmetry: x grid is not symmetric about 0");
  }
  const std::vector<double> s = smooth3(profile.intensity);
  double diff = 0.0, total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    diff += std::abs(profile.intensity[i] - profile.intensity[n - 1 - i]);
    total += std::abs(profile.intensity[i]);
  }
  PatternSymmetry r;
  r.defect = total > 0.0 ? diff / total : 0.0;
  r.central_maximum = s[center] >= s[center - 1] && s[center] >= s[center + 1] &&
                      s[center] > 0.0;
  return r;
}

double incoherent_sum_compare(const IntensityProfile& two_slit,
                              const IntensityProfile& only_a,
                              const IntensityProfile& only_b) {
  check_profile(two_slit, "incoherent_sum_compare");
  check_profile(only_a, "incoherent_sum_compare");
  check_profile(only_b, "incoherent_sum_compare");
  const std::size_t n = two_slit.x.size();
  if (only_a.x.size() != n || only_b.x.size() != n) {
    throw StructureError("incoherent_sum_compare: profiles on different screens");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(two_slit.x[i] - only_a.x[i]) > 1e-12 ||
        std::abs(two_slit.x[i] - only_b.x[i]) > 1e-12) {
      throw StructureError("incoherent_sum_compare: profiles on different screens");
    }
  }
  double norm_two = 0.0, norm_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    norm_two += std::abs(two_slit.intensity[i]);
    norm_sum += std::abs(only_a.intensity[i] + only_b.intensity[i]);
  }
  if (norm_two == 0.0 && norm_sum == 0.0) return 0.0;
  if (norm_two == 0.0 || norm_sum == 0.0) return 2.0;
  double diff = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double sum_ab = only_a.intensity[i] + only_b.intensity[i];
    diff += std::abs(two_slit.intensity[i] / norm_two - sum_ab / norm_sum);
  }
  return diff;
}

KPerturbation k_perturbation_bound(const PacketSpec& packet,
                                   const PacketSpec& perturbed,
                                   const GridSpec& grid) {
  if (packet.sigma != perturbed.sigma || packet.x0 != perturbed.x0 ||
      packet.y0 != perturbed.y0) {
    throw ConfigError("k_perturbation_bound: packets must share sigma and center");
  }
  const double dkx = packet.kx - perturbed.kx;
  const double dky = packet.ky - perturbed.ky;
  KPerturbation r;
  r.worst_case_bound =
      std::sqrt(dkx * dkx * 0.25 + dky * dky * 1.0 + 2.0 * std::abs(dkx * dky) * 0.5);
  const ComplexField a = gaussian_packet(packet, grid);
  const ComplexField b = gaussian_packet(perturbed, grid);
  double diff2 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::complex<double> d = a.data()[i] - b.data()[i];
    diff2 += d.real() * d.real() + d.imag() * d.imag();
  }
  r.exact_norm = std::sqrt(diff2) * grid.delta;
  return r;
}

DuhamelReport duhamel_firstorder_check(const ComplexField& psi0,
                                       const PotentialField& V,
                                       const PotentialField& V_tilde,
                                       std::int64_t n_steps,
                                       const StepperConfig& cfg,
                                       std::int64_t stride) {
  if (!(psi0.grid() == V.grid) || !(V.grid == V_tilde.grid)) {
    throw StructureError("duhamel_firstorder_check: grids do not match");
  }
  if (stride < 1) throw ConfigError("duhamel_firstorder_check: stride must be >= 1");
  const GridSpec& grid = psi0.grid();

  Propagator prop(grid, cfg);
  EvolutionState unperturbed = make_state(psi0);
  EvolutionState accumulator = make_state(ComplexField(grid));
  accumulator.diagnostics.initial_norm2 = -1.0;  // the accumulator grows from zero

  const double weight = cfg.tau * static_cast<double>(stride);
  for (std::int64_t s = 1; s <= n_steps; ++s) {
    prop.step(unperturbed, V);
    prop.step(accumulator, V);
    if (s % stride == 0) {
      // A += -i (V~ - V) psi(s) * weight
      for (std::size_t idx = 0; idx < accumulator.psi.size(); ++idx) {
        const double dv = V_tilde.barrier[idx] - V.barrier[idx];
        if (dv == 0.0) continue;
        const std::complex<double> p = unperturbed.psi.data()[idx];
        accumulator.psi.data()[idx] +=
            std::complex<double>(dv * weight * p.imag(), -dv * weight * p.real());
      }
    }
  }

  EvolutionState perturbed = make_state(psi0);
  prop.evolve(perturbed, V_tilde, {}, n_steps);

  DuhamelReport r;
  double lhs2 = 0.0, mis2 = 0.0;
  for (std::size_t idx = 0; idx < psi0.size(); ++idx) {
    const std::complex<double> lhs = perturbed.psi.data()[idx] - unperturbed.psi.data()[idx];
    const std::complex<double> mis = lhs - accumulator.psi.data()[idx];
    lhs2 += lhs.real() * lhs.real() + lhs.imag() * lhs.imag();
    mis2 += mis.real() * mis.real() + mis.imag() * mis.imag();
  }
  r.lhs_norm = std::sqrt(lhs2) * grid.delta;
  r.rhs_norm = field_norm(accumulator.psi);
  r.mismatch = r.lhs_norm > 0.0 ? std::sqrt(mis2) * grid.delta / r.lhs_norm : 0.0;
  r.ratio = r.lhs_norm > 0.0 ? r.rhs_norm / r.lhs_norm : 0.0;
  return r;
}

}  // namespace slitsim
