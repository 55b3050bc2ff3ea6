#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "slitsim/geometry.hpp"
#include "slitsim/grid.hpp"
#include "slitsim/propagator.hpp"

namespace slitsim {

// j_y(x) = Im[psi*(x, y) (psi(x, y+delta) - psi(x, y-delta)) / (2 delta)]
// along one interior row.
std::vector<double> current_y(const ComplexField& psi, int row);

// Time-integrated probability current through the screen row:
// I(x) += j_y(x, y_screen) * tau * stride per sample (rectangle rule). The
// flux is accumulated signed; a positive value is a crossing in the
// propagation direction (+y, from the slits toward the screen).
class ScreenRecord {
 public:
  ScreenRecord(const GridSpec& grid, double screen_distance,
               std::int64_t stride = 1);

  int row() const { return row_; }
  double screen_y() const { return grid_.y(row_); }
  std::int64_t stride() const { return stride_; }

  // Steps after this bound are ignored (0 = no bound). Supports truncated
  // accumulation windows while the evolution continues.
  std::int64_t window_steps = 0;

  void accumulate(const EvolutionState& state, double tau);

  const std::vector<double>& intensity() const { return intensity_; }
  std::vector<double> screen_x() const;
  double integrated() const;  // sum I(x) delta
  std::int64_t samples() const { return samples_; }

 private:
  GridSpec grid_;
  int row_ = 0;
  std::int64_t stride_ = 1;
  std::int64_t samples_ = 0;
  std::vector<double> intensity_;
};

enum class SlitPhaseMode { NodeSample, SlitAverage };

struct SlitPhaseSample {
  std::int64_t step = 0;
  double t = 0.0;
  double cos_dphi = 0.0;
  double amp_a = 0.0;
  double amp_b = 0.0;
  bool valid = false;
};

// cos of the phase difference of psi at the two slit centers (y = 0 row).
// NodeSample reads the single node nearest each center (centers are rounded
// to the nearest column, the same offset on both sides); SlitAverage averages
// psi over the carved slit columns instead. Samples where either amplitude
// sits below the floor are flagged invalid: arg() of a near-zero amplitude is
// noise.
SlitPhaseSample slit_phase(const ComplexField& psi, const SlitSpec& slits,
                           double amplitude_floor,
                           SlitPhaseMode mode = SlitPhaseMode::NodeSample);

class SlitPhaseRecorder {
 public:
  SlitPhaseRecorder(const GridSpec& grid, const SlitSpec& slits, double tau,
                    double amplitude_floor,
                    SlitPhaseMode mode = SlitPhaseMode::NodeSample,
                    std::int64_t stride = 1);

  void sample(const EvolutionState& state);

  const std::vector<SlitPhaseSample>& series() const { return series_; }
  std::int64_t stride() const { return stride_; }

  // Standard deviation of cos(dphi) over valid samples (nullopt if < 2).
  std::optional<double> cos_dphi_stddev() const;

 private:
  SlitSpec slits_;
  double tau_;
  double floor_;
  SlitPhaseMode mode_;
  std::int64_t stride_;
  std::vector<SlitPhaseSample> series_;
};

// Two-point-source phase at screen position x: phi_a - phi_b +
// 2 pi (r_a - r_b) / lambda, with r_a, r_b the distances from the slit
// centers to (x, screen_distance from the slit side).
double predicted_screen_phase(double x, double screen_distance, double phi_a,
                              double phi_b, double lambda,
                              const SlitSpec& slits);

// Screen positions where the two-source model with phi_a = phi_b has maxima
// (path difference = integer multiple of lambda), within [x_lo, x_hi].
std::vector<double> predicted_fringe_maxima(double lambda, const SlitSpec& slits,
                                            double screen_distance, double x_lo,
                                            double x_hi);

// 1 - (norm^2 restricted to the billiard interior mask).
double leaked_probability(const ComplexField& psi,
                          const std::vector<std::uint8_t>& mask);

struct NormSample {
  std::int64_t step = 0;
  double t = 0.0;
  double norm2 = 0.0;
  double leaked = 0.0;
};

}  // namespace slitsim
