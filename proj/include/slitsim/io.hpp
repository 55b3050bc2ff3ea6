#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>

#include "slitsim/analysis.hpp"
#include "slitsim/observables.hpp"

namespace slitsim {

// FNV-1a 64 over the canonical serialized configuration, as 16 hex digits.
std::string fnv1a_hex(const std::string& payload);

// Doubles are written with 12 significant digits and LF line endings, so
// identical runs produce byte-identical payloads. Every file carries the
// config hash on a leading comment line.
void write_intensity_csv(const std::filesystem::path& path,
                         const IntensityProfile& profile);
IntensityProfile read_intensity_csv(const std::filesystem::path& path);

void write_phase_csv(const std::filesystem::path& path,
                     std::span<const SlitPhaseSample> series,
                     const std::string& config_hash);

void write_norm_csv(const std::filesystem::path& path,
                    std::span<const NormSample> series,
                    const std::string& config_hash);

// 16-bit binary PGM (P5, big-endian samples), |psi|^2 mapped linearly to
// [0, 65535] per frame. Returns the frame maximum used for the mapping.
double write_pgm16(const std::filesystem::path& path, const ComplexField& psi,
                   const std::string& config_hash);

// Numbered PGM frames plus an index.csv sidecar recording each frame's
// per-frame |psi|^2 maximum.
class SnapshotWriter {
 public:
  SnapshotWriter(std::filesystem::path dir, std::string config_hash, double tau);
  void frame(const EvolutionState& state);
  int frames_written() const { return frame_; }

 private:
  std::filesystem::path dir_;
  std::string config_hash_;
  double tau_;
  int frame_ = 0;
  std::string index_;
};

}  // namespace slitsim
