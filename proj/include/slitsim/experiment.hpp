#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "slitsim/analysis.hpp"
#include "slitsim/geometry.hpp"
#include "slitsim/observables.hpp"
#include "slitsim/packet.hpp"
#include "slitsim/propagator.hpp"

namespace slitsim {

// Full experiment parameter set. Defaults are the stock configuration:
// 1.6 x 1.2 region at delta = 0.002, unit square billiard, barrier 1e6 wide
// 0.008, slits w = 0.012 / d = 0.1, screen at 0.3, packet sigma = 0.09 at
// (0, -0.25) with |k| = 180.
struct ExperimentConfig {
  // region
  double height = 1.6;
  double length = 1.2;
  double delta = 0.002;
  double span_above_slits = 0.5;  // distance from the slit side to the +y border

  BilliardShape shape = BilliardShape::square();
  double barrier_height = 1e6;
  double barrier_width = 0.008;
  SlitSpec slits;
  AbsorberSpec absorber;
  PacketSpec packet;
  StepperConfig stepper;
  double screen_distance = 0.3;

  struct Stopping {
    std::int64_t max_steps = 20000;
    double leaked_target = 0.85;
    std::int64_t intensity_window_steps = 0;  // 0 = accumulate for the whole run
  } stopping;

  struct Observers {
    std::int64_t screen_stride = 1;
    std::int64_t phase_stride = 10;
    std::int64_t norm_stride = 100;
    std::int64_t snapshot_stride = 0;  // 0 = no snapshots
    SlitPhaseMode phase_mode = SlitPhaseMode::NodeSample;
  } observers;

  std::string output_dir = "out/run";

  // Strict parse: unknown keys anywhere are rejected.
  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig from_file(const std::filesystem::path& path);
  nlohmann::json to_json() const;
  std::string hash() const;  // FNV-1a of the canonical serialization
};

struct ValidationIssue {
  std::string check;
  bool ok = true;
  bool warning = false;  // ok but noteworthy
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok = true;
  double potential_defect = 0.0;
  double packet_defect = 0.0;
  bool mirror_symmetry_satisfied = false;  // both defects < 1e-12
  StabilityReport stability;

  std::string summary() const;
};

// Checks every structural invariant, runs the stability estimate, computes
// both mirror-symmetry defects and the resulting fringe prediction. Never
// throws for an invalid configuration; the report lists the failures.
ValidationReport validate_config(const ExperimentConfig& cfg);

struct RunArtifacts {
  IntensityProfile intensity;
  std::vector<SlitPhaseSample> phase;
  std::vector<NormSample> norm_series;
  std::string stop_reason;  // "leaked_target" | "max_steps" | "abort"
  std::int64_t steps = 0;
  double leaked_final = 0.0;
  double norm2_final = 0.0;
  std::vector<std::string> warnings;
  std::string config_hash;
  std::filesystem::path dir;
};

// Validates, runs, writes intensity/phase/norm CSVs, optional snapshots and a
// manifest.json into the output directory, and returns the in-memory records.
// Invalid configurations throw ConfigError before anything is written; a
// numerical abort writes the manifest (stop_reason "abort") and rethrows.
RunArtifacts run_experiment(const ExperimentConfig& cfg);

struct OneSlitPairResult {
  RunArtifacts only_a;  // slit b closed
  RunArtifacts only_b;  // slit a closed
  IntensityProfile sum;
  std::optional<double> compare_vs_two_slit;  // when the two-slit profile exists
};

// Runs the two one-slit variants of a two-slit configuration (outputs under
// <output_dir>/one_slit_a and /one_slit_b), writes their intensity sum, and
// scores it against the two-slit profile if <output_dir>/intensity.csv exists.
OneSlitPairResult run_one_slit_pair(const ExperimentConfig& cfg);

}  // namespace slitsim
