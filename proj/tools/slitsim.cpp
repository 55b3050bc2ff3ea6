// Command-line experiment runner: builds the billiard and packet from a JSON
// config, evolves the field, and writes screen/phase/norm artifacts.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical abort.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>
#include <json.hpp>

#include "slitsim/experiment.hpp"
#include "slitsim/io.hpp"

namespace {

void apply_thread_count(int threads) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

slitsim::ExperimentConfig load_config(const std::string& path,
                                      const std::string& out_override,
                                      long long max_steps_override,
                                      long long snapshot_override) {
  slitsim::ExperimentConfig cfg = slitsim::ExperimentConfig::from_file(path);
  if (!out_override.empty()) cfg.output_dir = out_override;
  if (max_steps_override >= 0) cfg.stopping.max_steps = max_steps_override;
  if (snapshot_override >= 0) cfg.observers.snapshot_stride = snapshot_override;
  return cfg;
}

nlohmann::json profile_report(const slitsim::IntensityProfile& profile,
                              double window) {
  nlohmann::json r{{"config_hash", profile.config_hash},
                   {"steps", profile.steps},
                   {"leaked_at_stop", profile.leaked_at_stop}};
  try {
    r["fringe_visibility"] = slitsim::fringe_visibility(profile, -window, window);
  } catch (const slitsim::Error& e) {
    r["fringe_visibility"] = nullptr;
    r["fringe_visibility_note"] = e.what();
  }
  const slitsim::PatternSymmetry sym = slitsim::pattern_symmetry(profile);
  r["pattern_symmetry_defect"] = sym.defect;
  r["central_maximum"] = sym.central_maximum;
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-slit billiard wave-packet simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  long long max_steps = -1;
  long long snapshot_stride = -1;
  int threads = 0;

  auto add_run_flags = [&](CLI::App* cmd) {
    cmd->add_option("config", config_path, "experiment config (JSON)")->required();
    cmd->add_option("--out", out_dir, "override the output directory");
    cmd->add_option("--max-steps", max_steps, "override stopping.max_steps");
    cmd->add_option("--snapshot-stride", snapshot_stride,
                    "override observers.snapshot_stride");
    cmd->add_option("--threads", threads, "worker thread count (results identical)");
  };

  CLI::App* run = app.add_subcommand("run", "run a two-slit experiment");
  add_run_flags(run);

  CLI::App* pair =
      app.add_subcommand("one-slit-pair", "run the two one-slit variants and compare");
  add_run_flags(pair);

  CLI::App* validate =
      app.add_subcommand("validate", "check a config and report the symmetry verdict");
  validate->add_option("config", config_path, "experiment config (JSON)")->required();

  std::vector<std::string> profiles;
  double window = 0.3;
  CLI::App* analyze = app.add_subcommand(
      "analyze", "fringe metrics for one profile, or two-slit vs one-slit pair for three");
  analyze->add_option("profiles", profiles, "intensity CSV file(s)")
      ->required()
      ->expected(1, 3);
  analyze->add_option("--window", window, "half-width of the extremum window in x");

  CLI11_PARSE(app, argc, argv);

  try {
    apply_thread_count(threads);
    if (run->parsed()) {
      const auto cfg = load_config(config_path, out_dir, max_steps, snapshot_stride);
      const slitsim::RunArtifacts art = slitsim::run_experiment(cfg);
      std::printf("stop_reason=%s steps=%lld leaked=%.4f -> %s\n",
                  art.stop_reason.c_str(), static_cast<long long>(art.steps),
                  art.leaked_final, art.dir.string().c_str());
    } else if (pair->parsed()) {
      const auto cfg = load_config(config_path, out_dir, max_steps, snapshot_stride);
      const slitsim::OneSlitPairResult res = slitsim::run_one_slit_pair(cfg);
      std::printf("one-slit runs done: leaked a=%.4f b=%.4f\n",
                  res.only_a.leaked_final, res.only_b.leaked_final);
      if (res.compare_vs_two_slit) {
        std::printf("incoherent_sum_compare vs two-slit profile: %.4f\n",
                    *res.compare_vs_two_slit);
      } else {
        std::printf("no two-slit intensity.csv in the output directory; "
                    "run `run` first for the comparison score\n");
      }
    } else if (validate->parsed()) {
      const auto cfg = slitsim::ExperimentConfig::from_file(config_path);
      const slitsim::ValidationReport rep = slitsim::validate_config(cfg);
      std::fputs(rep.summary().c_str(), stdout);
      std::printf("config_hash=%s\n", cfg.hash().c_str());
      if (!rep.ok) return 2;
    } else if (analyze->parsed()) {
      nlohmann::json out;
      if (profiles.size() == 3) {
        const auto two = slitsim::read_intensity_csv(profiles[0]);
        const auto a = slitsim::read_intensity_csv(profiles[1]);
        const auto b = slitsim::read_intensity_csv(profiles[2]);
        out["two_slit"] = profile_report(two, window);
        out["only_a"] = profile_report(a, window);
        out["only_b"] = profile_report(b, window);
        out["incoherent_sum_compare"] = slitsim::incoherent_sum_compare(two, a, b);
      } else if (profiles.size() == 1) {
        out = profile_report(slitsim::read_intensity_csv(profiles[0]), window);
      } else {
        throw slitsim::ConfigError(
            "analyze takes one profile, or three (two-slit, one-slit a, one-slit b)");
      }
      std::printf("%s\n", out.dump(2).c_str());
    }
  } catch (const slitsim::NumericsError& e) {
    std::fprintf(stderr, "numerical abort: %s\n", e.what());
    return 3;
  } catch (const slitsim::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
