#include "slitsim/experiment.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "slitsim/io.hpp"

namespace slitsim {

using nlohmann::json;

namespace {

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const char* context) {
  if (!j.is_object()) {
    throw ConfigError(std::string("config section '") + context + "' must be an object");
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : allowed) {
      if (it.key() == k) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw ConfigError("unknown key '" + it.key() + "' in " + context);
    }
  }
}

template <typename T>
void read(const json& j, const char* key, T& value) {
  if (j.contains(key)) value = j.at(key).get<T>();
}

void read_pair(const json& j, const char* key, double& a, double& b,
               const char* context) {
  if (!j.contains(key)) return;
  const json& v = j.at(key);
  if (!v.is_array() || v.size() != 2) {
    throw ConfigError(std::string(key) + " in " + context + " must be [x, y]");
  }
  a = v[0].get<double>();
  b = v[1].get<double>();
}

const char* kind_name(BilliardKind k) {
  switch (k) {
    case BilliardKind::Square: return "square";
    case BilliardKind::SinaiRing: return "sinai_ring";
    case BilliardKind::RightTriangle: return "right_triangle";
    case BilliardKind::TriangleArc: return "triangle_arc";
  }
  return "square";
}

BilliardKind kind_from(const std::string& s) {
  if (s == "square") return BilliardKind::Square;
  if (s == "sinai_ring") return BilliardKind::SinaiRing;
  if (s == "right_triangle") return BilliardKind::RightTriangle;
  if (s == "triangle_arc") return BilliardKind::TriangleArc;
  throw ConfigError("unknown billiard shape '" + s + "'");
}

const char* orientation_name(TriangleOrientation o) {
  switch (o) {
    case TriangleOrientation::CathetusLeft: return "cathetus_left";
    case TriangleOrientation::CathetusRight: return "cathetus_right";
    case TriangleOrientation::Hypotenuse: return "hypotenuse";
  }
  return "cathetus_left";
}

TriangleOrientation orientation_from(const std::string& s) {
  if (s == "cathetus_left") return TriangleOrientation::CathetusLeft;
  if (s == "cathetus_right") return TriangleOrientation::CathetusRight;
  if (s == "hypotenuse") return TriangleOrientation::Hypotenuse;
  throw ConfigError("unknown triangle orientation '" + s + "'");
}

const char* ramp_name(AbsorberRamp r) {
  switch (r) {
    case AbsorberRamp::Linear: return "linear";
    case AbsorberRamp::Quadratic: return "quadratic";
    case AbsorberRamp::Cubic: return "cubic";
    case AbsorberRamp::Quartic: return "quartic";
  }
  return "quadratic";
}

AbsorberRamp ramp_from(const std::string& s) {
  if (s == "linear") return AbsorberRamp::Linear;
  if (s == "quadratic") return AbsorberRamp::Quadratic;
  if (s == "cubic") return AbsorberRamp::Cubic;
  if (s == "quartic") return AbsorberRamp::Quartic;
  throw ConfigError("unknown absorber ramp '" + s + "'");
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  check_keys(j, {"region", "billiard", "barrier", "slits", "absorber", "packet",
                 "stepper", "screen", "stopping", "observers", "output_dir"},
             "config");
  ExperimentConfig c;
  if (j.contains("region")) {
    const json& r = j.at("region");
    check_keys(r, {"height", "length", "delta", "span_above_slits"}, "region");
    read(r, "height", c.height);
    read(r, "length", c.length);
    read(r, "delta", c.delta);
    read(r, "span_above_slits", c.span_above_slits);
  }
  if (j.contains("billiard")) {
    const json& b = j.at("billiard");
    check_keys(b, {"shape", "side", "ring_center", "ring_radius", "orientation",
                   "arc_sagitta"},
               "billiard");
    std::string shape_name = kind_name(c.shape.kind);
    read(b, "shape", shape_name);
    c.shape.kind = kind_from(shape_name);
    read(b, "side", c.shape.side);
    read_pair(b, "ring_center", c.shape.ring_cx, c.shape.ring_cy, "billiard");
    read(b, "ring_radius", c.shape.ring_radius);
    if (b.contains("orientation")) {
      c.shape.orientation = orientation_from(b.at("orientation").get<std::string>());
    }
    read(b, "arc_sagitta", c.shape.arc_sagitta);
  }
  if (j.contains("barrier")) {
    const json& b = j.at("barrier");
    check_keys(b, {"height", "width"}, "barrier");
    read(b, "height", c.barrier_height);
    read(b, "width", c.barrier_width);
  }
  if (j.contains("slits")) {
    const json& s = j.at("slits");
    check_keys(s, {"width", "distance", "open_a", "open_b"}, "slits");
    read(s, "width", c.slits.width);
    read(s, "distance", c.slits.distance);
    read(s, "open_a", c.slits.open_a);
    read(s, "open_b", c.slits.open_b);
  }
  if (j.contains("absorber")) {
    const json& a = j.at("absorber");
    check_keys(a, {"width", "strength", "ramp"}, "absorber");
    read(a, "width", c.absorber.width);
    read(a, "strength", c.absorber.strength);
    if (a.contains("ramp")) c.absorber.ramp = ramp_from(a.at("ramp").get<std::string>());
  }
  if (j.contains("packet")) {
    const json& p = j.at("packet");
    check_keys(p, {"center", "k", "sigma"}, "packet");
    read_pair(p, "center", c.packet.x0, c.packet.y0, "packet");
    read_pair(p, "k", c.packet.kx, c.packet.ky, "packet");
    read(p, "sigma", c.packet.sigma);
  }
  if (j.contains("stepper")) {
    const json& s = j.at("stepper");
    check_keys(s, {"tau", "order", "check_stride", "drift_tolerance"}, "stepper");
    read(s, "tau", c.stepper.tau);
    read(s, "order", c.stepper.order);
    read(s, "check_stride", c.stepper.check_stride);
    read(s, "drift_tolerance", c.stepper.drift_tolerance);
  }
  if (j.contains("screen")) {
    const json& s = j.at("screen");
    check_keys(s, {"distance"}, "screen");
    read(s, "distance", c.screen_distance);
  }
  if (j.contains("stopping")) {
    const json& s = j.at("stopping");
    check_keys(s, {"max_steps", "leaked_target", "intensity_window_steps"},
               "stopping");
    read(s, "max_steps", c.stopping.max_steps);
    read(s, "leaked_target", c.stopping.leaked_target);
    read(s, "intensity_window_steps", c.stopping.intensity_window_steps);
  }
  if (j.contains("observers")) {
    const json& o = j.at("observers");
    check_keys(o, {"screen_stride", "phase_stride", "norm_stride",
                   "snapshot_stride", "phase_mode"},
               "observers");
    read(o, "screen_stride", c.observers.screen_stride);
    read(o, "phase_stride", c.observers.phase_stride);
    read(o, "norm_stride", c.observers.norm_stride);
    read(o, "snapshot_stride", c.observers.snapshot_stride);
    if (o.contains("phase_mode")) {
      const std::string m = o.at("phase_mode").get<std::string>();
      if (m == "node") {
        c.observers.phase_mode = SlitPhaseMode::NodeSample;
      } else if (m == "slit_average") {
        c.observers.phase_mode = SlitPhaseMode::SlitAverage;
      } else {
        throw ConfigError("unknown phase_mode '" + m + "'");
      }
    }
  }
  read(j, "output_dir", c.output_dir);
  return c;
}

ExperimentConfig ExperimentConfig::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config parse error in " + path.string() + ": " + e.what());
  }
  return from_json(j);
}

json ExperimentConfig::to_json() const {
  json b{{"shape", kind_name(shape.kind)}, {"side", shape.side}};
  if (shape.kind == BilliardKind::SinaiRing) {
    b["ring_center"] = {shape.ring_cx, shape.ring_cy};
    b["ring_radius"] = shape.ring_radius;
  }
  if (shape.kind == BilliardKind::RightTriangle ||
      shape.kind == BilliardKind::TriangleArc) {
    b["orientation"] = orientation_name(shape.orientation);
  }
  if (shape.kind == BilliardKind::TriangleArc) b["arc_sagitta"] = shape.arc_sagitta;

  return json{
      {"region",
       {{"height", height},
        {"length", length},
        {"delta", delta},
        {"span_above_slits", span_above_slits}}},
      {"billiard", b},
      {"barrier", {{"height", barrier_height}, {"width", barrier_width}}},
      {"slits",
       {{"width", slits.width},
        {"distance", slits.distance},
        {"open_a", slits.open_a},
        {"open_b", slits.open_b}}},
      {"absorber",
       {{"width", absorber.width},
        {"strength", absorber.strength},
        {"ramp", ramp_name(absorber.ramp)}}},
      {"packet",
       {{"center", {packet.x0, packet.y0}},
        {"k", {packet.kx, packet.ky}},
        {"sigma", packet.sigma}}},
      {"stepper",
       {{"tau", stepper.tau},
        {"order", stepper.order},
        {"check_stride", stepper.check_stride},
        {"drift_tolerance", stepper.drift_tolerance}}},
      {"screen", {{"distance", screen_distance}}},
      {"stopping",
       {{"max_steps", stopping.max_steps},
        {"leaked_target", stopping.leaked_target},
        {"intensity_window_steps", stopping.intensity_window_steps}}},
      {"observers",
       {{"screen_stride", observers.screen_stride},
        {"phase_stride", observers.phase_stride},
        {"norm_stride", observers.norm_stride},
        {"snapshot_stride", observers.snapshot_stride},
        {"phase_mode",
         observers.phase_mode == SlitPhaseMode::NodeSample ? "node" : "slit_average"}}},
      {"output_dir", output_dir}};
}

std::string ExperimentConfig::hash() const { return fnv1a_hex(to_json().dump()); }

ValidationReport validate_config(const ExperimentConfig& cfg) {
  ValidationReport rep;
  auto add = [&](const std::string& check, bool ok, bool warning,
                 const std::string& detail) {
    rep.issues.push_back({check, ok, warning, detail});
    if (!ok) rep.ok = false;
  };

  GridSpec grid;
  try {
    grid = make_grid(cfg.height, cfg.length, cfg.delta, cfg.span_above_slits);
    if (grid.nx < 8 || grid.ny < 8) {
      add("grid", false, false, "experiment grids need at least 8 cells per axis");
    } else {
      add("grid", true, false,
          std::to_string(grid.ny) + "x" + std::to_string(grid.nx) + " cells");
    }
  } catch (const Error& e) {
    add("grid", false, false, e.what());
    return rep;
  }

  const double half = 0.5 * cfg.shape.side;
  if (half > grid.x_max() + 1e-12 || -cfg.shape.side < grid.y_min() - 1e-12 ||
      grid.y_max() < -1e-12) {
    add("billiard_fit", false, false, "billiard does not fit inside the region");
    return rep;
  }

  PotentialField V;
  try {
    V = build_billiard(cfg.shape, cfg.barrier_height, cfg.barrier_width, grid);
    add("billiard", true, false, "");
  } catch (const Error& e) {
    add("billiard", false, false, e.what());
    return rep;
  }
  try {
    V = carve_slits(std::move(V), cfg.slits);
    add("slits", true, false, "");
  } catch (const Error& e) {
    add("slits", false, false, e.what());
    return rep;
  }
  try {
    V = build_absorber(std::move(V), cfg.absorber);
    add("absorber", true, false, "");
  } catch (const Error& e) {
    add("absorber", false, false, e.what());
    return rep;
  }

  try {
    ScreenRecord probe(grid, cfg.screen_distance, 1);
    const double inner_edge = grid.y_max() - cfg.absorber.width;
    if (probe.screen_y() > inner_edge + 1e-12) {
      add("screen", true, true, "screen row lies inside the absorbing layer");
    } else {
      add("screen", true, false, "");
    }
  } catch (const Error& e) {
    add("screen", false, false, e.what());
  }

  ComplexField psi0;
  try {
    psi0 = gaussian_packet(cfg.packet, grid);
    const double reach = 4.0 * cfg.packet.sigma;
    const bool support_inside =
        shape_contains(cfg.shape, cfg.packet.x0 - reach, cfg.packet.y0) &&
        shape_contains(cfg.shape, cfg.packet.x0 + reach, cfg.packet.y0) &&
        shape_contains(cfg.shape, cfg.packet.x0, cfg.packet.y0 - reach) &&
        shape_contains(cfg.shape, cfg.packet.x0, cfg.packet.y0 + reach);
    if (!support_inside) {
      add("packet_support", true, true,
          "4-sigma support reaches past the billiard walls");
    }
    double peak = 0.0;
    for (const auto& v : psi0.values()) peak = std::max(peak, std::abs(v));
    const double overlap = barrier_overlap(psi0, V);
    if (overlap > 1e-8 * peak) {
      std::ostringstream os;
      os << "initial packet overlaps the barrier (max |psi0| on barrier nodes = "
         << overlap << ")";
      add("packet_barrier_overlap", true, true, os.str());
    }
    add("packet", true, false, "");
  } catch (const Error& e) {
    add("packet", false, false, e.what());
    return rep;
  }

  try {
    Propagator probe(grid, cfg.stepper);
    add("stepper", true, false, "");
  } catch (const Error& e) {
    add("stepper", false, false, e.what());
  }

  // advisory: an unstable run is allowed to start and aborts through the
  // norm guard, which is the runtime error class of its own
  rep.stability = stability_report(grid, V, cfg.stepper);
  add("stability", true, !rep.stability.pass, rep.stability.summary());

  if (cfg.stopping.max_steps < 0 || !(cfg.stopping.leaked_target > 0.0) ||
      cfg.stopping.leaked_target > 1.0) {
    add("stopping", false, false, "max_steps must be >= 0 and leaked_target in (0, 1]");
  }
  if (cfg.observers.screen_stride < 1 || cfg.observers.phase_stride < 1 ||
      cfg.observers.norm_stride < 1 || cfg.observers.snapshot_stride < 0) {
    add("observers", false, false, "strides must be >= 1 (snapshot stride >= 0)");
  }

  rep.potential_defect = potential_symmetry_defect(V);
  rep.packet_defect = packet_symmetry_defect(psi0);
  rep.mirror_symmetry_satisfied =
      rep.potential_defect < 1e-12 && rep.packet_defect < 1e-12;
  return rep;
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (const auto& i : issues) {
    os << (i.ok ? (i.warning ? "[warn] " : "[ ok ] ") : "[FAIL] ") << i.check;
    if (!i.detail.empty()) os << ": " << i.detail;
    os << '\n';
  }
  os << "potential symmetry defect: " << potential_defect << '\n';
  os << "packet symmetry defect:    " << packet_defect << '\n';
  os << "mirror-symmetry condition: "
     << (mirror_symmetry_satisfied ? "satisfied -> expect interference fringes"
                                   : "violated -> expect perturbed or absent fringes")
     << '\n';
  return os.str();
}

namespace {

void write_manifest(const std::filesystem::path& dir, const ExperimentConfig& cfg,
                    const RunArtifacts& art, double wall_seconds,
                    const std::string& error) {
  json m{{"config", cfg.to_json()},
         {"config_hash", art.config_hash},
         {"stop_reason", art.stop_reason},
         {"steps", art.steps},
         {"t_final", static_cast<double>(art.steps) * cfg.stepper.tau},
         {"leaked_final", art.leaked_final},
         {"norm2_final", art.norm2_final},
         {"warnings", art.warnings},
         {"wall_time_s", wall_seconds},
         {"outputs", {"intensity.csv", "phase.csv", "norm.csv"}}};
  if (!error.empty()) m["error"] = error;
  std::ofstream out(dir / "manifest.json", std::ios::binary);
  out << m.dump(2) << '\n';
}

}  // namespace

RunArtifacts run_experiment(const ExperimentConfig& cfg) {
  const ValidationReport vr = validate_config(cfg);
  if (!vr.ok) {
    throw ConfigError("invalid configuration:\n" + vr.summary());
  }

  const auto wall_start = std::chrono::steady_clock::now();
  const GridSpec grid = make_grid(cfg.height, cfg.length, cfg.delta, cfg.span_above_slits);
  PotentialField V = build_billiard(cfg.shape, cfg.barrier_height, cfg.barrier_width, grid);
  V = carve_slits(std::move(V), cfg.slits);
  V = build_absorber(std::move(V), cfg.absorber);
  ComplexField psi0 = gaussian_packet(cfg.packet, grid);
  const std::vector<std::uint8_t> mask = interior_mask(cfg.shape, grid);

  RunArtifacts art;
  art.config_hash = cfg.hash();
  art.dir = cfg.output_dir;
  for (const auto& issue : vr.issues) {
    if (issue.warning) art.warnings.push_back(issue.check + ": " + issue.detail);
  }
  std::filesystem::create_directories(art.dir);

  double peak0 = 0.0;
  for (const auto& v : psi0.values()) peak0 = std::max(peak0, std::abs(v));

  ScreenRecord screen(grid, cfg.screen_distance, cfg.observers.screen_stride);
  screen.window_steps = cfg.stopping.intensity_window_steps;
  SlitPhaseRecorder phases(grid, cfg.slits, cfg.stepper.tau, 1e-8 * peak0,
                           cfg.observers.phase_mode, cfg.observers.phase_stride);
  std::optional<SnapshotWriter> snaps;
  if (cfg.observers.snapshot_stride > 0) {
    snaps.emplace(art.dir / "snapshots", art.config_hash, cfg.stepper.tau);
  }

  Propagator prop(grid, cfg.stepper);
  EvolutionState st = make_state(std::move(psi0));
  art.norm_series.push_back(
      {0, 0.0, st.diagnostics.initial_norm2, leaked_probability(st.psi, mask)});
  art.stop_reason = "max_steps";

  auto finish = [&](const std::string& error) {
    art.steps = st.step;
    art.norm2_final = norm_squared(st.psi);
    art.leaked_final = leaked_probability(st.psi, mask);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start)
            .count();
    art.intensity = make_profile(screen, art.config_hash, st.step, art.leaked_final);
    art.phase = phases.series();
    write_intensity_csv(art.dir / "intensity.csv", art.intensity);
    write_phase_csv(art.dir / "phase.csv", art.phase, art.config_hash);
    write_norm_csv(art.dir / "norm.csv", art.norm_series, art.config_hash);
    write_manifest(art.dir, cfg, art, wall, error);
  };

  try {
    for (std::int64_t s = 0; s < cfg.stopping.max_steps; ++s) {
      prop.step(st, V);
      if (st.step % cfg.observers.screen_stride == 0) screen.accumulate(st, cfg.stepper.tau);
      if (st.step % cfg.observers.phase_stride == 0) phases.sample(st);
      if (snaps && st.step % cfg.observers.snapshot_stride == 0) snaps->frame(st);
      if (st.step % cfg.observers.norm_stride == 0 || s + 1 == cfg.stopping.max_steps) {
        NormSample sample{st.step, st.time(cfg.stepper), norm_squared(st.psi),
                          leaked_probability(st.psi, mask)};
        art.norm_series.push_back(sample);
        if (sample.leaked >= cfg.stopping.leaked_target) {
          art.stop_reason = "leaked_target";
          break;
        }
      }
    }
  } catch (const NumericsError& e) {
    art.stop_reason = "abort";
    finish(e.what());
    throw;
  }
  finish("");
  return art;
}

OneSlitPairResult run_one_slit_pair(const ExperimentConfig& cfg) {
  if (!cfg.slits.open_a || !cfg.slits.open_b) {
    throw ConfigError("one-slit pair needs a two-slit base configuration");
  }
  ExperimentConfig only_a = cfg;
  only_a.slits.open_b = false;
  only_a.output_dir = (std::filesystem::path(cfg.output_dir) / "one_slit_a").string();
  ExperimentConfig only_b = cfg;
  only_b.slits.open_a = false;
  only_b.output_dir = (std::filesystem::path(cfg.output_dir) / "one_slit_b").string();

  OneSlitPairResult res;
  res.only_a = run_experiment(only_a);
  res.only_b = run_experiment(only_b);

  res.sum.x = res.only_a.intensity.x;
  res.sum.intensity.resize(res.sum.x.size());
  for (std::size_t i = 0; i < res.sum.x.size(); ++i) {
    res.sum.intensity[i] =
        res.only_a.intensity.intensity[i] + res.only_b.intensity.intensity[i];
  }
  res.sum.config_hash = cfg.hash();
  res.sum.steps = std::max(res.only_a.steps, res.only_b.steps);
  res.sum.leaked_at_stop = 0.5 * (res.only_a.leaked_final + res.only_b.leaked_final);
  std::filesystem::create_directories(cfg.output_dir);
  write_intensity_csv(std::filesystem::path(cfg.output_dir) / "intensity_sum.csv",
                      res.sum);

  const auto two_slit_path = std::filesystem::path(cfg.output_dir) / "intensity.csv";
  if (std::filesystem::exists(two_slit_path)) {
    const IntensityProfile two = read_intensity_csv(two_slit_path);
    res.compare_vs_two_slit =
        incoherent_sum_compare(two, res.only_a.intensity, res.only_b.intensity);
    json score{{"incoherent_sum_compare", *res.compare_vs_two_slit},
               {"two_slit", "intensity.csv"},
               {"only_a", "one_slit_a/intensity.csv"},
               {"only_b", "one_slit_b/intensity.csv"}};
    std::ofstream out(std::filesystem::path(cfg.output_dir) / "one_slit_compare.json",
                      std::ios::binary);
    out << score.dump(2) << '\n';
  }
  return res;
}

}  // namespace slitsim
