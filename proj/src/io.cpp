#include "slitsim/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace slitsim {

namespace {

std::string fmt12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& payload) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open for writing: " + path.string());
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  if (!out) throw ConfigError("write failed: " + path.string());
}

}  // namespace

std::string fnv1a_hex(const std::string& payload) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : payload) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_intensity_csv(const std::filesystem::path& path,
                         const IntensityProfile& profile) {
  std::string s;
  s += "# config_hash=" + profile.config_hash + " steps=" +
       std::to_string(profile.steps) + " leaked=" + fmt12(profile.leaked_at_stop) +
       "\n";
  s += "x,intensity\n";
  for (std::size_t i = 0; i < profile.x.size(); ++i) {
    s += fmt12(profile.x[i]);
    s += ',';
    s += fmt12(profile.intensity[i]);
    s += '\n';
  }
  write_file(path, s);
}

IntensityProfile read_intensity_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open profile: " + path.string());
  IntensityProfile p;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto pos = line.find("config_hash=");
      if (pos != std::string::npos) {
        std::istringstream is(line.substr(pos + 12));
        is >> p.config_hash;
      }
      const auto spos = line.find("steps=");
      if (spos != std::string::npos) p.steps = std::atoll(line.c_str() + spos + 6);
      const auto lpos = line.find("leaked=");
      if (lpos != std::string::npos) p.leaked_at_stop = std::atof(line.c_str() + lpos + 7);
      continue;
    }
    if (!header_seen) {
      if (line.rfind("x,intensity", 0) != 0) {
        throw ConfigError("not an intensity profile (bad header): " + path.string());
      }
      header_seen = true;
      continue;
    }
    double x = 0.0, v = 0.0;
    if (std::sscanf(line.c_str(), "%lf,%lf", &x, &v) != 2) {
      throw ConfigError("malformed profile row in " + path.string() + ": " + line);
    }
    p.x.push_back(x);
    p.intensity.push_back(v);
  }
  if (p.x.empty()) throw ConfigError("empty profile: " + path.string());
  return p;
}

void write_phase_csv(const std::filesystem::path& path,
                     std::span<const SlitPhaseSample> series,
                     const std::string& config_hash) {
  std::string s = "# config_hash=" + config_hash + "\n";
  s += "step,t,cos_dphi,amp_a,amp_b,valid\n";
  for (const auto& r : series) {
    s += std::to_string(r.step);
    s += ',';
    s += fmt12(r.t);
    s += ',';
    s += fmt12(r.cos_dphi);
    s += ',';
    s += fmt12(r.amp_a);
    s += ',';
    s += fmt12(r.amp_b);
    s += ',';
    s += r.valid ? '1' : '0';
    s += '\n';
  }
  write_file(path, s);
}

void write_norm_csv(const std::filesystem::path& path,
                    std::span<const NormSample> series,
                    const std::string& config_hash) {
  std::string s = "# config_hash=" + config_hash + "\n";
  s += "step,t,norm2,leaked\n";
  for (const auto& r : series) {
    s += std::to_string(r.step);
    s += ',';
    s += fmt12(r.t);
    s += ',';
    s += fmt12(r.norm2);
    s += ',';
    s += fmt12(r.leaked);
    s += '\n';
  }
  write_file(path, s);
}

double write_pgm16(const std::filesystem::path& path, const ComplexField& psi,
                   const std::string& config_hash) {
  const int rows = psi.rows();
  const int cols = psi.cols();
  double peak = 0.0;
  for (const auto& v : psi.values()) peak = std::max(peak, std::norm(v));

  std::string s = "P5\n# config_hash=" + config_hash + "\n" +
                  std::to_string(cols) + " " + std::to_string(rows) + "\n65535\n";
  s.reserve(s.size() + static_cast<std::size_t>(rows) * cols * 2);
  const double scale = peak > 0.0 ? 65535.0 / peak : 0.0;
  // Row order top to bottom corresponds to decreasing i, so +y points up in
  // the rendered image.
  for (int i = rows - 1; i >= 0; --i) {
    for (int j = 0; j < cols; ++j) {
      const auto raw = static_cast<unsigned>(std::lround(std::norm(psi(i, j)) * scale));
      const unsigned v = raw > 65535u ? 65535u : raw;
      s += static_cast<char>((v >> 8) & 0xff);
      s += static_cast<char>(v & 0xff);
    }
  }
  write_file(path, s);
  return peak;
}

SnapshotWriter::SnapshotWriter(std::filesystem::path dir, std::string config_hash,
                               double tau)
    : dir_(std::move(dir)), config_hash_(std::move(config_hash)), tau_(tau) {
  std::filesystem::create_directories(dir_);
  index_ = "# config_hash=" + config_hash_ + "\nframe,step,t,max_abs2,file\n";
}

void SnapshotWriter::frame(const EvolutionState& state) {
  char name[32];
  std::snprintf(name, sizeof(name), "snap_%06d.pgm", frame_);
  const double peak = write_pgm16(dir_ / name, state.psi, config_hash_);
  index_ += std::to_string(frame_) + ',' + std::to_string(state.step) + ',' +
            fmt12(static_cast<double>(state.step) * tau_) + ',' + fmt12(peak) +
            ',' + name + '\n';
  frame_ += 1;
  write_file(dir_ / "index.csv", index_);
}

}  // namespace slitsim
