// Copyright 2026 The superlind Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "superlind/run.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace superlind {
namespace {

namespace fs = std::filesystem;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

class Outputs {
 public:
  explicit Outputs(const std::string& dir) : dir_(dir) { fs::create_directories(dir_); }

  std::ofstream open(const std::string& name) {
    const fs::path path = dir_ / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    paths_.push_back(path.string());
    return out;
  }

  const std::vector<std::string>& paths() const { return paths_; }
  const fs::path& dir() const { return dir_; }

 private:
  fs::path dir_;
  std::vector<std::string> paths_;
};

SimConfig with_distance(const SimConfig& sim, double r) {
  SimConfig out = sim;
  Vec3 axis = Vec3::UnitX();
  if (sim.array.size() == 2) axis = sim.array.separation(1, 0).normalized();
  out.array.positions = {Vec3::Zero(), r * axis};
  return out;
}

std::size_t run_spectrum(const RunConfig& config, const RunOptions& options, Outputs& outputs, std::ostream& log) {
  std::vector<std::pair<std::string, SimConfig>> systems;
  if (config.sim.array.size() == 1) {
    systems.emplace_back("spectrum_single.csv", config.sim);
  } else if (config.spectrum_distances.empty()) {
    systems.emplace_back("spectrum.csv", config.sim);
  } else {
    for (double r : config.spectrum_distances) {
      systems.emplace_back("spectrum_r" + short_fmt(r) + ".csv", with_distance(config.sim, r));
    }
  }

  std::size_t failed = 0;
  for (const auto& [file, base] : systems) {
    std::vector<SpectrumTable> tables;
    for (Variant v : config.spectrum_variants) {
      SimConfig sim = base;
      sim.toggles = toggles_for(v);
      const DriveConfig drive = drive_for(config, sim);
      try {
        const SpectrumScanner scanner(sim, drive);
        SpectrumTable table;
        if (config.spectrum_refine) {
          table = adaptive_scan(scanner, config.grid, options.threads);
        } else {
          table = scan_detuning(scanner, default_detuning_grid(sim, scanner.coefficients(), config.grid),
                                options.threads);
        }
        table.variant = variant_name(v);
        log << "spectrum " << file << " variant=" << table.variant << " points=" << table.size() << "\n";
        tables.push_back(std::move(table));
      } catch (const ScanError& e) {
        ++failed;
        log << "FAILED spectrum " << file << " variant=" << variant_name(v)
            << " delta_hz=" << fmt(angular_to_hz(e.detuning())) << ": " << e.what() << "\n";
      }
    }
    std::ofstream out = outputs.open(file);
    write_spectrum_csv(out, tables);
  }
  return failed;
}

void log_shift_point(std::ostream& log, const std::string& label, const ShiftPoint& p) {
  log << label << " r_m=" << fmt(p.distance) << " shift12_hz=" << fmt(p.line12.value)
      << " shift13_hz=" << fmt(p.line13.value) << " converged=" << (p.converged ? "true" : "false");
  if (p.line12.slow_convergence || p.line13.slow_convergence) log << " slow_convergence";
  if (!p.message.empty()) log << " (" << p.message << ")";
  log << "\n";
  for (const DrivePoint& d : p.per_drive) {
    if (!d.exploratory) continue;
    log << "  exploratory three-line fit g_over_gamma=" << fmt(d.g_over_gamma)
        << " shift12_hz=" << fmt(d.exploratory_shift12_hz) << " shift13_hz=" << fmt(d.exploratory_shift13_hz)
        << " extra_line_hz=" << fmt(d.exploratory_extra_hz) << "\n";
  }
}

std::size_t run_shifts(const RunConfig& config, const RunOptions& options, Outputs& outputs, std::ostream& log) {
  if (config.shift_distances.empty()) throw ValidationError("shifts.distances_m", "must not be empty");
  const ShiftOptions shift = shift_options(config, options.threads, options.seed);
  std::size_t failed = 0;
  std::ofstream curves = outputs.open("shifts.csv");
  std::ofstream raw = outputs.open("shifts_raw.csv");
  std::ofstream exploratory = outputs.open("shifts_exploratory.csv");
  bool header = true;
  for (Variant v : config.shift_variants) {
    const std::string name = variant_name(v);
    const LineShiftCurve curve =
        sweep_distance(config.sim, config.shift_distances, v, shift,
                       [&](const ShiftPoint& p) { log_shift_point(log, "shifts variant=" + name, p); });
    for (bool ok : curve.converged) failed += ok ? 0 : 1;
    write_shift_csv(curves, curve, header);
    write_raw_shift_csv(raw, curve.points, name, header);
    write_exploratory_csv(exploratory, curve.points, name, header);
    header = false;
  }
  return failed;
}

std::size_t run_cg_scan(const RunConfig& config, const RunOptions& options, Outputs& outputs, std::ostream& log) {
  const ShiftOptions shift = shift_options(config, options.threads, options.seed);
  std::vector<double> distances = config.cg_distances;
  if (config.sim.array.size() == 1) distances = {0.0};
  std::size_t failed = 0;
  std::ofstream out = outputs.open("cg_scan.csv");
  bool header = true;
  for (double r : distances) {
    const SimConfig sim = r > 0.0 ? with_distance(config.sim, r) : config.sim;
    const CgScan scan = cg_sensitivity(sim, config.cg_times, shift, config.cg_variant);
    for (std::size_t k = 0; k < scan.points.size(); ++k) {
      ShiftPoint p = scan.points[k];
      p.distance = r;
      log_shift_point(log, "cg-scan dt_s=" + fmt(scan.dt[k]), p);
      failed += p.converged ? 0 : 1;
    }
    write_cg_csv(out, scan, r, header);
    header = false;
  }
  return failed;
}

std::size_t run_single_atom(const RunConfig& config, const RunOptions& options, Outputs& outputs,
                            std::ostream& log) {
  SimConfig sim = config.sim;
  sim.array = single_emitter();
  const ShiftOptions shift = shift_options(config, options.threads, options.seed);
  const ShiftPoint p = zero_drive_shift(sim, Variant::kFull, shift);

  std::ofstream out = outputs.open("single_atom.csv");
  out << "g_over_gamma,shift12_hz,shift13_hz,converged,kind\n";
  std::size_t failed = 0;
  for (const DrivePoint& d : p.per_drive) {
    out << fmt(d.g_over_gamma) << "," << fmt(d.shift12_hz) << "," << fmt(d.shift13_hz) << ","
        << (d.converged ? "true" : "false") << ",drive\n";
    log << "single-atom g_over_gamma=" << fmt(d.g_over_gamma) << " shift12_hz=" << fmt(d.shift12_hz)
        << " shift13_hz=" << fmt(d.shift13_hz) << " converged=" << (d.converged ? "true" : "false");
    if (!d.message.empty()) log << " (" << d.message << ")";
    log << "\n";
    failed += d.converged ? 0 : 1;
  }
  out << "0," << fmt(p.line12.value) << "," << fmt(p.line13.value) << "," << (p.converged ? "true" : "false")
      << ",extrapolated\n";
  log_shift_point(log, "single-atom extrapolated", p);
  if (!p.converged && failed == 0) failed = 1;
  return failed;
}

std::size_t run_coeffs(const RunConfig& config, Outputs& outputs, std::ostream& log) {
  const CoefficientSet coeffs = build_coefficient_set(config.sim);
  std::ofstream out = outputs.open("coefficients.csv");
  write_coefficients_csv(out, coeffs);
  log << "coeffs emitters=" << coeffs.num_emitters << " transitions=" << coeffs.num_transitions << "\n";
  return 0;
}

}  // namespace

std::string command_name(Command c) {
  switch (c) {
    case Command::kSpectrum: return "spectrum";
    case Command::kShifts: return "shifts";
    case Command::kCgScan: return "cg-scan";
    case Command::kSingleAtom: return "single-atom";
    case Command::kCoeffs: return "coeffs";
  }
  return "?";
}

Command parse_command(const std::string& name) {
  for (Command c : {Command::kSpectrum, Command::kShifts, Command::kCgScan, Command::kSingleAtom, Command::kCoeffs}) {
    if (command_name(c) == name) return c;
  }
  throw std::invalid_argument("unknown command '" + name + "'");
}

RunManifest run(Command command, const RunConfig& base_config, const RunOptions& options, std::ostream& log) {
  const auto start = std::chrono::steady_clock::now();

  RunConfig config = base_config;
  if (options.no_smoothing) config.sim.smoothing = Smoothing::kSinc;
  if (!options.variants.empty()) {
    config.spectrum_variants = options.variants;
    config.shift_variants = options.variants;
    if (command == Command::kCgScan && options.variants.size() != 1) {
      throw std::invalid_argument("cg-scan takes exactly one variant");
    }
    config.cg_variant = options.variants.front();
  }
  validate(config.sim);

  RunManifest manifest;
  manifest.command = command;
  manifest.config_hash = config_hash(config);

  Outputs outputs(options.out_dir);
  switch (command) {
    case Command::kSpectrum: manifest.failed_points = run_spectrum(config, options, outputs, log); break;
    case Command::kShifts: manifest.failed_points = run_shifts(config, options, outputs, log); break;
    case Command::kCgScan: manifest.failed_points = run_cg_scan(config, options, outputs, log); break;
    case Command::kSingleAtom: manifest.failed_points = run_single_atom(config, options, outputs, log); break;
    case Command::kCoeffs: manifest.failed_points = run_coeffs(config, outputs, log); break;
  }
  manifest.outputs = outputs.paths();
  manifest.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  nlohmann::ordered_json j;
  j["config_hash"] = manifest.config_hash;
  j["command"] = command_name(command);
  j["outputs"] = manifest.outputs;
  j["wall_time"] = manifest.wall_time;
  j["failed_points"] = manifest.failed_points;
  j["threads"] = options.threads;
  j["seed"] = options.seed;
  std::ofstream out(outputs.dir() / "manifest.json");
  if (!out) throw std::runtime_error("cannot write manifest.json");
  out << j.dump(2) << "\n";
  return manifest;
}

}  // namespace superlind
