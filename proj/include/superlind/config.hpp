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

// Run configuration in a small TOML subset: `[section]` headers, `key = value`
// lines, `#` comments, values that are numbers, booleans, quoted strings or
// single-line arrays of those. Frequency keys take a `_hz` suffix (Hz) or a
// `_rad_s` suffix (rad/s); everything is stored in rad/s. The canonical
// serialization uses `_rad_s` so that it round-trips bit-exactly.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "superlind/analysis.hpp"
#include "superlind/model.hpp"
#include "superlind/spectrum.hpp"

namespace superlind {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct DriveSpec {
  std::size_t reference_transition = 1;
  double rabi_over_gamma = 20.0;  // used when rabi is unset
  std::optional<double> rabi;     // rad/s
  std::vector<double> rabi_ratio;  // per transition; empty: dipole amplitude ratio
  double detuning = 0.0;           // rad/s
};

struct RunConfig {
  SimConfig sim;
  DriveSpec drive;
  GridOptions grid;

  std::vector<double> spectrum_distances{1e-8, 1e-7};
  std::vector<Variant> spectrum_variants{Variant::kFull, Variant::kNoCross, Variant::kCaseI, Variant::kCaseII};
  bool spectrum_refine = true;

  std::vector<double> shift_distances;
  std::vector<Variant> shift_variants{Variant::kFull};
  std::vector<double> drive_over_gamma{0.3, 0.1, 0.03, 0.01};

  std::vector<double> cg_distances{1e-7, 1e-6};
  std::vector<double> cg_times{1e-8, 1e-9, 1e-10, 1e-11, 1e-12};
  Variant cg_variant = Variant::kFull;

  double noise_relative = 0.0;
};

RunConfig default_run_config();

RunConfig parse_config_string(const std::string& text);
RunConfig parse_config(const std::string& path);

// Canonical text form: every field explicit, numbers at 17 significant digits.
std::string serialize_config(const RunConfig& config);

// FNV-1a 64-bit digest of the canonical serialization, as 16 hex digits.
std::string config_hash(const RunConfig& config);

DriveProfile drive_profile(const RunConfig& config);
DriveConfig drive_for(const RunConfig& config, const SimConfig& sim);
ShiftOptions shift_options(const RunConfig& config, unsigned threads, std::uint64_t seed);

}  // namespace superlind
