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

// Line-shift pipeline: scan the reference and the variant spectra on a shared
// grid, fit both, difference the centers, and extrapolate to zero drive.

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "superlind/fit.hpp"
#include "superlind/spectrum.hpp"

namespace superlind {

struct Extrapolation {
  double value = 0.0;   // shift at g = 0
  double slope = 0.0;   // coefficient of g^2
  double spread = 0.0;  // |value - value without the strongest drive|
  bool slow_convergence = false;
};

// Least-squares fit of shift = value + slope * g^2. Needs at least 3 points.
Extrapolation extrapolate_zero_drive(const std::vector<std::pair<double, double>>& g_shift);

struct ShiftOptions {
  // Drive strengths in units of the reference transition's decay rate.
  std::vector<double> drive_over_gamma{0.3, 0.1, 0.03, 0.01};
  DriveProfile profile;  // empty relative list: amplitude ratios on transition 1
  GridOptions grid;
  FitOptions fit;  // omega0 == 0: derived from the scheme
  unsigned threads = 1;
  double noise_relative = 0.0;  // multiplicative Gaussian noise added before fitting
  std::uint64_t seed = 0;
};

struct DrivePoint {
  double g_over_gamma = 0.0;
  double shift12_hz = 0.0;
  double shift13_hz = 0.0;
  bool converged = false;
  FitResult full;
  FitResult reference;
  std::string message;

  // Three-line fit of the variant spectrum, run when its two-line fit failed
  // or left a peak residual above kExploratoryResidual. Reported on its own;
  // the shifts above never use it.
  std::optional<LorentzianSumFit> exploratory;
  double exploratory_shift12_hz = 0.0;
  double exploratory_shift13_hz = 0.0;
  double exploratory_extra_hz = 0.0;  // centre of the additional line, detuning in Hz
};

inline constexpr double kExploratoryResidual = 0.05;

struct ShiftPoint {
  double distance = 0.0;  // m; 0 for a single emitter
  Extrapolation line12;   // Hz
  Extrapolation line13;   // Hz
  std::vector<DrivePoint> per_drive;
  bool converged = false;
  std::string message;
};

// Reference fits keyed by drive index; they do not depend on the
// coarse-graining time, so scans over it can share them.
struct ReferenceCache {
  std::map<std::size_t, std::pair<SpectrumTable, FitResult>> entries;
};

ShiftPoint zero_drive_shift(const SimConfig& config, Variant variant, const ShiftOptions& options,
                            ReferenceCache* cache = nullptr);

struct LineShiftCurve {
  std::vector<double> distances;  // m
  std::vector<double> shift_12;   // Hz
  std::vector<double> shift_13;   // Hz
  std::vector<bool> converged;
  Variant variant = Variant::kFull;
  std::vector<ShiftPoint> points;
};

using ProgressFn = std::function<void(const ShiftPoint&)>;

// Places two emitters at each distance along the template's separation axis
// (x if the template is not a pair). Failed points are kept with
// converged = false.
LineShiftCurve sweep_distance(const SimConfig& config_template, const std::vector<double>& r_grid, Variant variant,
                              const ShiftOptions& options, const ProgressFn& progress = {});

struct CgRow {
  double dt = 0.0;
  double dt_next = 0.0;
  double rel_shift_line1 = 0.0;  // |(x(dt) - x(dt_next)) / x(dt)|
  double rel_shift_line2 = 0.0;
};

struct CgScan {
  std::vector<double> dt;
  std::vector<ShiftPoint> points;
  std::vector<CgRow> rows;
};

// Zero-drive shifts of `variant` against the no-cross reference for each
// coarse-graining time, and the consecutive-pair relative changes.
CgScan cg_sensitivity(const SimConfig& config_template, const std::vector<double>& dt_list,
                      const ShiftOptions& options, Variant variant = Variant::kFull);

std::vector<double> default_cg_times();

// Single-excitation resonances of a two-emitter system, from the effective
// non-Hermitian Hamiltonian.
struct Resonance {
  double detuning = 0.0;  // rad/s
  double width = 0.0;     // full width, rad/s
  bool symmetric = true;  // exchange-symmetric (superradiant) branch
};
std::vector<Resonance> single_excitation_resonances(const SimConfig& config);

struct Extremum {
  double detuning = 0.0;
  double height = 0.0;
  double ratio = 0.0;  // height / superradiant peak height
  bool maximum = true;
};

struct SubradiantReport {
  std::vector<Resonance> resonances;
  double superradiant_peak = 0.0;
  std::vector<Extremum> extrema;       // local extrema near antisymmetric resonances
  std::vector<double> resonance_ratio;  // signal at each antisymmetric resonance / superradiant peak
  SpectrumTable table;
};

SubradiantReport subradiant_analysis(const SimConfig& config, const DriveConfig& drive, const GridOptions& grid,
                                     unsigned threads = 1);

void write_shift_csv(std::ostream& out, const LineShiftCurve& curve, bool header = true);
void write_raw_shift_csv(std::ostream& out, const std::vector<ShiftPoint>& points, const std::string& variant,
                         bool header = true);
// Rows for the drive points that ran the exploratory three-line fit.
void write_exploratory_csv(std::ostream& out, const std::vector<ShiftPoint>& points, const std::string& variant,
                           bool header = true);
void write_cg_csv(std::ostream& out, const CgScan& scan, double distance, bool header = true);

}  // namespace superlind
