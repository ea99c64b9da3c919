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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "superlind/coefficients.hpp"
#include "superlind/liouvillian.hpp"
#include "superlind/steadystate.hpp"

namespace superlind {

class ScanError : public std::runtime_error {
 public:
  ScanError(const std::string& what, double detuning) : std::runtime_error(what), detuning_(detuning) {}
  double detuning() const { return detuning_; }

 private:
  double detuning_;
};

struct SpectrumTable {
  std::vector<double> detunings;  // rad/s, strictly increasing
  std::vector<double> signal;     // photon rate, rad/s
  InterferenceToggles toggles;
  std::string variant;
  std::uint64_t fingerprint = 0;

  std::size_t size() const { return detunings.size(); }
  std::vector<double> normalized() const;
};

// sum_{c,c'} Gamma_{cc'} zeta_{c'} ... zeta_c^dag, i.e. the operator whose
// expectation value is the total emission rate.
OperatorMatrix emission_operator(const CoefficientSet& coeffs, const std::vector<OperatorMatrix>& lowering);

double photon_signal(const OperatorMatrix& rho, const CoefficientSet& coeffs,
                     const std::vector<OperatorMatrix>& lowering);

// Steady states and signals of one configuration over laser detuning. The
// detuning-independent part of the generator is prepared once.
class SpectrumScanner {
 public:
  SpectrumScanner(const SimConfig& config, const DriveConfig& drive, const SolveOptions& options = {});

  double signal(double detuning) const;
  SteadyState steady_state(double detuning) const;
  Eigen::MatrixXd generator(double detuning) const { return base_ + detuning * slope_; }

  const SimConfig& config() const { return config_; }
  const CoefficientSet& coefficients() const { return coeffs_; }
  std::uint64_t fingerprint() const { return fingerprint_; }

 private:
  SimConfig config_;
  CoefficientSet coeffs_;
  HermitianBasis basis_;
  Eigen::MatrixXd base_;
  Eigen::MatrixXd slope_;
  Eigen::VectorXd emission_;
  SolveOptions options_;
  std::uint64_t fingerprint_ = 0;
};

SpectrumTable scan_detuning(const SpectrumScanner& scanner, const std::vector<double>& grid, unsigned threads = 1);
SpectrumTable scan_detuning(const SimConfig& config, const DriveConfig& drive, const std::vector<double>& grid,
                            unsigned threads = 1);

struct GridOptions {
  std::size_t points = 2001;
  double margin_gammas = 100.0;         // beyond the outermost transitions, in units of the largest decay rate
  double refine_half_width_gammas = 10.0;
  std::size_t refine_factor = 10;
};

// Uniform grid covering every transition plus a margin. The margin grows by
// twice the largest interatomic shift so collectively displaced lines stay
// inside the window.
std::vector<double> default_detuning_grid(const SimConfig& config, const CoefficientSet& coeffs,
                                          const GridOptions& options = {});

// Adds points at spacing (coarse spacing / factor) within +-half_width of each
// center. Returns a sorted grid without duplicates.
std::vector<double> refine_grid(const std::vector<double>& grid, const std::vector<double>& centers,
                                double half_width, std::size_t factor);

// Interior local maxima / minima, by index.
std::vector<std::size_t> local_maxima(const std::vector<double>& values);
std::vector<std::size_t> local_minima(const std::vector<double>& values);

// Largest local maximum below and above the midpoint between the first two
// transitions; either may be missing (returns SIZE_MAX).
std::pair<std::size_t, std::size_t> line_maxima(const SpectrumTable& table, double omega0);

// Coarse scan, then refinement around the dominant maximum of each line.
SpectrumTable adaptive_scan(const SpectrumScanner& scanner, const GridOptions& options = {}, unsigned threads = 1);

// Evaluates only the grid points missing from `table` and merges them in.
SpectrumTable extend_scan(const SpectrumScanner& scanner, const SpectrumTable& table,
                          const std::vector<double>& grid, unsigned threads = 1);

// delta_hz,signal,variant,signal_normalized
void write_spectrum_csv(std::ostream& out, const std::vector<SpectrumTable>& tables, bool header = true);

}  // namespace superlind
