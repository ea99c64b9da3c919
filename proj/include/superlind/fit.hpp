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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "superlind/spectrum.hpp"

namespace superlind {

class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two Lorentzians, the second centred at omega0 + x3:
//   a/pi * (b/2) / ((x - x_c)^2 + (b/2)^2)
struct FitResult {
  double a2 = 0.0, b2 = 0.0, x2 = 0.0;
  double a3 = 0.0, b3 = 0.0, x3 = 0.0;
  double residual_norm = 0.0;  // ||model - data|| / ||data||
  double peak_residual = 0.0;  // max |model - data| / max(data)
  bool converged = false;
  int iterations = 0;
  std::string message;
};

struct FitOptions {
  double omega0 = 0.0;         // separation of the two lines, rad/s
  double default_width = 0.0;  // fallback full width, rad/s
  int max_iterations = 500;
  double gradient_tolerance = 1e-12;
};

// area/pi * (width/2) / ((x - center)^2 + (width/2)^2)
struct LorentzianLine {
  double area = 0.0;
  double width = 0.0;   // full width at half maximum
  double center = 0.0;
};

struct LorentzianSumFit {
  std::vector<LorentzianLine> lines;
  double residual_norm = 0.0;
  double peak_residual = 0.0;
  bool converged = false;
  int iterations = 0;
  std::string message;
};

FitOptions fit_options_for(const LevelScheme& scheme);

double double_lorentzian(const FitResult& p, double omega0, double x);

// Initial parameters from the dominant maximum of each line.
FitResult auto_initial_guess(const std::vector<double>& x, const std::vector<double>& y, const FitOptions& options);

FitResult fit_double_lorentzian(const std::vector<double>& x, const std::vector<double>& y,
                                const FitOptions& options, const std::optional<FitResult>& init = std::nullopt);
FitResult fit_double_lorentzian(const SpectrumTable& table, const FitOptions& options,
                                const std::optional<FitResult>& init = std::nullopt);


double lorentzian_sum(const std::vector<LorentzianLine>& lines, double x);

// Levenberg-Marquardt on a sum of init.size() Lorentzians.
LorentzianSumFit fit_lorentzian_sum(const std::vector<double>& x, const std::vector<double>& y,
                                    const std::vector<LorentzianLine>& init, const FitOptions& options);

// Exploratory fit with a third line seeded at the largest positive residual of
// `two_line`. Lines 0 and 1 start from the two-line solution.
LorentzianSumFit fit_three_lorentzian(const std::vector<double>& x, const std::vector<double>& y,
                                      const FitResult& two_line, const FitOptions& options);

// ((x2' - x2) / 2pi, (x3' - x3) / 2pi) in Hz. Throws FitError if either fit
// did not converge.
std::pair<double, double> line_shift(const FitResult& full, const FitResult& reference);

}  // namespace superlind
