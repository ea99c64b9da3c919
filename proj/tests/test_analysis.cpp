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


#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "oracles.hpp"
#include "superlind/analysis.hpp"

using namespace superlind;
using superlind::testing::preset_config;
using superlind::testing::uniform_drive;

TEST_CASE("zero-drive extrapolation") {
  const std::vector<std::pair<double, double>> flat{{0.3, 5.0}, {0.1, 5.0}, {0.03, 5.0}, {0.01, 5.0}};
  const Extrapolation e = extrapolate_zero_drive(flat);
  CHECK(e.value == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(std::abs(e.slope) < 1e-12);
  CHECK(e.spread < 1e-12);
  CHECK_FALSE(e.slow_convergence);

  std::vector<std::pair<double, double>> quad;
  for (double g : {0.3, 0.1, 0.03, 0.01}) quad.emplace_back(g, -195.0 + 40.0 * g * g);
  const Extrapolation q = extrapolate_zero_drive(quad);
  CHECK(std::abs(q.value + 195.0) < 1e-10 * 195.0);
  CHECK(q.slope == doctest::Approx(40.0).epsilon(1e-10));

  // A quartic term makes dropping the strongest drive move the intercept.
  std::vector<std::pair<double, double>> bent;
  for (double g : {3.0, 1.0, 0.3, 0.1}) bent.emplace_back(g, 1.0 + 2.0 * g * g * g * g);
  CHECK(extrapolate_zero_drive(bent).slow_convergence);

  CHECK_THROWS(extrapolate_zero_drive({{0.1, 1.0}, {0.2, 2.0}}));
}

TEST_CASE("single-excitation resonances match the full Hamiltonian block") {
  const SimConfig c = preset_config(0.02e-6);
  const std::vector<Resonance> res = single_excitation_resonances(c);
  REQUIRE(res.size() == 4);

  // Effective Hamiltonian from the rotating-frame Hamiltonian at zero drive
  // and the anti-Hermitian part of the dissipator, restricted to the states
  // with one excitation.
  const CoefficientSet coeffs = build_coefficient_set(c);
  const OperatorMatrix h = rotating_frame_hamiltonian(c, coeffs, uniform_drive(c, 0.0));
  const auto zeta = lowering_operators(c.scheme, 2);
  OperatorMatrix decay = OperatorMatrix::Zero(9, 9);
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) decay += coeffs.gamma(a, b) * zeta[a].adjoint() * zeta[b];
  }
  const OperatorMatrix full = h - Complex(0.0, 0.5) * decay;
  const std::vector<int> one{1, 2, 3, 6};
  Eigen::MatrixXcd block(4, 4);
  for (int r = 0; r < 4; ++r) {
    for (int s = 0; s < 4; ++s) block(r, s) = full(one[r], one[s]);
  }
  Eigen::VectorXcd ev = Eigen::ComplexEigenSolver<Eigen::MatrixXcd>(block).eigenvalues();
  std::vector<Complex> sorted(ev.data(), ev.data() + 4);
  std::sort(sorted.begin(), sorted.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
  const double scale = c.scheme.transitions[1].decay_rate;
  for (int k = 0; k < 4; ++k) {
    CHECK(std::abs(res[k].detuning - sorted[k].real()) < 1e-9 * std::max(scale, std::abs(sorted[k].real())));
    CHECK(std::abs(res[k].width + 2.0 * sorted[k].imag()) < 1e-9 * scale);
  }
  // Symmetric states radiate faster than antisymmetric ones on each line.
  CHECK(res[0].symmetric != res[1].symmetric);
  CHECK(res[2].symmetric != res[3].symmetric);
}

TEST_CASE("line shifts vanish without cross terms") {
  ShiftOptions o;
  o.grid.points = 801;
  const SimConfig single = preset_config(0.0);
  const ShiftPoint p = zero_drive_shift(single, Variant::kNoCross, o);
  REQUIRE(p.converged);
  CHECK(p.line12.value == 0.0);
  CHECK(p.line13.value == 0.0);
  REQUIRE(p.per_drive.size() == 4);
}

TEST_CASE("interatomic cross terms fade at large separation") {
  ShiftOptions o;
  o.grid.points = 801;
  o.drive_over_gamma = {0.1, 0.03, 0.01};
  const ShiftPoint p = zero_drive_shift(preset_config(1e-3), Variant::kCaseII, o);
  REQUIRE(p.converged);
  CHECK(std::abs(p.line12.value) < 1.0);
  CHECK(std::abs(p.line13.value) < 1.0);
}

TEST_CASE("coarse-graining scan bookkeeping") {
  ShiftOptions o;
  o.grid.points = 801;
  o.drive_over_gamma = {0.1, 0.03, 0.01};
  const SimConfig single = preset_config(0.0);
  const CgScan same = cg_sensitivity(single, {1e-11, 1e-11}, o);
  REQUIRE(same.rows.size() == 1);
  CHECK(same.rows[0].rel_shift_line1 == 0.0);
  CHECK(same.rows[0].rel_shift_line2 == 0.0);
  CHECK(same.rows[0].dt_next == 1e-11);

  // The shared reference reproduces an uncached computation.
  SimConfig other = single;
  other.coarse_grain_dt = 1e-10;
  const CgScan scan = cg_sensitivity(single, {1e-11, 1e-10}, o);
  const ShiftPoint direct = zero_drive_shift(other, Variant::kFull, o);
  CHECK(scan.points[1].line12.value == direct.line12.value);
  CHECK(scan.points[1].line13.value == direct.line13.value);
  CHECK_THROWS(cg_sensitivity(single, {1e-11}, o));
  CHECK(default_cg_times() == std::vector<double>{1e-8, 1e-9, 1e-10, 1e-11, 1e-12});
}

TEST_CASE("result tables") {
  LineShiftCurve curve;
  curve.variant = Variant::kCrossShiftOnly;
  ShiftPoint p;
  p.distance = 2e-8;
  p.line12.value = -10.5;
  p.line13.value = 20.25;
  p.converged = true;
  curve.points = {p};
  curve.distances = {2e-8};
  curve.shift_12 = {-10.5};
  curve.shift_13 = {20.25};
  curve.converged = {true};
  std::ostringstream out;
  write_shift_csv(out, curve);
  CHECK(out.str() == "r_m,shift12_hz,shift13_hz,variant,converged,spread12_hz,spread13_hz\n"
                     "2e-08,-10.5,20.25,cross-shift-only,true,0,0\n");

  std::ostringstream raw;
  write_raw_shift_csv(raw, curve.points, "full");
  CHECK(raw.str() == "r_m,g_over_gamma,shift12_hz,shift13_hz,variant,converged\n");

  ShiftPoint point;
  point.distance = 1e-8;
  DrivePoint plain;
  plain.g_over_gamma = 0.3;
  DrivePoint explored;
  explored.g_over_gamma = 0.1;
  explored.full.peak_residual = 0.125;
  explored.exploratory = LorentzianSumFit{};
  explored.exploratory->converged = true;
  explored.exploratory_shift12_hz = -3.5;
  explored.exploratory_shift13_hz = 4.0;
  explored.exploratory_extra_hz = 2e6;
  point.per_drive = {plain, explored};
  std::ostringstream ex;
  write_exploratory_csv(ex, {point}, "full");
  CHECK(ex.str() == "r_m,g_over_gamma,shift12_hz,shift13_hz,extra_line_hz,two_line_peak_residual,variant,converged\n"
                    "1e-08,0.10000000000000001,-3.5,4,2000000,0.125,full,true\n");

  CgScan scan;
  scan.rows.push_back({1e-9, 1e-10, 0.5, 0.25});
  std::ostringstream cg;
  write_cg_csv(cg, scan, 1e-7);
  CHECK(cg.str() == "dt_s,rel_shift_line1,rel_shift_line2,dt_next_s,r_m\n1.0000000000000001e-09,0.5,0.25,1e-10,9.9999999999999995e-08\n");
}
