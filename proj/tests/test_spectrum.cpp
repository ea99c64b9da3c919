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
#include <limits>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>

#include "doctest.h"
#include "oracles.hpp"
#include "superlind/spectrum.hpp"

using namespace superlind;
using superlind::testing::preset_config;
using superlind::testing::two_level_config;
using superlind::testing::two_level_excited_population;
using superlind::testing::uniform_drive;

namespace {

// sum_{c,c'} Gamma_{cc'} Tr(rho s_c^dag s_c') with the jump operators built
// directly as Kronecker products.
double brute_force_signal(const OperatorMatrix& rho, const CoefficientSet& coeffs) {
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(3, 3);
  std::vector<Eigen::MatrixXcd> ops;
  for (int a = 0; a < 2; ++a) {
    for (int up = 1; up <= 2; ++up) {
      Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(3, 3);
      s(0, up) = 1.0;
      ops.push_back(a == 0 ? Eigen::kroneckerProduct(s, id).eval() : Eigen::kroneckerProduct(id, s).eval());
    }
  }
  Complex total = 0.0;
  for (int c = 0; c < 4; ++c) {
    for (int e = 0; e < 4; ++e) {
      for (int p = 0; p < 9; ++p) {
        for (int q = 0; q < 9; ++q) {
          Complex m = 0.0;
          for (int r = 0; r < 9; ++r) m += std::conj(ops[c](r, p)) * ops[e](r, q);
          total += coeffs.gamma(c, e) * rho(q, p) * m;
        }
      }
    }
  }
  return total.real();
}

}  // namespace

TEST_CASE("photon signal limits") {
  const SimConfig c = preset_config(1e-7);
  const CoefficientSet coeffs = build_coefficient_set(c);
  const auto zeta = lowering_operators(c.scheme, 2);
  OperatorMatrix g = OperatorMatrix::Zero(9, 9);
  g(0, 0) = 1.0;
  CHECK(photon_signal(g, coeffs, zeta) == 0.0);

  const double gamma = 3.0;
  const SimConfig t = two_level_config(gamma);
  const SpectrumScanner scanner(t, uniform_drive(t, 0.5));
  const double rho_ee = two_level_excited_population(gamma, 0.5, 0.7);
  CHECK(scanner.signal(0.7) == doctest::Approx(gamma * rho_ee).epsilon(1e-10));
}

TEST_CASE("signal matches an explicit double sum") {
  const SimConfig c = preset_config(0.02e-6);
  const double g = 2.0 * c.scheme.transitions[1].decay_rate;
  const DriveConfig d = make_drive(c, amplitude_ratio_profile(c.scheme, 1), g, 3e6);
  const SpectrumScanner scanner(c, d);
  const SteadyState s = scanner.steady_state(3e6);
  const double oracle = brute_force_signal(s.rho, scanner.coefficients());
  CHECK(scanner.signal(3e6) == doctest::Approx(oracle).epsilon(1e-10));
  CHECK(photon_signal(s.rho, scanner.coefficients(), lowering_operators(c.scheme, 2)) ==
        doctest::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("scanner agrees with direct assembly") {
  const SimConfig c = preset_config(0.05e-6);
  const DriveConfig d = make_drive(c, amplitude_ratio_profile(c.scheme, 1), 1e7, 0.0);
  const SpectrumScanner scanner(c, d);
  for (double delta : {-2e7, 1e6, 8.5e9}) {
    DriveConfig dd = d;
    dd.detuning = delta;
    const SteadyState direct = solve_null_space(assemble_liouvillian(c, dd));
    CHECK((scanner.steady_state(delta).rho - direct.rho).norm() < 1e-10);
  }
}

TEST_CASE("distant uncoupled emitters radiate independently") {
  SimConfig pair = preset_config(100.0 * 0.468e-6);
  pair.toggles = InterferenceToggles::all_off();
  SimConfig single = preset_config(0.0);
  single.toggles = InterferenceToggles::all_off();
  const double g = 3.0 * single.scheme.transitions[1].decay_rate;
  const DriveProfile p = amplitude_ratio_profile(single.scheme, 1);
  const SpectrumScanner s2(pair, make_drive(pair, p, g));
  const SpectrumScanner s1(single, make_drive(single, p, g));
  for (double delta : {-5e6, 0.0, 4e6, 8.59e9}) {
    CHECK(s2.signal(delta) == doctest::Approx(2.0 * s1.signal(delta)).epsilon(1e-6));
  }
}

TEST_CASE("signal is invariant under emitter exchange") {
  SimConfig a = preset_config(0.03e-6);
  a.array.positions[1] = Vec3(0.02e-6, 0.01e-6, 0.0);
  SimConfig b = a;
  std::swap(b.array.positions[0], b.array.positions[1]);
  const DriveProfile p = amplitude_ratio_profile(a.scheme, 1);
  const double g = 5.0 * a.scheme.transitions[1].decay_rate;
  const SpectrumScanner sa(a, make_drive(a, p, g));
  const SpectrumScanner sb(b, make_drive(b, p, g));
  for (double delta : {-1e7, 0.0, 8.6e9}) {
    CHECK(sa.signal(delta) == doctest::Approx(sb.signal(delta)).epsilon(1e-10));
  }
}

TEST_CASE("weak-drive signal is quadratic in the drive") {
  const SimConfig c = preset_config(0.1e-6);
  const DriveProfile p = amplitude_ratio_profile(c.scheme, 1);
  const double gamma = c.scheme.transitions[1].decay_rate;
  const double s1 = SpectrumScanner(c, make_drive(c, p, 1e-4 * gamma)).signal(0.0);
  const double s2 = SpectrumScanner(c, make_drive(c, p, 2e-4 * gamma)).signal(0.0);
  CHECK(s2 / s1 == doctest::Approx(4.0).epsilon(1e-6));
}

TEST_CASE("grid helpers") {
  const SimConfig c = preset_config(0.1e-6);
  const CoefficientSet coeffs = build_coefficient_set(c);
  GridOptions o;
  o.points = 101;
  const std::vector<double> grid = default_detuning_grid(c, coeffs, o);
  REQUIRE(grid.size() == 101);
  const double gmax = c.scheme.transitions[1].decay_rate;
  const double w0 = transition_offset(c.scheme, 1);
  CHECK(grid.front() <= -100.0 * gmax);
  CHECK(grid.back() >= w0 + 100.0 * gmax);
  CHECK(std::is_sorted(grid.begin(), grid.end()));

  const std::vector<double> fine = refine_grid(grid, {0.0, w0}, 10.0 * gmax, 10);
  CHECK(fine.size() > grid.size());
  CHECK(std::adjacent_find(fine.begin(), fine.end(), [](double a, double b) { return !(b > a); }) == fine.end());
  CHECK(fine.front() == grid.front());
  CHECK(fine.back() == grid.back());

  const std::vector<double> v{0, 2, 1, 3, 3, 0, -1, 4};
  CHECK(local_maxima(v) == std::vector<std::size_t>{1, 3});
  CHECK(local_minima(v) == std::vector<std::size_t>{2, 6});
}

TEST_CASE("scan rejects unsorted grids") {
  const SimConfig t = two_level_config(1.0);
  CHECK_THROWS_AS(scan_detuning(t, uniform_drive(t, 0.1), {0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(scan_detuning(t, uniform_drive(t, 0.1), {}), std::invalid_argument);
}

TEST_CASE("scan over threads is identical") {
  const SimConfig c = preset_config(0.1e-6);
  const SpectrumScanner s(c, make_drive(c, amplitude_ratio_profile(c.scheme, 1), 1e6));
  std::vector<double> grid;
  for (int k = 0; k < 40; ++k) grid.push_back(-1e8 + 2.3e8 * k);
  const SpectrumTable one = scan_detuning(s, grid, 1);
  const SpectrumTable three = scan_detuning(s, grid, 3);
  CHECK(one.signal == three.signal);
}

TEST_CASE("two well-separated lines at moderate separation") {
  const SimConfig c = preset_config(0.1e-6);
  const double gamma3 = c.scheme.transitions[1].decay_rate;
  const SpectrumScanner s(c, make_drive(c, amplitude_ratio_profile(c.scheme, 1), 20.0 * gamma3));
  const SpectrumTable t = adaptive_scan(s);
  const double w0 = transition_offset(c.scheme, 1);
  const auto [lo, hi] = line_maxima(t, w0);
  REQUIRE(lo != std::numeric_limits<std::size_t>::max());
  REQUIRE(hi != std::numeric_limits<std::size_t>::max());
  CHECK(std::abs(t.detunings[lo]) < 5.0 * gamma3);
  CHECK(std::abs(t.detunings[hi] - w0) < 5.0 * gamma3);

  std::ostringstream out;
  SpectrumTable named = t;
  named.variant = "full";
  write_spectrum_csv(out, {named});
  CHECK(out.str().rfind("delta_hz,signal,variant,signal_normalized\n", 0) == 0);
}
