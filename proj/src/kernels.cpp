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

#include "superlind/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace superlind {

namespace {
// exp(-u^2) < 1e-35 beyond this point.
constexpr double kGaussianCutoff = 9.0;
constexpr double kQuadratureTolerance = 1e-10;
}  // namespace

double smoothed_theta(double omega_gap, double dt) {
  if (!(dt > 0.0)) throw std::domain_error("smoothed_theta: dt must be positive");
  if (omega_gap == 0.0) return 1.0;
  // Substituting x = dt u turns the ratio into (2/sqrt(pi)) int_0^inf sinc(z u) exp(-u^2) du.
  const double z = std::abs(omega_gap) * dt / 2.0;
  auto integrand = [z](double u) { return detail::sinc(z * u) * std::exp(-u * u); };
  double error = 0.0;
  double l1 = 0.0;
  const double integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      integrand, 0.0, kGaussianCutoff, 30, 1e-13, &error, &l1);
  const double value = integral * 2.0 / std::sqrt(std::numbers::pi);
  const double scaled_error = error * 2.0 / std::sqrt(std::numbers::pi);
  if (!(scaled_error <= kQuadratureTolerance * std::max(std::abs(value), 1e-300))) {
    std::ostringstream msg;
    msg << "smoothed_theta: quadrature did not reach relative tolerance " << kQuadratureTolerance
        << " (achieved " << scaled_error / std::abs(value) << ") for g*dt = " << omega_gap * dt;
    throw QuadratureError(msg.str(), scaled_error / std::abs(value));
  }
  return value;
}

double bose_occupation(double omega, double temperature) {
  if (!(omega > 0.0)) throw std::domain_error("bose_occupation: omega must be positive");
  if (temperature < 0.0) throw std::domain_error("bose_occupation: temperature must be non-negative");
  if (temperature == 0.0) return 0.0;
  const double x = constants::kHbar * omega / (constants::kBoltzmann * temperature);
  return 1.0 / std::expm1(x);
}

}  // namespace superlind
