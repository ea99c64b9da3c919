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

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace superlind {

using Complex = std::complex<double>;

template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
using Vec3 = Vector3<double>;

// Dense complex matrix on the product Hilbert space (d x d) or on Liouville
// space (d^2 x d^2).
template <typename Scalar>
using ComplexMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using ComplexVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

using OperatorMatrix = ComplexMatrix<double>;
using Superoperator = ComplexMatrix<double>;

namespace constants {
inline constexpr double kSpeedOfLight = 299792458.0;      // m/s
inline constexpr double kHbar = 1.054571817e-34;          // J s
inline constexpr double kBoltzmann = 1.380649e-23;        // J/K
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace constants

inline double hz_to_angular(double hz) { return constants::kTwoPi * hz; }
inline double angular_to_hz(double omega) { return omega / constants::kTwoPi; }

}  // namespace superlind
