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

#include <cstddef>
#include <iosfwd>

#include "superlind/kernels.hpp"
#include "superlind/model.hpp"

namespace superlind {

// Master-equation coefficients on the composite index c = alpha * T + i
// (emitter alpha, transition i, T transitions per emitter).
struct CoefficientSet {
  std::size_t num_emitters = 0;
  std::size_t num_transitions = 0;
  Eigen::MatrixXcd gamma;  // damping, rad/s
  // Coherent couplings, rad/s: intra-atomic shifts on diagonal emitter blocks,
  // interatomic exchange shifts on off-diagonal blocks.
  Eigen::MatrixXd shift;
  Eigen::MatrixXd thermal;  // n(omega_ij, T), transitions x transitions

  std::size_t index(std::size_t alpha, std::size_t i) const { return alpha * num_transitions + i; }
  std::size_t size() const { return num_emitters * num_transitions; }
};

// Resonance factor for transitions i, j: smoothed or bare sinc per config.
double resonance_factor(const SimConfig& config, std::size_t i, std::size_t j);

Complex damping_coefficient(const SimConfig& config, std::size_t alpha, std::size_t beta, std::size_t i,
                            std::size_t j);
double intra_shift(const SimConfig& config, std::size_t i, std::size_t j);
double inter_shift(const SimConfig& config, std::size_t alpha, std::size_t beta, std::size_t i, std::size_t j);

CoefficientSet build_coefficient_set(const SimConfig& config, const InterferenceToggles& toggles);
inline CoefficientSet build_coefficient_set(const SimConfig& config) {
  return build_coefficient_set(config, config.toggles);
}

// Long-format dump: alpha,beta,i,j,re,im,kind with kind in {gamma, shift, thermal}.
void write_coefficients_csv(std::ostream& out, const CoefficientSet& coeffs);

}  // namespace superlind
