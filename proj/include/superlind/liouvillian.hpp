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
#include <vector>

#include "superlind/coefficients.hpp"
#include "superlind/model.hpp"
#include "superlind/superop.hpp"

namespace superlind {

// Largest Liouville-space dimension accepted by the dense builders.
inline constexpr std::size_t kMaxLiouvilleDimension = 1000000;

std::size_t hilbert_dimension(const LevelScheme& scheme, std::size_t num_emitters);

// |ground><upper| of `transition` acting on emitter alpha.
OperatorMatrix lowering_operator(const LevelScheme& scheme, std::size_t num_emitters, std::size_t alpha,
                                 std::size_t transition);

// All lowering operators in composite order alpha * T + i.
std::vector<OperatorMatrix> lowering_operators(const LevelScheme& scheme, std::size_t num_emitters);

// Sum over emitters of the projectors onto every upper level; multiplies the
// laser detuning in the rotating frame.
OperatorMatrix excitation_number(const LevelScheme& scheme, std::size_t num_emitters);

// H / hbar in the frame rotating at the laser frequency.
OperatorMatrix rotating_frame_hamiltonian(const SimConfig& config, const CoefficientSet& coeffs,
                                          const DriveConfig& drive);
OperatorMatrix rotating_frame_hamiltonian(const SimConfig& config, const DriveConfig& drive);

Superoperator dissipator_superoperator(const CoefficientSet& coeffs, const std::vector<OperatorMatrix>& lowering);

Superoperator assemble_liouvillian(const SimConfig& config, const CoefficientSet& coeffs, const DriveConfig& drive);
Superoperator assemble_liouvillian(const SimConfig& config, const DriveConfig& drive);

// L(detuning) = base + detuning * generator. Used by detuning scans so the
// detuning-independent part is assembled once.
struct LiouvillianFamily {
  Superoperator base;
  Superoperator generator;

  Superoperator at(double detuning) const { return base + detuning * generator; }
};

LiouvillianFamily liouvillian_family(const SimConfig& config, const CoefficientSet& coeffs,
                                     const DriveConfig& drive);

}  // namespace superlind
