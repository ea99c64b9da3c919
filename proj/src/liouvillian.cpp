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

#include "superlind/liouvillian.hpp"

#include <stdexcept>
#include <string>

namespace superlind {

std::size_t hilbert_dimension(const LevelScheme& scheme, std::size_t num_emitters) {
  std::size_t d = 1;
  for (std::size_t a = 0; a < num_emitters; ++a) {
    d *= scheme.num_levels;
    if (d * d > kMaxLiouvilleDimension) {
      throw std::length_error("Liouville space dimension exceeds " + std::to_string(kMaxLiouvilleDimension));
    }
  }
  return d;
}

OperatorMatrix lowering_operator(const LevelScheme& scheme, std::size_t num_emitters, std::size_t alpha,
                                 std::size_t transition) {
  if (alpha >= num_emitters) throw std::out_of_range("lowering_operator: emitter index out of range");
  const Transition& t = scheme.transitions.at(transition);
  hilbert_dimension(scheme, num_emitters);
  const auto levels = static_cast<Eigen::Index>(scheme.num_levels);
  OperatorMatrix local = OperatorMatrix::Zero(levels, levels);
  local(static_cast<Eigen::Index>(t.lower), static_cast<Eigen::Index>(t.upper)) = 1.0;
  return embed(local, alpha, num_emitters);
}

std::vector<OperatorMatrix> lowering_operators(const LevelScheme& scheme, std::size_t num_emitters) {
  std::vector<OperatorMatrix> ops;
  for (std::size_t a = 0; a < num_emitters; ++a) {
    for (std::size_t t = 0; t < scheme.num_transitions(); ++t) {
      ops.push_back(lowering_operator(scheme, num_emitters, a, t));
    }
  }
  return ops;
}

OperatorMatrix excitation_number(const LevelScheme& scheme, std::size_t num_emitters) {
  const auto d = static_cast<Eigen::Index>(hilbert_dimension(scheme, num_emitters));
  OperatorMatrix n = OperatorMatrix::Zero(d, d);
  for (const OperatorMatrix& z : lowering_operators(scheme, num_emitters)) n += z.adjoint() * z;
  return n;
}

namespace {

void require_ground_transitions(const LevelScheme& scheme) {
  for (const Transition& t : scheme.transitions) {
    if (t.lower != scheme.ground) {
      throw std::invalid_argument("rotating frame requires every transition to start from the ground level");
    }
  }
}

}  // namespace

OperatorMatrix rotating_frame_hamiltonian(const SimConfig& config, const CoefficientSet& coeffs,
                                          const DriveConfig& drive) {
  const LevelScheme& scheme = config.scheme;
  require_ground_transitions(scheme);
  validate(drive, config);
  const std::size_t n_emit = config.array.size();
  const auto d = static_cast<Eigen::Index>(hilbert_dimension(scheme, n_emit));
  const std::vector<OperatorMatrix> zeta = lowering_operators(scheme, n_emit);
  const std::size_t nt = scheme.num_transitions();

  OperatorMatrix h = OperatorMatrix::Zero(d, d);
  for (std::size_t a = 0; a < n_emit; ++a) {
    for (std::size_t t = 0; t < nt; ++t) {
      const OperatorMatrix& z = zeta[a * nt + t];
      const OperatorMatrix projector = z.adjoint() * z;
      h += (transition_offset(scheme, t) - drive.detuning) * projector;
      const Complex g = drive.rabi(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(t));
      h -= g * z.adjoint() + std::conj(g) * z;
    }
  }
  for (std::size_t c = 0; c < coeffs.size(); ++c) {
    for (std::size_t e = 0; e < coeffs.size(); ++e) {
      const double s = coeffs.shift(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(e));
      if (s != 0.0) h -= s * (zeta[c].adjoint() * zeta[e]);
    }
  }
  return h;
}

OperatorMatrix rotating_frame_hamiltonian(const SimConfig& config, const DriveConfig& drive) {
  return rotating_frame_hamiltonian(config, build_coefficient_set(config), drive);
}

Superoperator dissipator_superoperator(const CoefficientSet& coeffs, const std::vector<OperatorMatrix>& lowering) {
  if (lowering.size() != coeffs.size()) throw std::invalid_argument("dissipator: operator count mismatch");
  const Eigen::Index d = lowering.front().rows();
  const std::size_t nt = coeffs.num_transitions;
  Superoperator out = Superoperator::Zero(d * d, d * d);
  OperatorMatrix anti = OperatorMatrix::Zero(d, d);
  for (std::size_t c = 0; c < coeffs.size(); ++c) {
    for (std::size_t e = 0; e < coeffs.size(); ++e) {
      const Complex gam = coeffs.gamma(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(e));
      if (gam == 0.0) continue;
      const double n = coeffs.thermal(static_cast<Eigen::Index>(c % nt), static_cast<Eigen::Index>(e % nt));
      const OperatorMatrix& zi = lowering[c];
      const OperatorMatrix& zj = lowering[e];
      // Emission: (1+n) Gamma/2 (2 zj rho zi^dag - {zi^dag zj, rho}).
      const Complex emit = (1.0 + n) * gam;
      out += emit * sandwich(zj, zi.adjoint());
      anti += 0.5 * emit * (zi.adjoint() * zj);
      if (n != 0.0) {
        // Absorption: n Gamma^*/2 (2 zj^dag rho zi - {zi zj^dag, rho}).
        const Complex absorb = n * std::conj(gam);
        out += absorb * sandwich(zj.adjoint(), zi);
        out -= 0.5 * absorb * (left_multiplication(zi * zj.adjoint()) + right_multiplication(zi * zj.adjoint()));
      }
    }
  }
  out -= left_multiplication(anti) + right_multiplication(anti);
  return out;
}

LiouvillianFamily liouvillian_family(const SimConfig& config, const CoefficientSet& coeffs,
                                     const DriveConfig& drive) {
  DriveConfig at_zero = drive;
  at_zero.detuning = 0.0;
  const OperatorMatrix h0 = rotating_frame_hamiltonian(config, coeffs, at_zero);
  const std::vector<OperatorMatrix> zeta = lowering_operators(config.scheme, config.array.size());
  LiouvillianFamily family;
  family.base = commutator_superoperator(h0) + dissipator_superoperator(coeffs, zeta);
  const OperatorMatrix n = excitation_number(config.scheme, config.array.size());
  family.generator = commutator_superoperator((-n).eval());
  return family;
}

Superoperator assemble_liouvillian(const SimConfig& config, const CoefficientSet& coeffs, const DriveConfig& drive) {
  const OperatorMatrix h = rotating_frame_hamiltonian(config, coeffs, drive);
  const std::vector<OperatorMatrix> zeta = lowering_operators(config.scheme, config.array.size());
  return commutator_superoperator(h) + dissipator_superoperator(coeffs, zeta);
}

Superoperator assemble_liouvillian(const SimConfig& config, const DriveConfig& drive) {
  return assemble_liouvillian(config, build_coefficient_set(config), drive);
}

}  // namespace superlind
