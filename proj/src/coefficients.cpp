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

#include "superlind/coefficients.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace superlind {

namespace {

void check_transition(const SimConfig& config, std::size_t i) {
  if (i >= config.scheme.num_transitions()) throw std::out_of_range("transition index out of range");
}

void check_emitter(const SimConfig& config, std::size_t alpha) {
  if (alpha >= config.array.size()) throw std::out_of_range("emitter index out of range");
}

double mean_frequency(const SimConfig& config, std::size_t i, std::size_t j) {
  return 0.5 * (config.scheme.transitions[i].frequency + config.scheme.transitions[j].frequency);
}

// (omega_ij^3) / (omega_i^{3/2} omega_j^{3/2}); exactly 1 when i == j.
double frequency_factor(const SimConfig& config, std::size_t i, std::size_t j) {
  if (i == j) return 1.0;
  const double wi = config.scheme.transitions[i].frequency;
  const double wj = config.scheme.transitions[j].frequency;
  const double ratio = mean_frequency(config, i, j) / std::sqrt(wi * wj);
  return ratio * ratio * ratio;
}

double rate_product(const SimConfig& config, std::size_t i, std::size_t j) {
  if (i == j) return config.scheme.transitions[i].decay_rate;
  return std::sqrt(config.scheme.transitions[i].decay_rate * config.scheme.transitions[j].decay_rate);
}

double diagonal_shift(const LevelScheme& scheme, std::size_t i) {
  auto it = scheme.diagonal_shifts.find(i);
  if (it == scheme.diagonal_shifts.end()) {
    throw ValidationError("diagonal_shift", "missing diagonal shift for transition " + std::to_string(i));
  }
  return it->second;
}

}  // namespace

double resonance_factor(const SimConfig& config, std::size_t i, std::size_t j) {
  check_transition(config, i);
  check_transition(config, j);
  if (i == j) return 1.0;
  const double wi = config.scheme.transitions[i].frequency;
  const double wj = config.scheme.transitions[j].frequency;
  if (config.smoothing == Smoothing::kGaussian) return smoothed_theta(wi - wj, config.coarse_grain_dt);
  return theta_sinc(wi, wj, config.coarse_grain_dt);
}

Complex damping_coefficient(const SimConfig& config, std::size_t alpha, std::size_t beta, std::size_t i,
                            std::size_t j) {
  check_emitter(config, alpha);
  check_emitter(config, beta);
  const double base = resonance_factor(config, i, j) * rate_product(config, i, j) *
                      dipole_product(config.scheme, i, j) * frequency_factor(config, i, j);
  if (alpha == beta) return base;
  const Transition& ti = config.scheme.transitions[i];
  const Transition& tj = config.scheme.transitions[j];
  const double k = mean_frequency(config, i, j) / config.speed_of_light;
  const double geometry = geometric_factor(BesselKind::kFirst, k, config.array.separation(alpha, beta),
                                           ti.dipole_direction, tj.dipole_direction);
  return base * geometry / (8.0 * std::numbers::pi / 3.0);
}

double intra_shift(const SimConfig& config, std::size_t i, std::size_t j) {
  check_transition(config, i);
  check_transition(config, j);
  const LevelScheme& scheme = config.scheme;
  if (i == j) return diagonal_shift(scheme, i);
  auto it = scheme.cross_shift_overrides.find({std::min(i, j), std::max(i, j)});
  if (it != scheme.cross_shift_overrides.end()) return it->second;
  // Each diagonal shift scales with the squared dipole amplitude of its own
  // transition; the cross term takes the geometric mean weight a_i a_j.
  const double ai = scheme.transitions[i].dipole_sign_amplitude;
  const double aj = scheme.transitions[j].dipole_sign_amplitude;
  const double cos_angle = scheme.transitions[i].dipole_direction.dot(scheme.transitions[j].dipole_direction);
  return 0.5 * cos_angle * resonance_factor(config, i, j) *
         (aj / ai * diagonal_shift(scheme, i) + ai / aj * diagonal_shift(scheme, j));
}

double inter_shift(const SimConfig& config, std::size_t alpha, std::size_t beta, std::size_t i, std::size_t j) {
  check_emitter(config, alpha);
  check_emitter(config, beta);
  if (alpha == beta) throw std::invalid_argument("inter_shift: emitters must be distinct");
  const Transition& ti = config.scheme.transitions.at(i);
  const Transition& tj = config.scheme.transitions.at(j);
  const double k = mean_frequency(config, i, j) / config.speed_of_light;
  const double geometry = geometric_factor(BesselKind::kSecond, k, config.array.separation(alpha, beta),
                                           ti.dipole_direction, tj.dipole_direction);
  return resonance_factor(config, i, j) * 0.75 * rate_product(config, i, j) *
         dipole_product(config.scheme, i, j) * frequency_factor(config, i, j) * geometry /
         (4.0 * std::numbers::pi);
}

CoefficientSet build_coefficient_set(const SimConfig& config, const InterferenceToggles& toggles) {
  validate(config);
  CoefficientSet c;
  c.num_emitters = config.array.size();
  c.num_transitions = config.scheme.num_transitions();
  const auto n = static_cast<Eigen::Index>(c.size());
  const auto nt = static_cast<Eigen::Index>(c.num_transitions);
  c.gamma = Eigen::MatrixXcd::Zero(n, n);
  c.shift = Eigen::MatrixXd::Zero(n, n);
  c.thermal = Eigen::MatrixXd::Zero(nt, nt);

  for (std::size_t i = 0; i < c.num_transitions; ++i) {
    for (std::size_t j = 0; j < c.num_transitions; ++j) {
      c.thermal(i, j) = bose_occupation(mean_frequency(config, i, j), config.temperature);
    }
  }

  for (std::size_t a = 0; a < c.num_emitters; ++a) {
    for (std::size_t b = 0; b < c.num_emitters; ++b) {
      for (std::size_t i = 0; i < c.num_transitions; ++i) {
        for (std::size_t j = 0; j < c.num_transitions; ++j) {
          bool damping_on = true;
          bool shift_on = true;
          if (a == b && i != j) {
            damping_on = toggles.intra_cross_damping;
            shift_on = toggles.intra_cross_shift;
          } else if (a != b && i != j) {
            damping_on = toggles.inter_cross_damping;
            shift_on = toggles.inter_cross_shift;
          } else if (a != b) {
            damping_on = shift_on = toggles.inter_diagonal;
          }
          const auto row = static_cast<Eigen::Index>(c.index(a, i));
          const auto col = static_cast<Eigen::Index>(c.index(b, j));
          if (damping_on) c.gamma(row, col) = damping_coefficient(config, a, b, i, j);
          if (shift_on) c.shift(row, col) = a == b ? intra_shift(config, i, j) : inter_shift(config, a, b, i, j);
        }
      }
    }
  }
  return c;
}

void write_coefficients_csv(std::ostream& out, const CoefficientSet& coeffs) {
  char buf[128];
  out << "alpha,beta,i,j,re,im,kind\n";
  auto row = [&](std::size_t a, std::size_t b, std::size_t i, std::size_t j, double re, double im,
                 const char* kind) {
    std::snprintf(buf, sizeof buf, "%zu,%zu,%zu,%zu,%.17g,%.17g,%s\n", a, b, i, j, re, im, kind);
    out << buf;
  };
  for (std::size_t a = 0; a < coeffs.num_emitters; ++a) {
    for (std::size_t b = 0; b < coeffs.num_emitters; ++b) {
      for (std::size_t i = 0; i < coeffs.num_transitions; ++i) {
        for (std::size_t j = 0; j < coeffs.num_transitions; ++j) {
          const auto r = static_cast<Eigen::Index>(coeffs.index(a, i));
          const auto s = static_cast<Eigen::Index>(coeffs.index(b, j));
          row(a, b, i, j, coeffs.gamma(r, s).real(), coeffs.gamma(r, s).imag(), "gamma");
          row(a, b, i, j, coeffs.shift(r, s), 0.0, "shift");
        }
      }
    }
  }
  for (std::size_t i = 0; i < coeffs.num_transitions; ++i) {
    for (std::size_t j = 0; j < coeffs.num_transitions; ++j) {
      row(0, 0, i, j, coeffs.thermal(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)), 0.0,
          "thermal");
    }
  }
}

}  // namespace superlind
