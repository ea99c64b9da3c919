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
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "superlind/types.hpp"

namespace superlind {

// Thrown when a domain object violates one of its invariants. field() names
// the offending field using the config-file spelling where one exists.
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct Transition {
  std::size_t lower = 0;
  std::size_t upper = 1;
  double frequency = 0.0;   // rad/s
  double decay_rate = 0.0;  // rad/s, Einstein A coefficient
  Vec3 dipole_direction = Vec3::UnitZ();
  double dipole_sign_amplitude = 1.0;
};

struct LevelScheme {
  std::size_t num_levels = 2;
  std::size_t ground = 0;
  std::vector<Transition> transitions;
  // Radiative shifts of the upper levels, keyed by transition index (rad/s).
  std::map<std::size_t, double> diagonal_shifts;
  // Replaces the computed intra-atomic cross shift for an (i, j) pair with
  // i < j. Value in rad/s, used verbatim.
  std::map<std::pair<std::size_t, std::size_t>, double> cross_shift_overrides;

  std::size_t num_transitions() const { return transitions.size(); }
};

struct EmitterArray {
  std::vector<Vec3> positions;  // m

  std::size_t size() const { return positions.size(); }
  Vec3 separation(std::size_t alpha, std::size_t beta) const {
    return positions.at(alpha) - positions.at(beta);
  }
};

// Rabi frequencies indexed (emitter, transition), rad/s. Complex values are
// accepted so that the drive phase can be varied.
struct DriveConfig {
  Eigen::MatrixXcd rabi;
  double detuning = 0.0;  // laser frequency minus the first transition frequency, rad/s
};

struct InterferenceToggles {
  bool intra_cross_damping = true;
  bool inter_cross_damping = true;
  bool intra_cross_shift = true;
  bool inter_cross_shift = true;
  bool inter_diagonal = true;

  static InterferenceToggles all_on() { return {}; }
  static InterferenceToggles all_off() { return {false, false, false, false, false}; }
  bool operator==(const InterferenceToggles&) const = default;
};

enum class Smoothing { kGaussian, kSinc };

struct SimConfig {
  double coarse_grain_dt = 1e-11;  // s
  double temperature = 300.0;      // K
  double speed_of_light = constants::kSpeedOfLight;
  Smoothing smoothing = Smoothing::kGaussian;
  LevelScheme scheme;
  EmitterArray array;
  InterferenceToggles toggles;
};

// Named toggle combinations. The no-cross variant keeps the ordinary
// dipole-dipole terms between emitters and removes every cross-transition
// term; it is the reference against which line shifts are measured.
enum class Variant { kFull, kNoCross, kCaseI, kCaseII, kCrossDampingOnly, kCrossShiftOnly };

InterferenceToggles toggles_for(Variant variant);
std::string variant_name(Variant variant);
Variant parse_variant(const std::string& name);
std::vector<Variant> all_variants();

LevelScheme hydrogen_2s4p_preset();

// sign(a_i a_j) (d_i . d_j) for transitions i, j of the scheme.
double dipole_product(const LevelScheme& scheme, std::size_t i, std::size_t j);

void validate(const LevelScheme& scheme);
void validate(const EmitterArray& array);
void validate(const SimConfig& config);
void validate(const DriveConfig& drive, const SimConfig& config);

EmitterArray single_emitter();
// Two emitters separated by distance along x (perpendicular to z dipoles).
EmitterArray emitter_pair(double distance);

// Rabi frequency of transition t is reference_rabi * relative[t]; every
// emitter is driven identically.
struct DriveProfile {
  std::size_t reference_transition = 0;
  std::vector<Complex> relative;
};

// Relative Rabi frequencies proportional to the signed dipole amplitudes,
// normalized to 1 on the reference transition.
DriveProfile amplitude_ratio_profile(const LevelScheme& scheme, std::size_t reference_transition);

DriveConfig make_drive(const SimConfig& config, const DriveProfile& profile, double reference_rabi,
                       double detuning = 0.0);

// Frequency of each transition relative to the first one (rad/s).
double transition_offset(const LevelScheme& scheme, std::size_t t);

}  // namespace superlind
