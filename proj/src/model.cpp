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

#include "superlind/model.hpp"

#include <cmath>
#include <set>

namespace superlind {

InterferenceToggles toggles_for(Variant variant) {
  InterferenceToggles t = InterferenceToggles::all_on();
  switch (variant) {
    case Variant::kFull:
      break;
    case Variant::kNoCross:
      t.intra_cross_damping = t.intra_cross_shift = false;
      t.inter_cross_damping = t.inter_cross_shift = false;
      break;
    case Variant::kCaseI:
      t.inter_cross_damping = t.inter_cross_shift = false;
      break;
    case Variant::kCaseII:
      t.intra_cross_damping = t.intra_cross_shift = false;
      break;
    case Variant::kCrossDampingOnly:
      t.intra_cross_shift = t.inter_cross_shift = false;
      break;
    case Variant::kCrossShiftOnly:
      t.intra_cross_damping = t.inter_cross_damping = false;
      break;
  }
  return t;
}

std::string variant_name(Variant variant) {
  switch (variant) {
    case Variant::kFull: return "full";
    case Variant::kNoCross: return "no-cross";
    case Variant::kCaseI: return "case-i";
    case Variant::kCaseII: return "case-ii";
    case Variant::kCrossDampingOnly: return "cross-damping-only";
    case Variant::kCrossShiftOnly: return "cross-shift-only";
  }
  return "unknown";
}

std::vector<Variant> all_variants() {
  return {Variant::kFull, Variant::kNoCross, Variant::kCaseI, Variant::kCaseII,
          Variant::kCrossDampingOnly, Variant::kCrossShiftOnly};
}

Variant parse_variant(const std::string& name) {
  for (Variant v : all_variants()) {
    if (variant_name(v) == name) return v;
  }
  throw ValidationError("variant", "unknown variant '" + name + "'");
}

LevelScheme hydrogen_2s4p_preset() {
  const double c = constants::kSpeedOfLight;
  const double omega12 = constants::kTwoPi * c / 0.468e-6;
  const double omega0 = hz_to_angular(1.367e9);

  LevelScheme s;
  s.num_levels = 3;
  s.ground = 0;

  Transition t12;
  t12.lower = 0;
  t12.upper = 1;
  t12.frequency = omega12;
  t12.decay_rate = hz_to_angular(511e3);
  t12.dipole_direction = Vec3::UnitZ();
  t12.dipole_sign_amplitude = 1.0 / 3.0;

  Transition t13 = t12;
  t13.upper = 2;
  t13.frequency = omega12 + omega0;
  t13.decay_rate = hz_to_angular(1022e3);
  t13.dipole_sign_amplitude = -std::sqrt(2.0) / 3.0;

  s.transitions = {t12, t13};
  s.diagonal_shifts[0] = hz_to_angular(-1401.52e3);
  s.diagonal_shifts[1] = hz_to_angular(1767.30e3);
  return s;
}

double dipole_product(const LevelScheme& scheme, std::size_t i, std::size_t j) {
  if (i >= scheme.transitions.size() || j >= scheme.transitions.size()) {
    throw std::out_of_range("dipole_product: transition index out of range");
  }
  if (i == j) return 1.0;
  const Transition& a = scheme.transitions[i];
  const Transition& b = scheme.transitions[j];
  const double sign = (a.dipole_sign_amplitude * b.dipole_sign_amplitude) < 0.0 ? -1.0 : 1.0;
  return sign * a.dipole_direction.dot(b.dipole_direction);
}

double transition_offset(const LevelScheme& scheme, std::size_t t) {
  return scheme.transitions.at(t).frequency - scheme.transitions.at(0).frequency;
}

void validate(const LevelScheme& scheme) {
  if (scheme.num_levels < 2) throw ValidationError("num_levels", "must be at least 2");
  if (scheme.ground >= scheme.num_levels) throw ValidationError("ground", "level index out of range");
  if (scheme.transitions.empty()) throw ValidationError("transitions", "at least one transition required");
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t t = 0; t < scheme.transitions.size(); ++t) {
    const Transition& tr = scheme.transitions[t];
    const std::string field = "transition." + std::to_string(t);
    if (tr.lower >= scheme.num_levels || tr.upper >= scheme.num_levels) {
      throw ValidationError(field, "level index out of range");
    }
    if (tr.upper == scheme.ground) throw ValidationError(field + ".upper", "must differ from ground");
    if (tr.lower == tr.upper) throw ValidationError(field, "lower and upper levels coincide");
    if (!seen.insert({tr.lower, tr.upper}).second) {
      throw ValidationError(field, "duplicate (lower, upper) pair");
    }
    if (!(tr.frequency > 0.0) || !std::isfinite(tr.frequency)) {
      throw ValidationError(field + ".frequency_hz", "must be positive and finite");
    }
    if (!(tr.decay_rate > 0.0) || !std::isfinite(tr.decay_rate)) {
      throw ValidationError(field + ".decay_rate_hz", "must be positive and finite");
    }
    if (std::abs(tr.dipole_direction.norm() - 1.0) > 1e-12) {
      throw ValidationError(field + ".dipole_direction", "must be a unit vector to 1e-12");
    }
    if (tr.dipole_sign_amplitude == 0.0 || !std::isfinite(tr.dipole_sign_amplitude)) {
      throw ValidationError(field + ".amplitude", "must be nonzero and finite");
    }
  }
  for (const auto& [t, shift] : scheme.diagonal_shifts) {
    if (t >= scheme.transitions.size()) throw ValidationError("diagonal_shift", "unknown transition index");
    if (!std::isfinite(shift)) throw ValidationError("diagonal_shift", "must be finite");
  }
  for (const auto& [key, value] : scheme.cross_shift_overrides) {
    if (key.first >= key.second || key.second >= scheme.transitions.size()) {
      throw ValidationError("cross_shift_hz", "override needs transition pair i < j");
    }
    if (!std::isfinite(value)) throw ValidationError("cross_shift_hz", "must be finite");
  }
}

void validate(const EmitterArray& array) {
  if (array.positions.empty()) throw ValidationError("emitters", "at least one emitter required");
  for (std::size_t a = 0; a < array.size(); ++a) {
    if (!array.positions[a].allFinite()) throw ValidationError("emitters.positions_m", "non-finite position");
    for (std::size_t b = a + 1; b < array.size(); ++b) {
      if (!(array.separation(a, b).norm() > 0.0)) {
        throw ValidationError("emitters.positions_m", "emitters must be at distinct positions");
      }
    }
  }
}

void validate(const SimConfig& config) {
  if (!(config.coarse_grain_dt > 0.0) || !std::isfinite(config.coarse_grain_dt)) {
    throw ValidationError("coarse_grain_dt", "must be positive");
  }
  if (!(config.temperature >= 0.0) || !std::isfinite(config.temperature)) {
    throw ValidationError("temperature", "must be non-negative");
  }
  if (!(config.speed_of_light > 0.0)) throw ValidationError("speed_of_light", "must be positive");
  validate(config.scheme);
  validate(config.array);
}

void validate(const DriveConfig& drive, const SimConfig& config) {
  if (drive.rabi.rows() != static_cast<Eigen::Index>(config.array.size()) ||
      drive.rabi.cols() != static_cast<Eigen::Index>(config.scheme.num_transitions())) {
    throw ValidationError("drive", "rabi table must be emitters x transitions");
  }
  if (!drive.rabi.allFinite()) throw ValidationError("drive", "rabi values must be finite");
  if (!std::isfinite(drive.detuning)) throw ValidationError("drive.detuning_hz", "must be finite");
}

EmitterArray single_emitter() { return EmitterArray{{Vec3::Zero()}}; }

EmitterArray emitter_pair(double distance) {
  return EmitterArray{{Vec3::Zero(), Vec3(distance, 0.0, 0.0)}};
}

DriveProfile amplitude_ratio_profile(const LevelScheme& scheme, std::size_t reference_transition) {
  DriveProfile p;
  p.reference_transition = reference_transition;
  const double ref = scheme.transitions.at(reference_transition).dipole_sign_amplitude;
  for (const Transition& t : scheme.transitions) p.relative.emplace_back(t.dipole_sign_amplitude / ref);
  return p;
}

DriveConfig make_drive(const SimConfig& config, const DriveProfile& profile, double reference_rabi,
                       double detuning) {
  const auto n_t = static_cast<Eigen::Index>(config.scheme.num_transitions());
  if (static_cast<Eigen::Index>(profile.relative.size()) != n_t) {
    throw ValidationError("drive.rabi_ratio", "needs one entry per transition");
  }
  DriveConfig d;
  d.rabi.resize(static_cast<Eigen::Index>(config.array.size()), n_t);
  for (Eigen::Index t = 0; t < n_t; ++t) d.rabi.col(t).setConstant(reference_rabi * profile.relative[t]);
  d.detuning = detuning;
  return d;
}

}  // namespace superlind
