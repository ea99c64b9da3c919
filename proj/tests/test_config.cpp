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


#include <string>

#include "doctest.h"
#include "superlind/config.hpp"

using namespace superlind;

namespace {

int error_line(const std::string& text) {
  try {
    parse_config_string(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

std::string validation_field(const std::string& text) {
  try {
    parse_config_string(text);
  } catch (const ValidationError& e) {
    return e.field();
  }
  return "";
}

}  // namespace

TEST_CASE("preset configuration") {
  const RunConfig c = parse_config_string("preset = \"hydrogen_2s4p\"\n[emitters]\ndistance_m = 1e-8\n");
  const LevelScheme p = hydrogen_2s4p_preset();
  REQUIRE(c.sim.scheme.num_transitions() == 2);
  for (std::size_t t = 0; t < 2; ++t) {
    CHECK(c.sim.scheme.transitions[t].frequency == p.transitions[t].frequency);
    CHECK(c.sim.scheme.transitions[t].decay_rate == p.transitions[t].decay_rate);
    CHECK(c.sim.scheme.transitions[t].dipole_sign_amplitude == p.transitions[t].dipole_sign_amplitude);
  }
  CHECK(c.sim.scheme.diagonal_shifts == p.diagonal_shifts);
  CHECK(c.sim.array.separation(1, 0).norm() == 1e-8);
  CHECK(c.sim.coarse_grain_dt == 1e-11);
}

TEST_CASE("frequencies in Hz are stored in rad/s") {
  const RunConfig c = parse_config_string(R"(
[drive]
rabi_hz = 1000.0
detuning_hz = -2.5e6
[overrides]
cross_shift_hz = 366.2e3
)");
  REQUIRE(c.drive.rabi.has_value());
  CHECK(*c.drive.rabi == hz_to_angular(1000.0));
  CHECK(c.drive.detuning == hz_to_angular(-2.5e6));
  CHECK(c.sim.scheme.cross_shift_overrides.at({0, 1}) == hz_to_angular(366.2e3));
  CHECK(error_line("[drive]\nrabi_hz = 1.0\nrabi_rad_s = 2.0\n") == 3);
}

TEST_CASE("explicit level scheme") {
  const RunConfig c = parse_config_string(R"(
[scheme]
num_levels = 2
ground = 0

[transition.0]
lower = 0
upper = 1
frequency_hz = 5e14
decay_rate_hz = 1e6
dipole_direction = [0.0, 0.0, 1.0]
amplitude = 1.0
diagonal_shift_hz = 0.0

[emitters]
count = 1

[drive]
reference_transition = 0
)");
  CHECK(c.sim.scheme.num_levels == 2);
  CHECK(c.sim.scheme.transitions[0].decay_rate == hz_to_angular(1e6));
  CHECK(c.sim.array.size() == 1);
  CHECK(error_line("preset = \"hydrogen_2s4p\"\n[scheme]\nnum_levels = 3\n") == 2);
}

TEST_CASE("errors carry line numbers and field names") {
  CHECK(error_line("coarse_grain_dt = 1e-11\nbogus = 3\n") == 2);
  CHECK(error_line("[grid]\npoints = 11\n[nonsense]\nx = 1\n") == 4);
  CHECK(error_line("[grid]\npoints = \n") == 2);
  CHECK(error_line("[grid\n") == 1);
  CHECK(error_line("preset = \"helium\"\n") == 1);
  CHECK(error_line("[spectrum]\n\nvariants = [\"full\", \"nope\"]\n") == 3);
  CHECK(error_line("coarse_grain_dt = 1e-11\ncoarse_grain_dt = 1e-12\n") == 2);
  CHECK(validation_field("coarse_grain_dt = -1e-11\n") == "coarse_grain_dt");
  CHECK(validation_field("[shifts]\ndrive_over_gamma = [0.1, 0.2]\n") == "shifts.drive_over_gamma");
  CHECK(validation_field("[emitters]\ndistance_m = 0.0\n") == "emitters.positions_m");
}

TEST_CASE("distance ranges") {
  const RunConfig c = parse_config_string("[shifts]\nr_min_m = 1e-8\nr_max_m = 1e-6\nr_points = 3\nspacing = \"log\"\n");
  REQUIRE(c.shift_distances.size() == 3);
  CHECK(c.shift_distances[1] == doctest::Approx(1e-7).epsilon(1e-14));
}

TEST_CASE("serialization round-trips bit-exactly") {
  RunConfig c = default_run_config();
  c.sim.coarse_grain_dt = 3.3e-11;
  c.sim.array.positions[1] = Vec3(1.0 / 3.0 * 1e-7, 0.1e-7, 0.0);
  c.drive.rabi = 12345.678;
  c.shift_distances = {1e-8, 2e-8};
  c.sim.toggles.inter_cross_shift = false;
  c.sim.scheme.cross_shift_overrides[{0, 1}] = -2.0;

  const std::string text = serialize_config(c);
  const RunConfig back = parse_config_string(text);
  CHECK(serialize_config(back) == text);
  CHECK(config_hash(back) == config_hash(c));
  CHECK(config_hash(c).size() == 16);
  CHECK(back.sim.scheme.transitions[1].frequency == c.sim.scheme.transitions[1].frequency);
  CHECK(back.sim.array.positions[1] == c.sim.array.positions[1]);
  CHECK(back.sim.toggles == c.sim.toggles);

  RunConfig changed = c;
  changed.sim.coarse_grain_dt = 3.4e-11;
  CHECK(config_hash(changed) != config_hash(c));

  const RunConfig preset = default_run_config();
  CHECK(config_hash(parse_config_string(serialize_config(preset))) == config_hash(preset));
}

TEST_CASE("drive derived from the run configuration") {
  RunConfig c = default_run_config();
  const DriveConfig d = drive_for(c, c.sim);
  const double gamma3 = c.sim.scheme.transitions[1].decay_rate;
  CHECK(d.rabi(0, 1).real() == doctest::Approx(20.0 * gamma3).epsilon(1e-15));
  CHECK(d.rabi(0, 0).real() == doctest::Approx(-20.0 * gamma3 / std::sqrt(2.0)).epsilon(1e-15));

  c.drive.rabi_ratio = {0.0, 1.0};
  c.drive.rabi = 5.0;
  const DriveConfig e = drive_for(c, c.sim);
  CHECK(e.rabi(1, 0) == Complex(0.0));
  CHECK(e.rabi(1, 1) == Complex(5.0));

  const ShiftOptions o = shift_options(c, 3, 42);
  CHECK(o.threads == 3);
  CHECK(o.seed == 42);
  CHECK(o.profile.relative.size() == 2);
}
