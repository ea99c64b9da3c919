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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "superlind/config.hpp"

namespace superlind {

enum class Command { kSpectrum, kShifts, kCgScan, kSingleAtom, kCoeffs };

std::string command_name(Command c);
Command parse_command(const std::string& name);

struct RunOptions {
  std::string out_dir = ".";
  unsigned threads = 1;
  std::uint64_t seed = 0;
  std::vector<Variant> variants;  // overrides the config's variant lists when nonempty
  bool no_smoothing = false;
};

struct RunManifest {
  std::string config_hash;
  Command command = Command::kSpectrum;
  std::vector<std::string> outputs;
  double wall_time = 0.0;  // s
  std::size_t failed_points = 0;

  // 0 on success, 2 when some points failed.
  int exit_code() const { return failed_points == 0 ? 0 : 2; }
};

// Executes a command, writes CSV tables and manifest.json into out_dir, and
// logs one line per computed point to `log`.
RunManifest run(Command command, const RunConfig& config, const RunOptions& options, std::ostream& log);

}  // namespace superlind
