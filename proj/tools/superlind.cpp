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

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "superlind/parallel.hpp"
#include "superlind/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Steady-state spectra and line shifts of driven multilevel emitters"};
  app.set_version_flag("--version", "superlind 0.1.0");

  std::string command;
  std::string config_path;
  std::string out_dir = ".";
  std::vector<std::string> variants;
  bool no_smoothing = false;
  unsigned threads = 0;
  std::uint64_t seed = 0;

  app.add_option("command", command, "spectrum | shifts | cg-scan | single-atom | coeffs")
      ->required()
      ->check(CLI::IsMember({"spectrum", "shifts", "cg-scan", "single-atom", "coeffs"}));
  app.add_option("--config", config_path, "Run configuration (TOML subset); defaults to the built-in preset")
      ->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "Output directory for CSV tables and manifest.json");
  app.add_option("--variant", variants,
                 "Interference variants to run: full, no-cross, case-i, case-ii, cross-damping-only, "
                 "cross-shift-only (repeatable; overrides the config)");
  app.add_flag("--no-smoothing", no_smoothing, "Use the sharp sinc kernel instead of the smoothed one");
  app.add_option("--threads", threads, "Worker threads (0: SUPERLIND_THREADS or 1)");
  app.add_option("--seed", seed, "Seed for fit-noise tests");

  CLI11_PARSE(app, argc, argv);

  try {
    const superlind::RunConfig config =
        config_path.empty() ? superlind::default_run_config() : superlind::parse_config(config_path);
    superlind::RunOptions options;
    options.out_dir = out_dir;
    options.threads = superlind::resolve_threads(threads);
    options.seed = seed;
    options.no_smoothing = no_smoothing;
    for (const std::string& v : variants) options.variants.push_back(superlind::parse_variant(v));

    const superlind::RunManifest manifest =
        superlind::run(superlind::parse_command(command), config, options, std::cout);
    std::cout << "wrote " << manifest.outputs.size() << " file(s), config " << manifest.config_hash << ", "
              << manifest.wall_time << " s";
    if (manifest.failed_points > 0) std::cout << ", " << manifest.failed_points << " failed point(s)";
    std::cout << "\n";
    return manifest.exit_code();
  } catch (const superlind::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
  } catch (const superlind::ValidationError& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return 1;
}
