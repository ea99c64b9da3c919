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

#include "superlind/spectrum.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <limits>
#include <ostream>
#include <sstream>

#include "superlind/parallel.hpp"

namespace superlind {

namespace {

std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t h) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t fingerprint_matrix(const Eigen::MatrixXd& m, std::uint64_t h) {
  return fnv1a(m.data(), sizeof(double) * static_cast<std::size_t>(m.size()), h);
}

}  // namespace

std::vector<double> SpectrumTable::normalized() const {
  const double peak = signal.empty() ? 0.0 : *std::max_element(signal.begin(), signal.end());
  std::vector<double> out(signal.size());
  for (std::size_t k = 0; k < signal.size(); ++k) out[k] = peak > 0.0 ? signal[k] / peak : 0.0;
  return out;
}

OperatorMatrix emission_operator(const CoefficientSet& coeffs, const std::vector<OperatorMatrix>& lowering) {
  if (lowering.size() != coeffs.size()) throw std::invalid_argument("emission_operator: operator count mismatch");
  const Eigen::Index d = lowering.front().rows();
  OperatorMatrix e = OperatorMatrix::Zero(d, d);
  for (std::size_t c = 0; c < coeffs.size(); ++c) {
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      const Complex g = coeffs.gamma(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(k));
      if (g != 0.0) e += g * (lowering[c].adjoint() * lowering[k]);
    }
  }
  return e;
}

double photon_signal(const OperatorMatrix& rho, const CoefficientSet& coeffs,
                     const std::vector<OperatorMatrix>& lowering) {
  const OperatorMatrix e = emission_operator(coeffs, lowering);
  if (e.rows() != rho.rows()) throw std::invalid_argument("photon_signal: dimension mismatch");
  const Complex s = (rho * e).trace();
  if (std::abs(s.imag()) > 1e-10 * std::abs(s) + 1e-300) {
    std::ostringstream msg;
    msg << "photon_signal: imaginary residue " << s.imag() << " exceeds tolerance for signal " << s.real();
    throw std::runtime_error(msg.str());
  }
  return s.real();
}

SpectrumScanner::SpectrumScanner(const SimConfig& config, const DriveConfig& drive, const SolveOptions& options)
    : config_(config),
      coeffs_(build_coefficient_set(config)),
      basis_(static_cast<Eigen::Index>(hilbert_dimension(config.scheme, config.array.size()))),
      options_(options) {
  const LiouvillianFamily family = liouvillian_family(config_, coeffs_, drive);
  base_ = basis_.represent(family.base);
  slope_ = basis_.represent(family.generator);
  const OperatorMatrix e = emission_operator(coeffs_, lowering_operators(config_.scheme, config_.array.size()));
  emission_ = basis_.coordinates(e);
  fingerprint_ = fingerprint_matrix(base_, 14695981039346656037ULL);
  fingerprint_ = fingerprint_matrix(slope_, fingerprint_);
}

SteadyState SpectrumScanner::steady_state(double detuning) const {
  return solve_null_space(generator(detuning), basis_, options_);
}

double SpectrumScanner::signal(double detuning) const {
  const SteadyState ss = steady_state(detuning);
  return emission_.dot(basis_.coordinates(ss.rho));
}

SpectrumTable scan_detuning(const SpectrumScanner& scanner, const std::vector<double>& grid, unsigned threads) {
  if (grid.empty()) throw std::invalid_argument("scan_detuning: empty grid");
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (!(grid[k] > grid[k - 1])) throw std::invalid_argument("scan_detuning: grid must be strictly increasing");
  }
  SpectrumTable table;
  table.detunings = grid;
  table.signal.assign(grid.size(), 0.0);
  table.toggles = scanner.config().toggles;
  table.fingerprint = scanner.fingerprint();
  parallel_for(grid.size(), threads, [&](std::size_t k) {
    try {
      table.signal[k] = scanner.signal(grid[k]);
    } catch (const std::exception& e) {
      std::ostringstream msg;
      msg << "steady state failed at detuning " << grid[k] << " rad/s: " << e.what();
      throw ScanError(msg.str(), grid[k]);
    }
  });
  return table;
}

SpectrumTable scan_detuning(const SimConfig& config, const DriveConfig& drive, const std::vector<double>& grid,
                            unsigned threads) {
  return scan_detuning(SpectrumScanner(config, drive), grid, threads);
}

std::vector<double> default_detuning_grid(const SimConfig& config, const CoefficientSet& coeffs,
                                          const GridOptions& options) {
  if (options.points < 2) throw std::invalid_argument("default_detuning_grid: need at least 2 points");
  const LevelScheme& scheme = config.scheme;
  double lo = 0.0;
  double hi = 0.0;
  double gamma_max = 0.0;
  for (std::size_t t = 0; t < scheme.num_transitions(); ++t) {
    lo = std::min(lo, transition_offset(scheme, t));
    hi = std::max(hi, transition_offset(scheme, t));
    gamma_max = std::max(gamma_max, scheme.transitions[t].decay_rate);
  }
  double collective = 0.0;
  for (std::size_t a = 0; a < coeffs.num_emitters; ++a) {
    for (std::size_t b = 0; b < coeffs.num_emitters; ++b) {
      if (a == b) continue;
      for (std::size_t i = 0; i < coeffs.num_transitions; ++i) {
        for (std::size_t j = 0; j < coeffs.num_transitions; ++j) {
          collective = std::max(collective, std::abs(coeffs.shift(static_cast<Eigen::Index>(coeffs.index(a, i)),
                                                                  static_cast<Eigen::Index>(coeffs.index(b, j)))));
        }
      }
    }
  }
  const double margin = options.margin_gammas * gamma_max + 2.0 * collective;
  lo -= margin;
  hi += margin;
  std::vector<double> grid(options.points);
  const double step = (hi - lo) / static_cast<double>(options.points - 1);
  for (std::size_t k = 0; k < options.points; ++k) grid[k] = lo + step * static_cast<double>(k);
  grid.back() = hi;
  return grid;
}

std::vector<double> refine_grid(const std::vector<double>& grid, const std::vector<double>& centers,
                                double half_width, std::size_t factor) {
  if (grid.size() < 2 || factor == 0) return grid;
  const double coarse = (grid.back() - grid.front()) / static_cast<double>(grid.size() - 1);
  const double fine = coarse / static_cast<double>(factor);
  std::vector<double> out = grid;
  for (double c : centers) {
    const auto half = static_cast<long>(std::floor(half_width / fine));
    for (long k = -half; k <= half; ++k) {
      const double x = c + fine * static_cast<double>(k);
      if (x > grid.front() && x < grid.back()) out.push_back(x);
    }
  }
  std::sort(out.begin(), out.end());
  std::vector<double> unique;
  const double tol = 1e-6 * fine;
  for (double x : out) {
    if (unique.empty() || x - unique.back() > tol) unique.push_back(x);
  }
  return unique;
}

std::vector<std::size_t> local_maxima(const std::vector<double>& values) {
  std::vector<std::size_t> idx;
  for (std::size_t k = 1; k + 1 < values.size(); ++k) {
    if (values[k] > values[k - 1] && values[k] >= values[k + 1]) idx.push_back(k);
  }
  return idx;
}

std::vector<std::size_t> local_minima(const std::vector<double>& values) {
  std::vector<std::size_t> idx;
  for (std::size_t k = 1; k + 1 < values.size(); ++k) {
    if (values[k] < values[k - 1] && values[k] <= values[k + 1]) idx.push_back(k);
  }
  return idx;
}

std::pair<std::size_t, std::size_t> line_maxima(const SpectrumTable& table, double omega0) {
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::size_t lower = kNone;
  std::size_t upper = kNone;
  for (std::size_t k : local_maxima(table.signal)) {
    std::size_t& slot = table.detunings[k] < 0.5 * omega0 ? lower : upper;
    if (slot == kNone || table.signal[k] > table.signal[slot]) slot = k;
  }
  return {lower, upper};
}

SpectrumTable extend_scan(const SpectrumScanner& scanner, const SpectrumTable& table,
                          const std::vector<double>& grid, unsigned threads) {
  std::vector<double> missing;
  std::size_t pos = 0;
  for (double x : grid) {
    while (pos < table.detunings.size() && table.detunings[pos] < x) ++pos;
    if (pos < table.detunings.size() && table.detunings[pos] == x) continue;
    missing.push_back(x);
  }
  if (missing.empty()) return table;
  const SpectrumTable extra = scan_detuning(scanner, missing, threads);
  SpectrumTable merged = table;
  merged.detunings.clear();
  merged.signal.clear();
  std::size_t a = 0;
  std::size_t b = 0;
  while (a < table.size() || b < extra.size()) {
    const bool take_a = b >= extra.size() || (a < table.size() && table.detunings[a] < extra.detunings[b]);
    const SpectrumTable& src = take_a ? table : extra;
    std::size_t& i = take_a ? a : b;
    merged.detunings.push_back(src.detunings[i]);
    merged.signal.push_back(src.signal[i]);
    ++i;
  }
  return merged;
}

SpectrumTable adaptive_scan(const SpectrumScanner& scanner, const GridOptions& options, unsigned threads) {
  const SimConfig& config = scanner.config();
  const std::vector<double> coarse = default_detuning_grid(config, scanner.coefficients(), options);
  const SpectrumTable table = scan_detuning(scanner, coarse, threads);
  double gamma_max = 0.0;
  for (const Transition& t : config.scheme.transitions) gamma_max = std::max(gamma_max, t.decay_rate);

  std::vector<double> centers;
  if (config.scheme.num_transitions() >= 2) {
    const auto [lo, hi] = line_maxima(table, transition_offset(config.scheme, 1));
    if (lo != std::numeric_limits<std::size_t>::max()) centers.push_back(table.detunings[lo]);
    if (hi != std::numeric_limits<std::size_t>::max()) centers.push_back(table.detunings[hi]);
  } else {
    const auto it = std::max_element(table.signal.begin(), table.signal.end());
    centers.push_back(table.detunings[static_cast<std::size_t>(it - table.signal.begin())]);
  }
  const std::vector<double> fine =
      refine_grid(coarse, centers, options.refine_half_width_gammas * gamma_max, options.refine_factor);
  return extend_scan(scanner, table, fine, threads);
}

void write_spectrum_csv(std::ostream& out, const std::vector<SpectrumTable>& tables, bool header) {
  if (header) out << "delta_hz,signal,variant,signal_normalized\n";
  char buf[160];
  for (const SpectrumTable& t : tables) {
    const std::vector<double> norm = t.normalized();
    for (std::size_t k = 0; k < t.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%s,%.17g\n", angular_to_hz(t.detunings[k]), t.signal[k],
                    t.variant.c_str(), norm[k]);
      out << buf;
    }
  }
}

}  // namespace superlind
