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

#include "superlind/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

namespace superlind {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> with_noise(const std::vector<double>& y, double relative, std::uint64_t seed) {
  if (relative <= 0.0) return y;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, relative);
  std::vector<double> out(y.size());
  for (std::size_t k = 0; k < y.size(); ++k) out[k] = y[k] * (1.0 + normal(rng));
  return out;
}

FitResult fit_table(const SpectrumTable& table, const FitOptions& fit, const ShiftOptions& options,
                    std::uint64_t stream) {
  const std::vector<double> y =
      with_noise(table.signal, options.noise_relative, options.seed * 0x9E3779B97F4A7C15ULL + stream);
  return fit_double_lorentzian(table.detunings, y, fit);
}

// Assigns the three fitted lines to the reference lines by nearest centre;
// the remaining one is the additional line.
void explore(DrivePoint& dp, const SpectrumTable& table, const FitOptions& fit, const ShiftOptions& options,
             std::uint64_t stream) {
  const std::vector<double> y =
      with_noise(table.signal, options.noise_relative, options.seed * 0x9E3779B97F4A7C15ULL + stream);
  try {
    dp.exploratory = fit_three_lorentzian(table.detunings, y, dp.full, fit);
  } catch (const std::exception&) {
    return;
  }
  const std::vector<LorentzianLine>& lines = dp.exploratory->lines;
  const double targets[2] = {dp.reference.x2, fit.omega0 + dp.reference.x3};
  std::size_t used[2] = {0, 0};
  bool taken[3] = {false, false, false};
  for (int t = 0; t < 2; ++t) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t l = 0; l < 3; ++l) {
      if (!taken[l] && std::abs(lines[l].center - targets[t]) < best) {
        best = std::abs(lines[l].center - targets[t]);
        used[t] = l;
      }
    }
    taken[used[t]] = true;
  }
  dp.exploratory_shift12_hz = angular_to_hz(lines[used[0]].center - targets[0]);
  dp.exploratory_shift13_hz = angular_to_hz(lines[used[1]].center - targets[1]);
  for (std::size_t l = 0; l < 3; ++l) {
    if (!taken[l]) dp.exploratory_extra_hz = angular_to_hz(lines[l].center);
  }
}

std::string describe(const FitResult& f) {
  return f.converged ? std::string("ok") : "fit failed: " + f.message;
}

}  // namespace

Extrapolation extrapolate_zero_drive(const std::vector<std::pair<double, double>>& g_shift) {
  if (g_shift.size() < 3) throw std::invalid_argument("extrapolate_zero_drive: need at least 3 drive strengths");
  auto solve = [](const std::vector<std::pair<double, double>>& pts) {
    Eigen::MatrixXd a(static_cast<Eigen::Index>(pts.size()), 2);
    Eigen::VectorXd b(static_cast<Eigen::Index>(pts.size()));
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const auto row = static_cast<Eigen::Index>(k);
      a(row, 0) = 1.0;
      a(row, 1) = pts[k].first * pts[k].first;
      b(row) = pts[k].second;
    }
    return Eigen::Vector2d(a.colPivHouseholderQr().solve(b));
  };
  const Eigen::Vector2d all = solve(g_shift);
  std::vector<std::pair<double, double>> reduced = g_shift;
  const auto strongest = std::max_element(reduced.begin(), reduced.end(), [](const auto& l, const auto& r) {
    return std::abs(l.first) < std::abs(r.first);
  });
  reduced.erase(strongest);
  Extrapolation e;
  e.value = all(0);
  e.slope = all(1);
  if (reduced.size() >= 2) e.spread = std::abs(all(0) - solve(reduced)(0));
  e.slow_convergence = e.spread > 0.2 * std::abs(e.value);
  return e;
}

ShiftPoint zero_drive_shift(const SimConfig& config, Variant variant, const ShiftOptions& options,
                            ReferenceCache* cache) {
  validate(config);
  const LevelScheme& scheme = config.scheme;
  const FitOptions fit = options.fit.omega0 == 0.0 ? fit_options_for(scheme) : options.fit;
  const DriveProfile profile = options.profile.relative.empty()
                                   ? amplitude_ratio_profile(scheme, std::min<std::size_t>(1, scheme.num_transitions() - 1))
                                   : options.profile;
  const double gamma_ref = scheme.transitions.at(profile.reference_transition).decay_rate;

  SimConfig reference_config = config;
  reference_config.toggles = toggles_for(Variant::kNoCross);
  SimConfig variant_config = config;
  variant_config.toggles = toggles_for(variant);

  ShiftPoint point;
  point.distance = config.array.size() >= 2 ? config.array.separation(1, 0).norm() : 0.0;
  std::vector<std::pair<double, double>> line12;
  std::vector<std::pair<double, double>> line13;
  for (std::size_t k = 0; k < options.drive_over_gamma.size(); ++k) {
    DrivePoint dp;
    dp.g_over_gamma = options.drive_over_gamma[k];
    try {
      const DriveConfig drive = make_drive(config, profile, dp.g_over_gamma * gamma_ref);
      SpectrumTable ref_table;
      if (cache != nullptr && cache->entries.count(k) != 0) {
        ref_table = cache->entries.at(k).first;
        dp.reference = cache->entries.at(k).second;
      } else {
        const SpectrumScanner ref_scanner(reference_config, drive);
        ref_table = adaptive_scan(ref_scanner, options.grid, options.threads);
        dp.reference = fit_table(ref_table, fit, options, 2 * k);
        if (cache != nullptr) cache->entries[k] = {ref_table, dp.reference};
      }
      SpectrumTable table = ref_table;
      if (variant == Variant::kNoCross && options.noise_relative <= 0.0) {
        dp.full = dp.reference;
      } else {
        const SpectrumScanner scanner(variant_config, drive);
        table = scan_detuning(scanner, ref_table.detunings, options.threads);
        dp.full = fit_table(table, fit, options, 2 * k + 1);
      }
      if (dp.reference.converged && (!dp.full.converged || dp.full.peak_residual > kExploratoryResidual)) {
        explore(dp, table, fit, options, 2 * k + 1);
      }
      const auto [s12, s13] = line_shift(dp.full, dp.reference);
      dp.shift12_hz = s12;
      dp.shift13_hz = s13;
      dp.converged = true;
      dp.message = "ok";
      line12.emplace_back(dp.g_over_gamma, s12);
      line13.emplace_back(dp.g_over_gamma, s13);
    } catch (const std::exception& e) {
      dp.converged = false;
      dp.shift12_hz = dp.shift13_hz = kNaN;
      dp.message = e.what();
      if (dp.message.empty()) dp.message = describe(dp.full);
    }
    point.per_drive.push_back(dp);
  }
  if (line12.size() >= 3) {
    point.line12 = extrapolate_zero_drive(line12);
    point.line13 = extrapolate_zero_drive(line13);
    point.converged = line12.size() == options.drive_over_gamma.size();
    point.message = point.converged ? "ok" : "some drive strengths failed";
  } else {
    point.line12.value = point.line13.value = kNaN;
    point.converged = false;
    std::ostringstream msg;
    msg << "only " << line12.size() << " converged drive strengths";
    for (const DrivePoint& dp : point.per_drive) {
      if (!dp.converged) {
        msg << "; " << dp.message;
        break;
      }
    }
    point.message = msg.str();
  }
  return point;
}

LineShiftCurve sweep_distance(const SimConfig& config_template, const std::vector<double>& r_grid, Variant variant,
                              const ShiftOptions& options, const ProgressFn& progress) {
  for (std::size_t k = 0; k < r_grid.size(); ++k) {
    if (!(r_grid[k] > 0.0) || (k > 0 && !(r_grid[k] > r_grid[k - 1]))) {
      throw std::invalid_argument("sweep_distance: distances must be positive and increasing");
    }
  }
  Vec3 axis = Vec3::UnitX();
  if (config_template.array.size() == 2) axis = config_template.array.separation(1, 0).normalized();

  LineShiftCurve curve;
  curve.variant = variant;
  for (double r : r_grid) {
    SimConfig config = config_template;
    config.array.positions = {Vec3::Zero(), r * axis};
    ShiftPoint point;
    try {
      point = zero_drive_shift(config, variant, options);
    } catch (const std::exception& e) {
      point.distance = r;
      point.converged = false;
      point.line12.value = point.line13.value = kNaN;
      point.message = e.what();
    }
    point.distance = r;
    curve.distances.push_back(r);
    curve.shift_12.push_back(point.line12.value);
    curve.shift_13.push_back(point.line13.value);
    curve.converged.push_back(point.converged);
    if (progress) progress(point);
    curve.points.push_back(std::move(point));
  }
  return curve;
}

std::vector<double> default_cg_times() { return {1e-8, 1e-9, 1e-10, 1e-11, 1e-12}; }

CgScan cg_sensitivity(const SimConfig& config_template, const std::vector<double>& dt_list,
                      const ShiftOptions& options, Variant variant) {
  if (dt_list.size() < 2) throw std::invalid_argument("cg_sensitivity: need at least two coarse-graining times");
  CgScan scan;
  scan.dt = dt_list;
  ReferenceCache cache;
  for (double dt : dt_list) {
    SimConfig config = config_template;
    config.coarse_grain_dt = dt;
    ShiftPoint point;
    try {
      point = zero_drive_shift(config, variant, options, &cache);
    } catch (const std::exception& e) {
      point.converged = false;
      point.line12.value = point.line13.value = kNaN;
      point.message = e.what();
    }
    scan.points.push_back(std::move(point));
  }
  for (std::size_t k = 0; k + 1 < dt_list.size(); ++k) {
    const ShiftPoint& a = scan.points[k];
    const ShiftPoint& b = scan.points[k + 1];
    CgRow row;
    row.dt = dt_list[k];
    row.dt_next = dt_list[k + 1];
    row.rel_shift_line1 = std::abs((a.line12.value - b.line12.value) / a.line12.value);
    row.rel_shift_line2 = std::abs((a.line13.value - b.line13.value) / a.line13.value);
    scan.rows.push_back(row);
  }
  return scan;
}

std::vector<Resonance> single_excitation_resonances(const SimConfig& config) {
  const CoefficientSet coeffs = build_coefficient_set(config);
  const auto n = static_cast<Eigen::Index>(coeffs.size());
  Eigen::MatrixXcd h_eff(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index e = 0; e < n; ++e) {
      Complex v = -coeffs.shift(c, e) - 0.5 * Complex(0.0, 1.0) * coeffs.gamma(c, e);
      if (c == e) v += transition_offset(config.scheme, static_cast<std::size_t>(c) % coeffs.num_transitions);
      h_eff(c, e) = v;
    }
  }
  const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(h_eff);
  const auto nt = static_cast<Eigen::Index>(coeffs.num_transitions);
  std::vector<Resonance> out;
  for (Eigen::Index k = 0; k < n; ++k) {
    Resonance r;
    r.detuning = es.eigenvalues()(k).real();
    r.width = -2.0 * es.eigenvalues()(k).imag();
    if (coeffs.num_emitters == 2) {
      const Eigen::VectorXcd v = es.eigenvectors().col(k);
      r.symmetric = (v.head(nt) - v.tail(nt)).norm() < (v.head(nt) + v.tail(nt)).norm();
    }
    out.push_back(r);
  }
  std::sort(out.begin(), out.end(), [](const Resonance& a, const Resonance& b) { return a.detuning < b.detuning; });
  return out;
}

SubradiantReport subradiant_analysis(const SimConfig& config, const DriveConfig& drive, const GridOptions& grid,
                                     unsigned threads) {
  SubradiantReport report;
  report.resonances = single_excitation_resonances(config);
  const SpectrumScanner scanner(config, drive);
  std::vector<double> points = default_detuning_grid(config, scanner.coefficients(), grid);
  double gamma_max = 0.0;
  for (const Transition& t : config.scheme.transitions) gamma_max = std::max(gamma_max, t.decay_rate);

  auto add_window = [&points](double center, double half, double step) {
    const auto m = static_cast<long>(std::ceil(half / step));
    for (long k = -m; k <= m; ++k) points.push_back(center + step * static_cast<double>(k));
  };
  for (const Resonance& r : report.resonances) {
    const double w = std::max(r.width, 1e-3 * gamma_max);
    add_window(r.detuning, 20.0 * w, w / 20.0);
  }
  for (std::size_t t = 0; t < config.scheme.num_transitions(); ++t) {
    add_window(transition_offset(config.scheme, t), 10.0 * gamma_max, 0.05 * gamma_max);
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end(),
                           [](double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)); }),
               points.end());
  report.table = scan_detuning(scanner, points, threads);
  const std::vector<double>& x = report.table.detunings;
  const std::vector<double>& y = report.table.signal;

  for (const Resonance& r : report.resonances) {
    if (!r.symmetric) continue;
    for (std::size_t k : local_maxima(y)) {
      if (std::abs(x[k] - r.detuning) <= 10.0 * r.width) report.superradiant_peak = std::max(report.superradiant_peak, y[k]);
    }
  }
  if (report.superradiant_peak == 0.0) report.superradiant_peak = *std::max_element(y.begin(), y.end());

  for (const Resonance& r : report.resonances) {
    if (r.symmetric) continue;
    const auto it = std::lower_bound(x.begin(), x.end(), r.detuning);
    const auto k = static_cast<std::size_t>(std::clamp<long>(it - x.begin(), 1, static_cast<long>(x.size()) - 1));
    const double w = (r.detuning - x[k - 1]) / (x[k] - x[k - 1]);
    report.resonance_ratio.push_back(((1.0 - w) * y[k - 1] + w * y[k]) / report.superradiant_peak);
    auto collect = [&](const std::vector<std::size_t>& idx, bool is_max) {
      for (std::size_t i : idx) {
        if (std::abs(x[i] - r.detuning) <= 20.0 * r.width) {
          report.extrema.push_back({x[i], y[i], y[i] / report.superradiant_peak, is_max});
        }
      }
    };
    collect(local_maxima(y), true);
    collect(local_minima(y), false);
  }
  return report;
}

void write_shift_csv(std::ostream& out, const LineShiftCurve& curve, bool header) {
  if (header) out << "r_m,shift12_hz,shift13_hz,variant,converged,spread12_hz,spread13_hz\n";
  char buf[256];
  const std::string name = variant_name(curve.variant);
  for (const ShiftPoint& p : curve.points) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%s,%s,%.17g,%.17g\n", p.distance, p.line12.value,
                  p.line13.value, name.c_str(), p.converged ? "true" : "false", p.line12.spread, p.line13.spread);
    out << buf;
  }
}

void write_raw_shift_csv(std::ostream& out, const std::vector<ShiftPoint>& points, const std::string& variant,
                         bool header) {
  if (header) out << "r_m,g_over_gamma,shift12_hz,shift13_hz,variant,converged\n";
  char buf[256];
  for (const ShiftPoint& p : points) {
    for (const DrivePoint& d : p.per_drive) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%s,%s\n", p.distance, d.g_over_gamma, d.shift12_hz,
                    d.shift13_hz, variant.c_str(), d.converged ? "true" : "false");
      out << buf;
    }
  }
}

void write_exploratory_csv(std::ostream& out, const std::vector<ShiftPoint>& points, const std::string& variant,
                           bool header) {
  if (header) {
    out << "r_m,g_over_gamma,shift12_hz,shift13_hz,extra_line_hz,two_line_peak_residual,variant,converged\n";
  }
  char buf[320];
  for (const ShiftPoint& p : points) {
    for (const DrivePoint& d : p.per_drive) {
      if (!d.exploratory) continue;
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%s,%s\n", p.distance, d.g_over_gamma,
                    d.exploratory_shift12_hz, d.exploratory_shift13_hz, d.exploratory_extra_hz,
                    d.full.peak_residual, variant.c_str(), d.exploratory->converged ? "true" : "false");
      out << buf;
    }
  }
}

void write_cg_csv(std::ostream& out, const CgScan& scan, double distance, bool header) {
  if (header) out << "dt_s,rel_shift_line1,rel_shift_line2,dt_next_s,r_m\n";
  char buf[256];
  for (const CgRow& row : scan.rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", row.dt, row.rel_shift_line1,
                  row.rel_shift_line2, row.dt_next, distance);
    out << buf;
  }
}

}  // namespace superlind
