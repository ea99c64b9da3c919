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

#include "superlind/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace superlind {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// One Lorentzian and its partial derivatives with respect to (a, b, c).
struct Lorentz {
  double value, d_a, d_b, d_c;
};

Lorentz lorentz(double a, double b, double c, double x) {
  const double h = 0.5 * b;
  const double u = x - c;
  const double den = u * u + h * h;
  Lorentz l;
  l.value = a / kPi * h / den;
  l.d_a = h / (kPi * den);
  l.d_b = a / (2.0 * kPi) * (u * u - h * h) / (den * den);
  l.d_c = a / kPi * 2.0 * h * u / (den * den);
  return l;
}

// Full width at half maximum around index `peak`, by linear interpolation of
// the half-height crossings. Returns 0 if neither side crosses.
double half_max_width(const std::vector<double>& x, const std::vector<double>& y, std::size_t peak) {
  const double half = 0.5 * y[peak];
  double left = std::numeric_limits<double>::quiet_NaN();
  double right = left;
  for (std::size_t k = peak; k > 0; --k) {
    if (y[k - 1] < half) {
      left = x[k - 1] + (half - y[k - 1]) * (x[k] - x[k - 1]) / (y[k] - y[k - 1]);
      break;
    }
  }
  for (std::size_t k = peak; k + 1 < y.size(); ++k) {
    if (y[k + 1] < half) {
      right = x[k] + (y[k] - half) * (x[k + 1] - x[k]) / (y[k] - y[k + 1]);
      break;
    }
  }
  if (std::isfinite(left) && std::isfinite(right)) return right - left;
  if (std::isfinite(left)) return 2.0 * (x[peak] - left);
  if (std::isfinite(right)) return 2.0 * (right - x[peak]);
  return 0.0;
}

double interpolate(const std::vector<double>& x, const std::vector<double>& y, double at) {
  if (at <= x.front()) return y.front();
  if (at >= x.back()) return y.back();
  const auto it = std::upper_bound(x.begin(), x.end(), at);
  const auto k = static_cast<std::size_t>(it - x.begin());
  const double w = (at - x[k - 1]) / (x[k] - x[k - 1]);
  return (1.0 - w) * y[k - 1] + w * y[k];
}

}  // namespace

FitOptions fit_options_for(const LevelScheme& scheme) {
  if (scheme.num_transitions() < 2) throw std::invalid_argument("fit_options_for: need two transitions");
  FitOptions o;
  o.omega0 = transition_offset(scheme, 1);
  o.default_width = 0.5 * (scheme.transitions[0].decay_rate + scheme.transitions[1].decay_rate);
  return o;
}

double double_lorentzian(const FitResult& p, double omega0, double x) {
  return lorentz(p.a2, p.b2, p.x2, x).value + lorentz(p.a3, p.b3, omega0 + p.x3, x).value;
}

FitResult auto_initial_guess(const std::vector<double>& x, const std::vector<double>& y, const FitOptions& options) {
  std::size_t lower = kNone;
  std::size_t upper = kNone;
  for (std::size_t k : local_maxima(y)) {
    std::size_t& slot = x[k] < 0.5 * options.omega0 ? lower : upper;
    if (slot == kNone || y[k] > y[slot]) slot = k;
  }
  if (lower == kNone && upper == kNone) {
    const auto k = static_cast<std::size_t>(std::max_element(y.begin(), y.end()) - y.begin());
    (x[k] < 0.5 * options.omega0 ? lower : upper) = k;
  }

  FitResult init;
  auto fill = [&](std::size_t peak, double& a, double& b, double& c) {
    double w = half_max_width(x, y, peak);
    if (!(w > 0.0)) w = options.default_width;
    b = w;
    c = x[peak];
    a = y[peak] * kPi * w / 2.0;
  };
  if (lower != kNone) fill(lower, init.a2, init.b2, init.x2);
  if (upper != kNone) {
    fill(upper, init.a3, init.b3, init.x3);
    init.x3 -= options.omega0;
  }
  // A missing line is seeded one line spacing away from the one that was found.
  auto fallback = [&](double center, double& a, double& b) {
    b = options.default_width;
    a = std::max(interpolate(x, y, center), 1e-6 * *std::max_element(y.begin(), y.end())) * kPi * b / 2.0;
  };
  if (lower == kNone) {
    init.x2 = init.x3;
    fallback(init.x2, init.a2, init.b2);
  }
  if (upper == kNone) {
    init.x3 = init.x2;
    fallback(options.omega0 + init.x3, init.a3, init.b3);
  }
  return init;
}

double lorentzian_sum(const std::vector<LorentzianLine>& lines, double x) {
  double sum = 0.0;
  for (const LorentzianLine& l : lines) sum += lorentz(l.area, l.width, l.center, x).value;
  return sum;
}

LorentzianSumFit fit_lorentzian_sum(const std::vector<double>& x, const std::vector<double>& y,
                                    const std::vector<LorentzianLine>& init, const FitOptions& options) {
  const std::size_t n = x.size();
  const auto m = static_cast<Eigen::Index>(init.size());
  if (init.empty()) throw std::invalid_argument("fit_lorentzian_sum: need at least one line");
  if (n < 4 * init.size() + 4 || y.size() != n) throw std::invalid_argument("fit_lorentzian_sum: too few points");
  const double y_scale = std::max(std::abs(*std::max_element(y.begin(), y.end())),
                                  std::abs(*std::min_element(y.begin(), y.end())));
  if (!(y_scale > 0.0)) throw std::invalid_argument("fit_lorentzian_sum: signal is identically zero");
  const double origin = x.front();
  const double x_scale = options.default_width > 0.0 ? options.default_width
                                                      : (x.back() - x.front()) / static_cast<double>(n - 1);

  // Work in t = (x - origin)/x_scale and y / y_scale so all parameters are O(1)-ish.
  Eigen::VectorXd t(n);
  Eigen::VectorXd yn(n);
  for (std::size_t k = 0; k < n; ++k) {
    t(static_cast<Eigen::Index>(k)) = (x[k] - origin) / x_scale;
    yn(static_cast<Eigen::Index>(k)) = y[k] / y_scale;
  }
  const double data_norm = yn.norm();

  Eigen::VectorXd p(3 * m);
  for (Eigen::Index l = 0; l < m; ++l) {
    const LorentzianLine& line = init[static_cast<std::size_t>(l)];
    p.segment<3>(3 * l) << line.area / (y_scale * x_scale), line.width / x_scale, (line.center - origin) / x_scale;
  }
  auto widths_positive = [m](const Eigen::VectorXd& q) {
    for (Eigen::Index l = 0; l < m; ++l) {
      if (!(q(3 * l + 1) > 0.0)) return false;
    }
    return true;
  };

  Eigen::MatrixXd jac(n, 3 * m);
  Eigen::VectorXd res(n);
  auto evaluate = [&](const Eigen::VectorXd& q, bool with_jacobian) {
    for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(n); ++k) {
      double value = -yn(k);
      for (Eigen::Index l = 0; l < m; ++l) {
        const Lorentz f = lorentz(q(3 * l), q(3 * l + 1), q(3 * l + 2), t(k));
        value += f.value;
        if (with_jacobian) jac.row(k).segment<3>(3 * l) << f.d_a, f.d_b, f.d_c;
      }
      res(k) = value;
    }
    return 0.5 * res.squaredNorm();
  };

  LorentzianSumFit out;
  double cost = evaluate(p, true);
  if (!std::isfinite(cost)) throw FitError("fit_lorentzian_sum: initial guess gives non-finite residual");
  double lambda = 1e-3;
  int iter = 0;
  for (; iter < options.max_iterations; ++iter) {
    const Eigen::VectorXd grad = jac.transpose() * res;
    const double jac_norm = jac.norm();
    if (cost == 0.0 || grad.norm() <= options.gradient_tolerance * jac_norm * data_norm) {
      out.converged = true;
      out.message = "gradient tolerance reached";
      break;
    }
    const Eigen::MatrixXd normal = jac.transpose() * jac;
    bool accepted = false;
    Eigen::VectorXd step;
    while (!accepted) {
      Eigen::MatrixXd damped = normal;
      for (Eigen::Index k = 0; k < 3 * m; ++k) damped(k, k) += lambda * std::max(normal(k, k), 1e-30);
      step = damped.ldlt().solve(-grad);
      const Eigen::VectorXd trial = p + step;
      if (trial.allFinite() && widths_positive(trial)) {
        Eigen::VectorXd saved_res = res;
        const double trial_cost = evaluate(trial, false);
        if (std::isfinite(trial_cost) && trial_cost <= cost) {
          p = trial;
          cost = evaluate(p, true);
          lambda = std::max(lambda / 10.0, 1e-15);
          accepted = true;
          break;
        }
        res = saved_res;
      }
      lambda *= 10.0;
      if (lambda > 1e16) break;
    }
    if (!accepted) {
      out.converged = grad.norm() <= 1e-8 * jac_norm * data_norm;
      out.message = "step rejected at maximum damping";
      break;
    }
    if (step.norm() <= 1e-15 * (p.norm() + 1e-15)) {
      out.converged = true;
      out.message = "step tolerance reached";
      ++iter;
      break;
    }
  }
  if (iter >= options.max_iterations && out.message.empty()) out.message = "iteration limit reached";
  out.iterations = iter;

  for (Eigen::Index l = 0; l < m; ++l) {
    out.lines.push_back({p(3 * l) * y_scale * x_scale, p(3 * l + 1) * x_scale, origin + p(3 * l + 2) * x_scale});
  }
  out.residual_norm = res.norm() / data_norm;
  out.peak_residual = res.cwiseAbs().maxCoeff() / yn.maxCoeff();
  return out;
}

FitResult fit_double_lorentzian(const std::vector<double>& x, const std::vector<double>& y,
                                const FitOptions& options, const std::optional<FitResult>& init) {
  if (x.size() < 12 || y.size() != x.size()) {
    throw std::invalid_argument("fit_double_lorentzian: need at least 12 points");
  }
  if (std::all_of(y.begin(), y.end(), [](double v) { return v == 0.0; })) {
    throw std::invalid_argument("fit_double_lorentzian: signal is identically zero");
  }
  const FitResult start = init ? *init : auto_initial_guess(x, y, options);
  const LorentzianSumFit f = fit_lorentzian_sum(
      x, y, {{start.a2, start.b2, start.x2}, {start.a3, start.b3, options.omega0 + start.x3}}, options);
  FitResult out;
  out.a2 = f.lines[0].area;
  out.b2 = f.lines[0].width;
  out.x2 = f.lines[0].center;
  out.a3 = f.lines[1].area;
  out.b3 = f.lines[1].width;
  out.x3 = f.lines[1].center - options.omega0;
  out.residual_norm = f.residual_norm;
  out.peak_residual = f.peak_residual;
  out.converged = f.converged;
  out.iterations = f.iterations;
  out.message = f.message;
  return out;
}

LorentzianSumFit fit_three_lorentzian(const std::vector<double>& x, const std::vector<double>& y,
                                      const FitResult& two_line, const FitOptions& options) {
  FitResult seed = two_line;
  if (!(seed.b2 > 0.0 && seed.b3 > 0.0 && std::isfinite(seed.x2) && std::isfinite(seed.x3))) {
    seed = auto_initial_guess(x, y, options);
  }
  std::size_t worst = 0;
  double excess = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double r = y[k] - double_lorentzian(seed, options.omega0, x[k]);
    if (r > excess) {
      excess = r;
      worst = k;
    }
  }
  const double width = options.default_width > 0.0 ? options.default_width : seed.b2;
  const double height = std::max(excess, 1e-3 * *std::max_element(y.begin(), y.end()));
  return fit_lorentzian_sum(x, y,
                            {{seed.a2, seed.b2, seed.x2},
                             {seed.a3, seed.b3, options.omega0 + seed.x3},
                             {height * kPi * width / 2.0, width, x[worst]}},
                            options);
}

FitResult fit_double_lorentzian(const SpectrumTable& table, const FitOptions& options,
                                const std::optional<FitResult>& init) {
  return fit_double_lorentzian(table.detunings, table.signal, options, init);
}

std::pair<double, double> line_shift(const FitResult& full, const FitResult& reference) {
  if (!full.converged || !reference.converged) {
    throw FitError("line_shift: fit did not converge (" + (full.converged ? reference.message : full.message) + ")");
  }
  return {angular_to_hz(full.x2 - reference.x2), angular_to_hz(full.x3 - reference.x3)};
}

}  // namespace superlind
