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

// Scalar kernels of the coarse-grained generator: the resonance factor, its
// Gaussian-smoothed form, spherical Bessel functions and the dipole-dipole
// geometric factor.

#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "superlind/types.hpp"

namespace superlind {

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved_tolerance() const { return achieved_; }

 private:
  double achieved_;
};

enum class BesselKind { kFirst, kSecond };

namespace detail {

// Below this argument j0 and j1(x)/x are summed from their Taylor series; the
// closed form of j1(x)/x loses ~eps/x^2 to cancellation.
inline constexpr double kBesselSeriesCutoff = 0.1;

template <typename T>
T sinc(T x) {
  using std::abs;
  using std::sin;
  if (abs(x) < T(1e-4)) {
    const T x2 = x * x;
    return T(1) - x2 / T(6) + x2 * x2 / T(120);
  }
  return sin(x) / x;
}

// j0(x) = sum_k (-1)^k x^{2k} / (2k+1)!
template <typename T>
T j0_series(T x) {
  const T x2 = x * x;
  T term = T(1);
  T sum = T(1);
  for (int k = 1; k <= 6; ++k) {
    term *= -x2 / T((2 * k) * (2 * k + 1));
    sum += term;
  }
  return sum;
}

// j1(x)/x = sum_k (-1)^k 2(k+1) x^{2k} / (2k+3)!
template <typename T>
T j1_over_x_series(T x) {
  const T x2 = x * x;
  T inv_fact = T(1) / T(6);  // 1/(2k+3)! at k = 0
  T power = T(1);
  T sum = T(0);
  for (int k = 0; k <= 6; ++k) {
    sum += power * T(2 * (k + 1)) * inv_fact;
    power *= -x2;
    inv_fact /= T((2 * k + 4) * (2 * k + 5));
  }
  return sum;
}

}  // namespace detail

// sin(g dt/2)/(g dt/2) with g = omega_i - omega_j.
template <typename T>
T theta_sinc(T omega_i, T omega_j, T dt) {
  using std::abs;
  using std::sin;
  const T x = (omega_i - omega_j) * dt / T(2);
  if (abs(x) < T(5e-7)) {
    return T(1) - x * x / T(6);
  }
  return sin(x) / x;
}

template <typename T>
T spherical_j0(T x) {
  using std::abs;
  using std::sin;
  if (abs(x) < T(detail::kBesselSeriesCutoff)) return detail::j0_series(x);
  return sin(x) / x;
}

template <typename T>
T spherical_j1_over_x(T x) {
  using std::abs;
  using std::cos;
  using std::sin;
  if (abs(x) < T(detail::kBesselSeriesCutoff)) return detail::j1_over_x_series(x);
  return (sin(x) - x * cos(x)) / (x * x * x);
}

template <typename T>
T spherical_bessel(BesselKind kind, int order, T x) {
  using std::cos;
  using std::sin;
  if (order != 0 && order != 1) throw std::invalid_argument("spherical_bessel: order must be 0 or 1");
  if (kind == BesselKind::kFirst) {
    if (x < T(0)) throw std::domain_error("spherical_bessel: first kind needs x >= 0");
    return order == 0 ? spherical_j0(x) : x * spherical_j1_over_x(x);
  }
  if (!(x > T(0))) throw std::domain_error("spherical_bessel: second kind needs x > 0");
  if (order == 0) return -cos(x) / x;
  return -cos(x) / (x * x) - sin(x) / x;
}

// 4 pi ( b0(kR) [1 - (d_i.R)(d_j.R)] - b1(kR)/(kR) [1 - 3 (d_i.R)(d_j.R)] ),
// with b = j (first kind) or y (second kind).
template <typename T>
T geometric_factor(BesselKind kind, T k, const Vector3<T>& r_vec, const Vector3<T>& d_i,
                   const Vector3<T>& d_j) {
  using std::cos;
  using std::sin;
  const T four_pi = T(4) * std::numbers::pi_v<T>;
  const T r = r_vec.norm();
  if (r == T(0)) {
    if (kind == BesselKind::kSecond) throw std::domain_error("geometric_factor: zero distance for second kind");
    return T(8) * std::numbers::pi_v<T> / T(3);
  }
  const Vector3<T> unit = r_vec / r;
  const T proj = d_i.dot(unit) * d_j.dot(unit);
  const T x = k * r;
  T b0;
  T b1_over_x;
  if (kind == BesselKind::kFirst) {
    b0 = spherical_j0(x);
    b1_over_x = spherical_j1_over_x(x);
  } else {
    b0 = -cos(x) / x;
    b1_over_x = (-cos(x) / x - sin(x)) / (x * x);
  }
  return four_pi * (b0 * (T(1) - proj) - b1_over_x * (T(1) - T(3) * proj));
}

// Gaussian-smoothed resonance factor normalized to F(0) = 1. Adaptive
// Gauss-Kronrod quadrature to 1e-10 relative; throws QuadratureError
// otherwise.
double smoothed_theta(double omega_gap, double dt);

// 1/(exp(hbar omega / k_B T) - 1); zero at T = 0.
double bose_occupation(double omega, double temperature);

}  // namespace superlind
