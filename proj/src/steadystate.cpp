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

#include "superlind/steadystate.hpp"

#include <cmath>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

namespace superlind {

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

// Basis element b sits at vec position b = k + l*dim: diagonal for k == l,
// symmetric combination for k < l, antisymmetric for k > l.
HermitianBasis::HermitianBasis(Eigen::Index dim) : dim_(dim) {
  if (dim <= 0) throw std::invalid_argument("HermitianBasis: dimension must be positive");
}

Eigen::MatrixXd HermitianBasis::represent(const Superoperator& l) const {
  const Eigen::Index n = size();
  if (l.rows() != n || l.cols() != n) throw std::invalid_argument("HermitianBasis: superoperator dimension mismatch");
  const Complex i(0.0, 1.0);
  Eigen::MatrixXcd lt(n, n);
  for (Eigen::Index col = 0; col < dim_; ++col) {
    for (Eigen::Index row = 0; row < dim_; ++row) {
      const Eigen::Index p = row + col * dim_;
      const Eigen::Index q = col + row * dim_;
      if (row == col) {
        lt.col(p) = l.col(p);
      } else if (row < col) {
        lt.col(p) = kInvSqrt2 * (l.col(p) + l.col(q));
      } else {
        // element at p = (k, l) with k > l stores i(E_lk - E_kl)/sqrt2
        lt.col(p) = kInvSqrt2 * i * (l.col(q) - l.col(p));
      }
    }
  }
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index col = 0; col < dim_; ++col) {
    for (Eigen::Index row = 0; row < dim_; ++row) {
      const Eigen::Index p = row + col * dim_;
      const Eigen::Index q = col + row * dim_;
      if (row == col) {
        out.row(p) = lt.row(p).real();
      } else if (row < col) {
        out.row(p) = (kInvSqrt2 * (lt.row(p) + lt.row(q))).real();
      } else {
        out.row(p) = (kInvSqrt2 * (-i) * (lt.row(q) - lt.row(p))).real();
      }
    }
  }
  return out;
}

Eigen::VectorXd HermitianBasis::coordinates(const OperatorMatrix& rho) const {
  if (rho.rows() != dim_ || rho.cols() != dim_) throw std::invalid_argument("HermitianBasis: operator dimension mismatch");
  Eigen::VectorXd r(size());
  const double sqrt2 = std::sqrt(2.0);
  for (Eigen::Index col = 0; col < dim_; ++col) {
    for (Eigen::Index row = 0; row < dim_; ++row) {
      const Eigen::Index p = row + col * dim_;
      if (row == col) {
        r(p) = rho(row, row).real();
      } else if (row < col) {
        r(p) = 0.5 * sqrt2 * (rho(row, col) + rho(col, row)).real();
      } else {
        // Tr(i(E_lk - E_kl) rho)/sqrt2 with k = row > l = col
        r(p) = 0.5 * sqrt2 * (Complex(0.0, 1.0) * (rho(row, col) - rho(col, row))).real();
      }
    }
  }
  return r;
}

OperatorMatrix HermitianBasis::matrix(const Eigen::VectorXd& coords) const {
  if (coords.size() != size()) throw std::invalid_argument("HermitianBasis: coordinate length mismatch");
  OperatorMatrix rho(dim_, dim_);
  for (Eigen::Index k = 0; k < dim_; ++k) {
    rho(k, k) = coords(k + k * dim_);
    for (Eigen::Index l = k + 1; l < dim_; ++l) {
      const double x = coords(k + l * dim_);
      const double y = coords(l + k * dim_);
      // i(E_kl - E_lk)/sqrt2 is stored at position (l, k)
      rho(k, l) = kInvSqrt2 * Complex(x, y);
      rho(l, k) = kInvSqrt2 * Complex(x, -y);
    }
  }
  return rho;
}

Eigen::VectorXd HermitianBasis::identity() const {
  Eigen::VectorXd id = Eigen::VectorXd::Zero(size());
  for (Eigen::Index k = 0; k < dim_; ++k) id(k + k * dim_) = 1.0;
  return id;
}

SteadyState solve_null_space(const Eigen::MatrixXd& generator, const HermitianBasis& basis,
                             const SolveOptions& options) {
  const Eigen::Index n = generator.rows();
  if (generator.cols() != n || n != basis.size()) throw std::invalid_argument("solve_null_space: dimension mismatch");
  if (!generator.allFinite()) throw SolverError("solve_null_space: generator has non-finite entries");

  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(generator);
  const Eigen::MatrixXd& packed = qr.matrixQR();
  const double largest = std::abs(packed(0, 0));
  if (largest == 0.0) throw DegenerateNullSpace("solve_null_space: generator is zero", static_cast<std::size_t>(n));
  Eigen::Index rank = 0;
  while (rank < n && std::abs(packed(rank, rank)) > options.null_threshold * largest) ++rank;
  const Eigen::Index null_dim = n - rank;
  if (null_dim == 0) {
    std::ostringstream msg;
    msg << "solve_null_space: no null vector (smallest pivot ratio "
        << std::abs(packed(n - 1, n - 1)) / largest << ")";
    throw SolverError(msg.str());
  }
  if (null_dim > 1 && options.degeneracy == DegeneracyPolicy::kError) {
    throw DegenerateNullSpace("solve_null_space: null space dimension " + std::to_string(null_dim),
                              static_cast<std::size_t>(null_dim));
  }

  // Null vectors in the permuted frame: [-R11^{-1} R12 e_k; e_k].
  const auto r11 = packed.topLeftCorner(rank, rank).triangularView<Eigen::Upper>();
  Eigen::MatrixXd kernel(n, null_dim);
  for (Eigen::Index k = 0; k < null_dim; ++k) {
    Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
    z(rank + k) = 1.0;
    z.head(rank) = -r11.solve(packed.block(0, rank + k, rank, 1));
    kernel.col(k) = qr.colsPermutation() * z;
  }

  const Eigen::VectorXd id = basis.identity();
  Eigen::VectorXd x;
  if (null_dim == 1) {
    x = kernel.col(0);
  } else {
    const Eigen::HouseholderQR<Eigen::MatrixXd> orth(kernel);
    const Eigen::MatrixXd q = orth.householderQ() * Eigen::MatrixXd::Identity(n, null_dim);
    x = q * (q.transpose() * id);
  }
  const double trace = id.dot(x);
  if (!(std::abs(trace) > 0.0) || !std::isfinite(trace)) throw SolverError("solve_null_space: null vector has zero trace");
  x /= trace;

  SteadyState out;
  out.rho = basis.matrix(x);
  out.residual = (generator * x).norm();
  out.null_dim = static_cast<std::size_t>(null_dim);
  return out;
}

SteadyState solve_null_space(const Superoperator& l, const SolveOptions& options) {
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(l.rows()))));
  if (d * d != l.rows()) throw std::invalid_argument("solve_null_space: superoperator is not d^2 x d^2");
  const HermitianBasis basis(d);
  return solve_null_space(basis.represent(l), basis, options);
}

OperatorMatrix propagate(const Superoperator& l, const OperatorMatrix& rho0, double t_final, double dt_step) {
  const Eigen::Index d = rho0.rows();
  const Eigen::Index n = d * d;
  if (rho0.cols() != d || l.rows() != n || l.cols() != n) {
    throw std::invalid_argument("propagate: dimension mismatch");
  }
  if (!(t_final >= 0.0) || !(dt_step > 0.0)) throw std::invalid_argument("propagate: need t_final >= 0, dt_step > 0");
  const auto steps = static_cast<long long>(std::floor(t_final / dt_step));
  const double remainder = t_final - static_cast<double>(steps) * dt_step;

  // Reflection exchanging e_0 and vec(1)/sqrt(d): in the reflected frame the
  // first coordinate is the trace and the generator's first row vanishes.
  Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
  for (Eigen::Index k = 0; k < d; ++k) u(k + k * d) = 1.0 / std::sqrt(static_cast<double>(d));
  Eigen::VectorXd v = -u;
  v(0) += 1.0;
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n);
  if (v.norm() > 0.0) h -= 2.0 * v * v.transpose() / v.squaredNorm();

  Superoperator m = h * l * h;
  const double leak = m.row(0).norm();
  if (leak > 1e-10 * std::max(1.0, l.norm())) {
    std::ostringstream msg;
    msg << "propagate: generator does not preserve trace (row norm " << leak << ")";
    throw SolverError(msg.str());
  }
  m.row(0).setZero();

  ComplexVector<double> y = h * Eigen::Map<const ComplexVector<double>>(rho0.data(), n);
  const Complex trace0 = rho0.trace();
  const double root_d = std::sqrt(static_cast<double>(d));
  auto check = [&](long long step) {
    const double drift = std::abs(root_d * y(0) - trace0);
    if (!y.allFinite() || drift > 1e-10 * std::max(1.0, std::abs(trace0))) {
      std::ostringstream msg;
      msg << "propagate: trace drift " << drift << " after step " << step;
      throw SolverError(msg.str());
    }
  };

  // With a zero first row of m, the first row of exp(m t) is exactly e_0.
  auto step_matrix = [&](double t) {
    Superoperator e = (m * t).exp();
    e.row(0).setZero();
    e(0, 0) = 1.0;
    return e;
  };
  if (steps > 0) {
    const Superoperator step = step_matrix(dt_step);
    for (long long s = 0; s < steps; ++s) {
      y = step * y;
      check(s + 1);
    }
  }
  if (remainder > 0.0) {
    y = step_matrix(remainder) * y;
    check(steps + 1);
  }
  const ComplexVector<double> out = h * y;
  return Eigen::Map<const OperatorMatrix>(out.data(), d, d);
}

double trace_distance(const OperatorMatrix& a, const OperatorMatrix& b) {
  const OperatorMatrix diff = a - b;
  const OperatorMatrix herm = 0.5 * (diff + diff.adjoint());
  const Eigen::SelfAdjointEigenSolver<OperatorMatrix> es(herm, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace superlind
