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
#include <stdexcept>
#include <string>
#include <vector>

#include "superlind/types.hpp"

namespace superlind {

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateNullSpace : public SolverError {
 public:
  DegenerateNullSpace(const std::string& what, std::size_t dim) : SolverError(what), dim_(dim) {}
  std::size_t null_dim() const { return dim_; }

 private:
  std::size_t dim_;
};

struct SteadyState {
  OperatorMatrix rho;
  double residual = 0.0;  // ||L vec(rho)||
  std::size_t null_dim = 0;
};

enum class DegeneracyPolicy {
  kError,
  // Trace-one element of the null space closest to the maximally mixed state
  // in Hilbert-Schmidt norm (maximal linear entropy).
  kMaximumEntropy,
};

struct SolveOptions {
  double null_threshold = 1e-9;  // relative to the largest pivot
  DegeneracyPolicy degeneracy = DegeneracyPolicy::kError;
};

// Orthonormal basis of Hermitian d x d matrices: E_kk, (E_kl + E_lk)/sqrt2 and
// i(E_kl - E_lk)/sqrt2 for k < l. A Hermiticity-preserving superoperator is
// real in this basis.
class HermitianBasis {
 public:
  explicit HermitianBasis(Eigen::Index dim);

  Eigen::Index dim() const { return dim_; }
  Eigen::Index size() const { return dim_ * dim_; }

  Eigen::MatrixXd represent(const Superoperator& l) const;
  Eigen::VectorXd coordinates(const OperatorMatrix& rho) const;
  OperatorMatrix matrix(const Eigen::VectorXd& coords) const;
  // Coordinates of the identity; trace(rho) = identity().dot(coords).
  Eigen::VectorXd identity() const;

 private:
  Eigen::Index dim_;
};

// Unit-trace null vector of a real-represented generator.
SteadyState solve_null_space(const Eigen::MatrixXd& generator, const HermitianBasis& basis,
                             const SolveOptions& options = {});
SteadyState solve_null_space(const Superoperator& l, const SolveOptions& options = {});

// vec rho(t) = exp(L t) vec rho0, applied as repeated steps of length dt_step.
OperatorMatrix propagate(const Superoperator& l, const OperatorMatrix& rho0, double t_final, double dt_step);

// 0.5 * sum |eigenvalues(a - b)| for Hermitian a, b.
double trace_distance(const OperatorMatrix& a, const OperatorMatrix& b);

}  // namespace superlind
