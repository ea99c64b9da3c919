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

// Column-stacking vectorization: vec(A X B) = (B^T kron A) vec(X).

#pragma once

#include <unsupported/Eigen/KroneckerProduct>

#include "superlind/types.hpp"

namespace superlind {

template <typename Derived>
ComplexVector<typename Derived::RealScalar> vec(const Eigen::MatrixBase<Derived>& m) {
  using Real = typename Derived::RealScalar;
  ComplexMatrix<Real> copy = m;
  return Eigen::Map<const ComplexVector<Real>>(copy.data(), copy.size());
}

template <typename Derived>
ComplexMatrix<typename Derived::RealScalar> unvec(const Eigen::MatrixBase<Derived>& v, Eigen::Index dim) {
  using Real = typename Derived::RealScalar;
  ComplexVector<Real> copy = v;
  return Eigen::Map<const ComplexMatrix<Real>>(copy.data(), dim, dim);
}

// X -> A X
template <typename Derived>
ComplexMatrix<typename Derived::RealScalar> left_multiplication(const Eigen::MatrixBase<Derived>& a) {
  using Real = typename Derived::RealScalar;
  const ComplexMatrix<Real> id = ComplexMatrix<Real>::Identity(a.rows(), a.rows());
  return Eigen::kroneckerProduct(id, a.eval());
}

// X -> X B
template <typename Derived>
ComplexMatrix<typename Derived::RealScalar> right_multiplication(const Eigen::MatrixBase<Derived>& b) {
  using Real = typename Derived::RealScalar;
  const ComplexMatrix<Real> id = ComplexMatrix<Real>::Identity(b.rows(), b.rows());
  return Eigen::kroneckerProduct(b.transpose().eval(), id);
}

// X -> A X B
template <typename DerivedA, typename DerivedB>
ComplexMatrix<typename DerivedA::RealScalar> sandwich(const Eigen::MatrixBase<DerivedA>& a,
                                                      const Eigen::MatrixBase<DerivedB>& b) {
  return Eigen::kroneckerProduct(b.transpose().eval(), a.eval());
}

// X -> -i [H, X]
template <typename Derived>
ComplexMatrix<typename Derived::RealScalar> commutator_superoperator(const Eigen::MatrixBase<Derived>& h) {
  using Real = typename Derived::RealScalar;
  const std::complex<Real> minus_i(0, -1);
  return minus_i * (left_multiplication(h) - right_multiplication(h));
}

// Places a single-emitter operator at slot `site` of a register of
// `num_sites` identical emitters. Slot 0 is the leftmost tensor factor.
template <typename Derived>
ComplexMatrix<typename Derived::RealScalar> embed(const Eigen::MatrixBase<Derived>& op, std::size_t site,
                                                  std::size_t num_sites) {
  using Real = typename Derived::RealScalar;
  const Eigen::Index levels = op.rows();
  ComplexMatrix<Real> result = ComplexMatrix<Real>::Identity(1, 1);
  for (std::size_t s = 0; s < num_sites; ++s) {
    const ComplexMatrix<Real> factor =
        s == site ? ComplexMatrix<Real>(op) : ComplexMatrix<Real>::Identity(levels, levels);
    result = Eigen::kroneckerProduct(result, factor).eval();
  }
  return result;
}

}  // namespace superlind
