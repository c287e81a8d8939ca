// Copyright 2026 The blochur Authors.
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

// Bloch-vector form of states and observables in the generator basis:
//
//   rho = I/N + (1/2) sum_j p_j l_j,  p_j = Tr[rho l_j]
//   A   = sum_j a_j l_j,              a_j = Tr[A l_j]/2   (A traceless)
//
// together with the primed vector a'_l = sum_jk a_j a_k d_jkl, i.e. the
// Bloch vector of the traceless part of A^2.

#include <cmath>
#include <sstream>

#include "blochur/linalg.hpp"
#include "blochur/sun_basis.hpp"

namespace blochur {

namespace tolerance {
inline constexpr double kUnitTrace = 1e-12;
/// Smallest eigenvalue still accepted as positive semidefinite.
inline constexpr double kPsd = 1e-10;
inline constexpr double kPurityConsistency = 1e-11;
}  // namespace tolerance

template <typename Scalar>
class QuantumState {
 public:
  /// Decomposes a density matrix. Throws UnphysicalState for a non-unit trace
  /// or an eigenvalue below -tolerance::kPsd.
  static QuantumState from_matrix(HermitianMatrix<Scalar> rho, const GeneratorBasis<Scalar>& basis) {
    if (rho.dim() != basis.dim()) throw DimensionMismatch("state dimension differs from basis");
    RVector<Scalar> p = basis.project(rho);
    return QuantumState(std::move(rho), std::move(p));
  }

  /// Rebuilds rho from a Bloch vector; positivity is verified, since for N > 2
  /// most of the ball of radius sqrt(2(1-1/N)) is unphysical.
  static QuantumState from_bloch(RVector<Scalar> p, const GeneratorBasis<Scalar>& basis) {
    if (p.size() != basis.size()) throw DimensionMismatch("Bloch vector length must be N^2 - 1");
    const int n = basis.dim();
    CMatrix<Scalar> m = CMatrix<Scalar>::Identity(n, n) / Scalar(n);
    m += basis.combine(p).matrix() / Scalar(2);
    return QuantumState(HermitianMatrix<Scalar>(std::move(m)), std::move(p));
  }

  int dim() const { return static_cast<int>(rho_.dim()); }
  const HermitianMatrix<Scalar>& rho() const { return rho_; }
  const RVector<Scalar>& bloch() const { return p_; }
  /// |p|^2, 0 for I/N and 2(1 - 1/N) for pure states.
  Scalar purity() const { return p_.squaredNorm(); }
  Scalar min_eigenvalue() const { return min_eigenvalue_; }

 private:
  QuantumState(HermitianMatrix<Scalar> rho, RVector<Scalar> p) : rho_(std::move(rho)), p_(std::move(p)) {
    const Index n = rho_.dim();
    const Complex<Scalar> tr = trace(rho_);
    if (std::abs(tr - Complex<Scalar>(1)) > Scalar(tolerance::kUnitTrace)) {
      std::ostringstream os;
      os << "density matrix trace is " << static_cast<double>(tr.real()) << ", expected 1";
      throw UnphysicalState(os.str());
    }
    min_eigenvalue_ = eigh(rho_).values(0);
    if (min_eigenvalue_ < -Scalar(tolerance::kPsd)) {
      std::ostringstream os;
      os << "unphysical state: eigenvalue " << static_cast<double>(min_eigenvalue_) << " < 0";
      throw UnphysicalState(os.str());
    }
    const Scalar tr_sq = trace_product(rho_, rho_).real();
    const Scalar from_matrix = Scalar(2) * (tr_sq - Scalar(1) / Scalar(n));
    if (std::abs(from_matrix - p_.squaredNorm()) > Scalar(tolerance::kPurityConsistency))
      throw ConsistencyError("Bloch vector inconsistent with density matrix");
  }

  HermitianMatrix<Scalar> rho_;
  RVector<Scalar> p_;
  Scalar min_eigenvalue_ = 0;
};

/// Traceless Hermitian observable with its Bloch vector a and primed vector a'.
template <typename Scalar>
class Observable {
 public:
  /// Any Hermitian matrix is accepted; the multiple of the identity is removed
  /// first (variances do not see it) and its trace kept for reporting.
  static Observable from_matrix(const HermitianMatrix<Scalar>& a, const GeneratorBasis<Scalar>& basis) {
    if (a.dim() != basis.dim()) throw DimensionMismatch("observable dimension differs from basis");
    const Index n = a.dim();
    const Scalar tr = trace(a).real();
    CMatrix<Scalar> shifted = a.matrix();
    shifted.diagonal().array() -= Complex<Scalar>(tr / Scalar(n));
    HermitianMatrix<Scalar> traceless(std::move(shifted));
    RVector<Scalar> vec = basis.project(traceless) / Scalar(2);
    RVector<Scalar> primed = basis.contract_d(vec, vec);
    return Observable(std::move(traceless), std::move(vec), std::move(primed), tr);
  }

  static Observable from_bloch(const RVector<Scalar>& a, const GeneratorBasis<Scalar>& basis) {
    if (a.size() != basis.size()) throw DimensionMismatch("Bloch vector length must be N^2 - 1");
    return Observable(basis.combine(a), a, basis.contract_d(a, a), Scalar(0));
  }

  int dim() const { return static_cast<int>(matrix_.dim()); }
  const HermitianMatrix<Scalar>& matrix() const { return matrix_; }
  const RVector<Scalar>& bloch() const { return a_; }
  const RVector<Scalar>& primed() const { return a_prime_; }
  /// Tr[A] of the matrix originally supplied.
  Scalar original_trace() const { return original_trace_; }

  /// -A: a flips sign, a' is quadratic in a and stays.
  Observable negated() const {
    return Observable(HermitianMatrix<Scalar>(CMatrix<Scalar>(-matrix_.matrix())), -a_, a_prime_,
                      -original_trace_);
  }

 private:
  Observable(HermitianMatrix<Scalar> m, RVector<Scalar> a, RVector<Scalar> a_prime, Scalar tr)
      : matrix_(std::move(m)), a_(std::move(a)), a_prime_(std::move(a_prime)), original_trace_(tr) {}

  HermitianMatrix<Scalar> matrix_;
  RVector<Scalar> a_;
  RVector<Scalar> a_prime_;
  Scalar original_trace_;
};

template <typename Scalar>
QuantumState<Scalar> state_from_matrix(const HermitianMatrix<Scalar>& rho, const GeneratorBasis<Scalar>& basis) {
  return QuantumState<Scalar>::from_matrix(rho, basis);
}

template <typename Scalar>
QuantumState<Scalar> state_to_matrix(const RVector<Scalar>& p, const GeneratorBasis<Scalar>& basis) {
  return QuantumState<Scalar>::from_bloch(p, basis);
}

template <typename Scalar>
Observable<Scalar> observable_from_matrix(const HermitianMatrix<Scalar>& a, const GeneratorBasis<Scalar>& basis) {
  return Observable<Scalar>::from_matrix(a, basis);
}

template <typename Scalar>
Observable<Scalar> observable_from_bloch(const RVector<Scalar>& a, const GeneratorBasis<Scalar>& basis) {
  return Observable<Scalar>::from_bloch(a, basis);
}

template <typename Scalar>
Scalar purity(const QuantumState<Scalar>& state) {
  return state.purity();
}

using Basis = GeneratorBasis<double>;
using State = QuantumState<double>;
using Obs = Observable<double>;

}  // namespace blochur
