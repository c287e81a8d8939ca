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

// Dense complex matrices for the small (N <= ~10) operators used throughout
// the library. Storage is Eigen; the Hermitian eigensolver is a cyclic complex
// Jacobi iteration.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "blochur/errors.hpp"

namespace blochur {

using Index = Eigen::Index;

template <typename Scalar>
using Complex = std::complex<Scalar>;

template <typename Scalar>
using CMatrix = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using CVector = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, 1>;

template <typename Scalar>
using RVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

namespace tolerance {
/// Largest per-entry asymmetry |M - M^dagger| absorbed by symmetrization.
inline constexpr double kHermitian = 1e-12;
/// Jacobi stops once the off-diagonal Frobenius norm drops below this
/// (relative to max(1, ||A||_F)).
inline constexpr double kJacobiOffNorm = 1e-13;
inline constexpr int kJacobiMaxSweeps = 100;
}  // namespace tolerance

/// Square, finite complex matrix.
template <typename Scalar>
class ComplexMatrix {
 public:
  using Storage = CMatrix<Scalar>;
  using value_type = Complex<Scalar>;

  explicit ComplexMatrix(Storage m) : m_(std::move(m)) {
    if (m_.rows() == 0 || m_.rows() != m_.cols()) {
      std::ostringstream os;
      os << "ComplexMatrix must be square and non-empty, got " << m_.rows() << "x" << m_.cols();
      throw DimensionMismatch(os.str());
    }
    for (Index j = 0; j < m_.cols(); ++j)
      for (Index i = 0; i < m_.rows(); ++i)
        if (!std::isfinite(m_(i, j).real()) || !std::isfinite(m_(i, j).imag()))
          throw std::invalid_argument("ComplexMatrix entries must be finite");
  }

  static ComplexMatrix identity(Index n) { return ComplexMatrix(Storage::Identity(n, n)); }
  static ComplexMatrix zero(Index n) { return ComplexMatrix(Storage::Zero(n, n)); }

  /// Builds from `dim * dim` entries in row-major order.
  static ComplexMatrix from_row_major(Index dim, std::span<const value_type> entries) {
    if (dim <= 0 || static_cast<Index>(entries.size()) != dim * dim)
      throw DimensionMismatch("row-major entry count must equal dim^2");
    Storage m(dim, dim);
    for (Index i = 0; i < dim; ++i)
      for (Index j = 0; j < dim; ++j) m(i, j) = entries[static_cast<std::size_t>(i * dim + j)];
    return ComplexMatrix(std::move(m));
  }

  Index dim() const { return m_.rows(); }
  const Storage& matrix() const { return m_; }
  value_type operator()(Index i, Index j) const { return m_(i, j); }

  std::vector<value_type> row_major() const {
    std::vector<value_type> out;
    out.reserve(static_cast<std::size_t>(dim() * dim()));
    for (Index i = 0; i < dim(); ++i)
      for (Index j = 0; j < dim(); ++j) out.push_back(m_(i, j));
    return out;
  }

 private:
  Storage m_;
};

/// Complex matrix equal to its conjugate transpose. Construction absorbs
/// asymmetry up to tolerance::kHermitian per entry by replacing M with
/// (M + M^dagger)/2 and rejects anything larger.
template <typename Scalar>
class HermitianMatrix : public ComplexMatrix<Scalar> {
 public:
  using Storage = typename ComplexMatrix<Scalar>::Storage;

  explicit HermitianMatrix(Storage m) : ComplexMatrix<Scalar>(symmetrized(std::move(m))) {}
  explicit HermitianMatrix(const ComplexMatrix<Scalar>& m) : HermitianMatrix(m.matrix()) {}

  static HermitianMatrix identity(Index n) { return HermitianMatrix(Storage::Identity(n, n)); }

 private:
  static Storage symmetrized(Storage m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("Hermitian matrix must be square");
    const Scalar worst = m.rows() == 0 ? Scalar(0) : (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (!(worst <= Scalar(tolerance::kHermitian))) {
      std::ostringstream os;
      os << "matrix is not Hermitian: max |M - M^dagger| = " << static_cast<double>(worst);
      throw NotHermitian(os.str());
    }
    Storage h = (m + m.adjoint()) / Scalar(2);
    return h;
  }
};

template <typename Scalar>
void require_same_dim(const ComplexMatrix<Scalar>& a, const ComplexMatrix<Scalar>& b, const char* what) {
  if (a.dim() != b.dim()) {
    std::ostringstream os;
    os << what << ": dimension mismatch (" << a.dim() << " vs " << b.dim() << ")";
    throw DimensionMismatch(os.str());
  }
}

template <typename Scalar>
ComplexMatrix<Scalar> matmul(const ComplexMatrix<Scalar>& a, const ComplexMatrix<Scalar>& b) {
  require_same_dim(a, b, "matmul");
  return ComplexMatrix<Scalar>(a.matrix() * b.matrix());
}

template <typename Scalar>
Complex<Scalar> trace(const ComplexMatrix<Scalar>& a) {
  return a.matrix().trace();
}

/// Tr[AB] without forming the product.
template <typename Scalar>
Complex<Scalar> trace_product(const ComplexMatrix<Scalar>& a, const ComplexMatrix<Scalar>& b) {
  require_same_dim(a, b, "trace_product");
  return (a.matrix().array() * b.matrix().transpose().array()).sum();
}

/// [A, B] = AB - BA (anti-Hermitian for Hermitian inputs).
template <typename Scalar>
ComplexMatrix<Scalar> commutator(const HermitianMatrix<Scalar>& a, const HermitianMatrix<Scalar>& b) {
  require_same_dim(a, b, "commutator");
  return ComplexMatrix<Scalar>(a.matrix() * b.matrix() - b.matrix() * a.matrix());
}

/// {A, B} = AB + BA.
template <typename Scalar>
HermitianMatrix<Scalar> anticommutator(const HermitianMatrix<Scalar>& a, const HermitianMatrix<Scalar>& b) {
  require_same_dim(a, b, "anticommutator");
  return HermitianMatrix<Scalar>(CMatrix<Scalar>(a.matrix() * b.matrix() + b.matrix() * a.matrix()));
}

template <typename Scalar>
struct EigenDecomposition {
  RVector<Scalar> values;   ///< ascending
  CMatrix<Scalar> vectors;  ///< column k belongs to values[k]
  int sweeps = 0;
};

/// Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Each rotation removes the phase of the pivot A(p,q) and then
/// applies the real symmetric Jacobi rotation with |angle| <= pi/4.
template <typename Scalar>
EigenDecomposition<Scalar> eigh(const HermitianMatrix<Scalar>& h) {
  using std::abs;
  using std::sqrt;
  using C = Complex<Scalar>;

  const Index n = h.dim();
  CMatrix<Scalar> a = h.matrix();
  CMatrix<Scalar> v = CMatrix<Scalar>::Identity(n, n);

  auto off_norm = [&] {
    Scalar s = 0;
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < n; ++i)
        if (i != j) s += std::norm(a(i, j));
    return sqrt(s);
  };
  const Scalar threshold =
      Scalar(tolerance::kJacobiOffNorm) * std::max(Scalar(1), Scalar(h.matrix().norm()));

  int sweep = 0;
  for (; off_norm() >= threshold; ++sweep) {
    if (sweep >= tolerance::kJacobiMaxSweeps) {
      std::ostringstream os;
      os << "eigh: no convergence after " << tolerance::kJacobiMaxSweeps
         << " sweeps (off-diagonal norm " << static_cast<double>(off_norm()) << ")";
      throw ConvergenceError(os.str());
    }
    for (Index p = 0; p + 1 < n; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const C b = a(p, q);
        const Scalar h_abs = abs(b);
        if (h_abs == Scalar(0)) continue;
        const C phase = b / h_abs;  // e^{i alpha}
        const Scalar app = a(p, p).real();
        const Scalar aqq = a(q, q).real();
        const Scalar zeta = (aqq - app) / (Scalar(2) * h_abs);
        const Scalar t = (zeta >= 0 ? Scalar(1) : Scalar(-1)) / (abs(zeta) + sqrt(zeta * zeta + Scalar(1)));
        const Scalar c = Scalar(1) / sqrt(t * t + Scalar(1));
        const Scalar s = t * c;
        const C ph_conj = std::conj(phase);

        // A <- A J, V <- V J with J = [[c, s], [-s e^{-i alpha}, c e^{-i alpha}]] on (p, q).
        for (Index i = 0; i < n; ++i) {
          const C aip = a(i, p), aiq = a(i, q);
          a(i, p) = c * aip - s * ph_conj * aiq;
          a(i, q) = s * aip + c * ph_conj * aiq;
          const C vip = v(i, p), viq = v(i, q);
          v(i, p) = c * vip - s * ph_conj * viq;
          v(i, q) = s * vip + c * ph_conj * viq;
        }
        // A <- J^dagger A
        for (Index j = 0; j < n; ++j) {
          const C apj = a(p, j), aqj = a(q, j);
          a(p, j) = c * apj - s * phase * aqj;
          a(q, j) = s * apj + c * phase * aqj;
        }
        a(p, q) = C(0);
        a(q, p) = C(0);
        a(p, p) = C(a(p, p).real());
        a(q, q) = C(a(q, q).real());
      }
    }
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index x, Index y) { return a(x, x).real() < a(y, y).real(); });

  EigenDecomposition<Scalar> out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  out.sweeps = sweep;
  for (Index k = 0; k < n; ++k) {
    const Index src = order[static_cast<std::size_t>(k)];
    out.values(k) = a(src, src).real();
    out.vectors.col(k) = v.col(src);
  }
  return out;
}

}  // namespace blochur
