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

// Generalized Gell-Mann generators of SU(N) and their structure constants
//
//   [l_j, l_k] = 2i sum_l f_jkl l_l,   {l_j, l_k} = (4/N) delta_jk I + 2 sum_l d_jkl l_l,
//
// normalized so that Tr[l_j l_k] = 2 delta_jk.

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <sstream>
#include <vector>

#include "blochur/linalg.hpp"

namespace blochur {

namespace tolerance {
inline constexpr double kStructureDrop = 1e-12;
inline constexpr double kTraceless = 1e-12;
inline constexpr double kAlgebra = 1e-11;
}  // namespace tolerance

template <typename Scalar>
class GeneratorBasis {
 public:
  /// Nonzero tensor entry; indices are 0-based.
  struct Entry {
    int j, k, l;
    Scalar value;
  };
  using Key = std::array<int, 3>;

  /// Wraps an explicit generator list and derives f and d from the trace
  /// formulas f_jkl = Tr([l_j,l_k] l_l)/(4i), d_jkl = Tr({l_j,l_k} l_l)/4.
  /// Only shape and tracelessness are checked here; whether the
  /// list actually closes under the SU(N) algebra is what verify_algebra tests.
  static GeneratorBasis from_generators(std::vector<HermitianMatrix<Scalar>> generators) {
    if (generators.empty()) throw std::invalid_argument("generator list is empty");
    const int n = static_cast<int>(generators.front().dim());
    if (n < 2 || static_cast<int>(generators.size()) != n * n - 1) {
      std::ostringstream os;
      os << "SU(" << n << ") needs " << n * n - 1 << " generators, got " << generators.size();
      throw std::invalid_argument(os.str());
    }
    for (const auto& g : generators) {
      if (g.dim() != n) throw DimensionMismatch("generators must share one dimension");
      if (std::abs(trace(g)) > Scalar(tolerance::kTraceless))
        throw std::invalid_argument("generators must be traceless");
    }
    return GeneratorBasis(n, std::move(generators));
  }

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(generators_.size()); }
  const std::vector<HermitianMatrix<Scalar>>& generators() const { return generators_; }
  const HermitianMatrix<Scalar>& generator(int index) const {
    return generators_.at(static_cast<std::size_t>(index));
  }

  /// Stored entries with j < k < l (f) and j <= k <= l (d).
  const std::map<Key, Scalar>& f_entries() const { return f_; }
  const std::map<Key, Scalar>& d_entries() const { return d_; }

  /// All nonzero entries under every index permutation, signs applied.
  const std::vector<Entry>& f_expanded() const { return f_full_; }
  const std::vector<Entry>& d_expanded() const { return d_full_; }

  /// 0-based lookup; f picks up the permutation sign.
  Scalar f(int j, int k, int l) const {
    check_index(j);
    check_index(k);
    check_index(l);
    if (j == k || k == l || j == l) return Scalar(0);
    Key key{j, k, l};
    int sign = 1;
    // bubble sort on three elements, counting transpositions
    for (int pass = 0; pass < 2; ++pass)
      for (int i = 0; i < 2 - pass; ++i)
        if (key[i] > key[i + 1]) {
          std::swap(key[i], key[i + 1]);
          sign = -sign;
        }
    const auto it = f_.find(key);
    return it == f_.end() ? Scalar(0) : sign * it->second;
  }

  Scalar d(int j, int k, int l) const {
    check_index(j);
    check_index(k);
    check_index(l);
    Key key{j, k, l};
    std::sort(key.begin(), key.end());
    const auto it = d_.find(key);
    return it == d_.end() ? Scalar(0) : it->second;
  }

  /// w_l = sum_jk u_j v_k d_jkl.
  RVector<Scalar> contract_d(const RVector<Scalar>& u, const RVector<Scalar>& v) const {
    if (u.size() != size() || v.size() != size())
      throw DimensionMismatch("contract_d: vector length must be N^2 - 1");
    RVector<Scalar> w = RVector<Scalar>::Zero(size());
    for (const Entry& e : d_full_) w(e.l) += u(e.j) * v(e.k) * e.value;
    return w;
  }

  /// sum_j c_j l_j
  HermitianMatrix<Scalar> combine(const RVector<Scalar>& coeffs) const {
    if (coeffs.size() != size()) throw DimensionMismatch("combine: vector length must be N^2 - 1");
    CMatrix<Scalar> m = CMatrix<Scalar>::Zero(dim_, dim_);
    for (int j = 0; j < size(); ++j) m += coeffs(j) * generators_[static_cast<std::size_t>(j)].matrix();
    return HermitianMatrix<Scalar>(std::move(m));
  }

  /// c_j = Tr[M l_j] (real part).
  RVector<Scalar> project(const ComplexMatrix<Scalar>& m) const {
    if (m.dim() != dim_) throw DimensionMismatch("project: matrix dimension differs from basis");
    RVector<Scalar> c(size());
    for (int j = 0; j < size(); ++j)
      c(j) = trace_product(m, static_cast<const ComplexMatrix<Scalar>&>(generators_[static_cast<std::size_t>(j)])).real();
    return c;
  }

 private:
  GeneratorBasis(int n, std::vector<HermitianMatrix<Scalar>> generators)
      : dim_(n), generators_(std::move(generators)) {
    build_tensors();
  }

  void check_index(int i) const {
    if (i < 0 || i >= size()) {
      std::ostringstream os;
      os << "structure constant index " << i << " out of range [0, " << size() << ")";
      throw std::out_of_range(os.str());
    }
  }

  void build_tensors() {
    const int n = size();
    std::vector<CMatrix<Scalar>> products(static_cast<std::size_t>(n * n));
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        products[static_cast<std::size_t>(j * n + k)] = generators_[j].matrix() * generators_[k].matrix();

    auto tr = [&](int j, int k, int l) {
      const auto& p = products[static_cast<std::size_t>(j * n + k)];
      return (p.array() * generators_[l].matrix().transpose().array()).sum();
    };
    const Scalar drop = Scalar(tolerance::kStructureDrop);
    for (int j = 0; j < n; ++j)
      for (int k = j; k < n; ++k)
        for (int l = k; l < n; ++l) {
          const Complex<Scalar> jkl = tr(j, k, l);
          const Complex<Scalar> kjl = tr(k, j, l);
          const Scalar dv = ((jkl + kjl) / Scalar(4)).real();
          if (std::abs(dv) >= drop) d_[{j, k, l}] = dv;
          if (j < k && k < l) {
            const Scalar fv = ((jkl - kjl) / Complex<Scalar>(0, 4)).real();
            if (std::abs(fv) >= drop) f_[{j, k, l}] = fv;
          }
        }

    for (const auto& [key, value] : f_) {
      Key perm = key;  // sorted, so next_permutation visits all 6
      do {
        f_full_.push_back({perm[0], perm[1], perm[2], permutation_sign(perm) * value});
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
    for (const auto& [key, value] : d_) {
      Key perm = key;
      do {
        d_full_.push_back({perm[0], perm[1], perm[2], value});
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }

  static int permutation_sign(Key p) {
    int sign = 1;
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b)
        if (p[a] > p[b]) sign = -sign;
    return sign;
  }

  int dim_;
  std::vector<HermitianMatrix<Scalar>> generators_;
  std::map<Key, Scalar> f_, d_;
  std::vector<Entry> f_full_, d_full_;
};

/// Generalized Gell-Mann basis in textbook order: for each column m = 2..N,
/// the symmetric and antisymmetric pairs (u, m) for u = 1..m-1 interleaved,
/// then the diagonal generator sqrt(2/(m(m-1))) diag(1,...,1,-(m-1),0,...,0).
/// N = 2 gives the Pauli matrices, N = 3 the Gell-Mann matrices l_1..l_8.
template <typename Scalar = double>
GeneratorBasis<Scalar> build_basis(int n) {
  using C = Complex<Scalar>;
  if (n < 2) throw std::invalid_argument("SU(N) basis needs N >= 2");
  std::vector<HermitianMatrix<Scalar>> gens;
  gens.reserve(static_cast<std::size_t>(n * n - 1));
  for (int m = 1; m < n; ++m) {
    for (int u = 0; u < m; ++u) {
      CMatrix<Scalar> sym = CMatrix<Scalar>::Zero(n, n);
      sym(u, m) = C(1);
      sym(m, u) = C(1);
      gens.emplace_back(std::move(sym));
      CMatrix<Scalar> asym = CMatrix<Scalar>::Zero(n, n);
      asym(u, m) = C(0, -1);
      asym(m, u) = C(0, 1);
      gens.emplace_back(std::move(asym));
    }
    CMatrix<Scalar> diag = CMatrix<Scalar>::Zero(n, n);
    const Scalar norm = std::sqrt(Scalar(2) / (Scalar(m) * Scalar(m + 1)));
    for (int i = 0; i < m; ++i) diag(i, i) = C(norm);
    diag(m, m) = C(-Scalar(m) * norm);
    gens.emplace_back(std::move(diag));
  }
  return GeneratorBasis<Scalar>::from_generators(std::move(gens));
}

/// Structure constants with the physics labelling, indices 1..N^2-1.
template <typename Scalar>
Scalar structure_f(const GeneratorBasis<Scalar>& basis, int j, int k, int l) {
  return basis.f(j - 1, k - 1, l - 1);
}

template <typename Scalar>
Scalar structure_d(const GeneratorBasis<Scalar>& basis, int j, int k, int l) {
  return basis.d(j - 1, k - 1, l - 1);
}

template <typename Scalar>
struct AlgebraCheck {
  bool ok = true;
  Scalar worst_residual = 0;
  int worst_j = -1;  ///< 0-based pair with the largest residual
  int worst_k = -1;
  explicit operator bool() const { return ok; }
};

/// Rebuilds every product l_j l_k = (2/N) delta_jk I + sum_l (i f_jkl + d_jkl) l_l
/// from the stored tensors and compares entrywise with the actual product.
template <typename Scalar>
AlgebraCheck<Scalar> verify_algebra(const GeneratorBasis<Scalar>& basis) {
  using C = Complex<Scalar>;
  const int n = basis.size();
  const int dim = basis.dim();
  std::vector<C> coeff(static_cast<std::size_t>(n * n * n), C(0));
  auto at = [&](int j, int k, int l) -> C& { return coeff[static_cast<std::size_t>((j * n + k) * n + l)]; };
  for (const auto& e : basis.f_expanded()) at(e.j, e.k, e.l) += C(0, e.value);
  for (const auto& e : basis.d_expanded()) at(e.j, e.k, e.l) += C(e.value, 0);

  AlgebraCheck<Scalar> out;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      CMatrix<Scalar> rebuilt = CMatrix<Scalar>::Zero(dim, dim);
      if (j == k) rebuilt.diagonal().setConstant(C(Scalar(2) / Scalar(dim)));
      for (int l = 0; l < n; ++l) {
        const C c = at(j, k, l);
        if (c != C(0)) rebuilt += c * basis.generator(l).matrix();
      }
      const CMatrix<Scalar> product = basis.generator(j).matrix() * basis.generator(k).matrix();
      const Scalar residual = (product - rebuilt).cwiseAbs().maxCoeff();
      if (residual > out.worst_residual) {
        out.worst_residual = residual;
        out.worst_j = j;
        out.worst_k = k;
      }
    }
  out.ok = out.worst_residual <= Scalar(tolerance::kAlgebra);
  return out;
}

}  // namespace blochur
