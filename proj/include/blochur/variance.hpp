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

// Variances computed two ways (trace formula and Bloch formula), the angle
// geometry between state and observable Bloch vectors, and the inner
// products of the {a, a', b, b'} quaternary.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include "blochur/bloch.hpp"

namespace blochur {

namespace tolerance {
inline constexpr double kNegativeVariance = 1e-12;
inline constexpr double kVarianceRoutes = 1e-9;
/// Cosines may exceed 1 in magnitude by this much before it is treated as a bug.
inline constexpr double kCosineExcess = 1e-9;
inline constexpr double kTraceVsVector = 1e-10;
}  // namespace tolerance

template <typename Scalar>
void require_same_dim(const Observable<Scalar>& a, const QuantumState<Scalar>& rho) {
  if (a.dim() != rho.dim()) {
    std::ostringstream os;
    os << "observable is " << a.dim() << "-dimensional, state is " << rho.dim() << "-dimensional";
    throw DimensionMismatch(os.str());
  }
}

/// <A> = Tr[A rho].
template <typename Scalar>
Scalar expectation(const Observable<Scalar>& a, const QuantumState<Scalar>& rho) {
  require_same_dim(a, rho);
  return trace_product(a.matrix(), rho.rho()).real();
}

/// Tr[A^2 rho] - Tr[A rho]^2, unclipped.
template <typename Scalar>
Scalar variance_matrix(const Observable<Scalar>& a, const QuantumState<Scalar>& rho) {
  require_same_dim(a, rho);
  const CMatrix<Scalar> a_rho = a.matrix().matrix() * rho.rho().matrix();
  const Scalar mean = a_rho.trace().real();
  const Scalar second = (a.matrix().matrix().array() * a_rho.transpose().array()).sum().real();
  return second - mean * mean;
}

/// (2/N)|a|^2 + a'.p - (a.p)^2, unclipped.
template <typename Scalar>
Scalar variance_bloch(const Observable<Scalar>& a, const QuantumState<Scalar>& rho) {
  require_same_dim(a, rho);
  const Scalar ap = a.bloch().dot(rho.bloch());
  return Scalar(2) / Scalar(a.dim()) * a.bloch().squaredNorm() + a.primed().dot(rho.bloch()) - ap * ap;
}

/// Maps round-off negatives in (-1e-12, 0) to 0; anything more negative is a
/// logic error upstream.
template <typename Scalar>
Scalar clip_variance(Scalar v) {
  if (v >= Scalar(0)) return v;
  if (v >= -Scalar(tolerance::kNegativeVariance)) return Scalar(0);
  std::ostringstream os;
  os << "negative variance " << static_cast<double>(v);
  throw ConsistencyError(os.str());
}

template <typename Scalar>
struct VarianceReport {
  Scalar variance = 0;  ///< clipped trace-formula value
  Scalar mean = 0;
  Scalar via_matrix = 0;
  Scalar via_bloch = 0;
  Scalar discrepancy = 0;
};

template <typename Scalar>
VarianceReport<Scalar> variance_report(const Observable<Scalar>& a, const QuantumState<Scalar>& rho) {
  VarianceReport<Scalar> r;
  r.via_matrix = variance_matrix(a, rho);
  r.via_bloch = variance_bloch(a, rho);
  r.discrepancy = std::abs(r.via_matrix - r.via_bloch);
  r.mean = expectation(a, rho);
  r.variance = clip_variance(r.via_matrix);
  return r;
}

/// Angle in [0, pi] between two nonzero vectors. The cosine is range-checked
/// (|cos| <= 1 + kCosineExcess) and the angle itself evaluated as
/// 2 atan2(|u^ - v^|, |u^ + v^|), which stays accurate near 0 and pi.
template <typename Scalar>
Scalar angle_between(const RVector<Scalar>& u, const RVector<Scalar>& v) {
  if (u.size() != v.size()) throw DimensionMismatch("angle_between: vector lengths differ");
  const Scalar nu = u.norm();
  const Scalar nv = v.norm();
  if (nu == Scalar(0) || nv == Scalar(0))
    throw PreconditionError("angle undefined for a zero-norm Bloch vector");
  const Scalar cosine = u.dot(v) / (nu * nv);
  if (std::abs(cosine) > Scalar(1) + Scalar(tolerance::kCosineExcess)) {
    std::ostringstream os;
    os << "cosine " << static_cast<double>(cosine) << " outside [-1, 1]";
    throw ConsistencyError(os.str());
  }
  const RVector<Scalar> uh = u / nu;
  const RVector<Scalar> vh = v / nv;
  return Scalar(2) * std::atan2((uh - vh).norm(), (uh + vh).norm());
}

template <typename Scalar>
struct AngleSet {
  Scalar theta_pa = 0;
  Scalar theta_pb = 0;
  Scalar theta_ab = 0;
  std::optional<Scalar> theta_pc;
  /// Angles between p and the primed vectors; empty when a' (b') vanishes.
  std::optional<Scalar> theta_pa_prime;
  std::optional<Scalar> theta_pb_prime;
  bool folded_pa = false;
  bool folded_pb = false;
  bool folded_pc = false;
  /// theta_ab was replaced by pi - theta_ab because exactly one of a, b was inverted.
  bool folded_ab = false;
};

namespace detail {
template <typename Scalar>
std::optional<Scalar> optional_angle(const RVector<Scalar>& u, const RVector<Scalar>& v) {
  if (u.norm() == Scalar(0) || v.norm() == Scalar(0)) return std::nullopt;
  return angle_between(u, v);
}

template <typename Scalar>
bool fold(Scalar& theta) {
  const Scalar half_pi = std::numbers::pi_v<Scalar> / 2;
  if (theta <= half_pi) return false;
  theta = std::numbers::pi_v<Scalar> - theta;
  return true;
}
}  // namespace detail

/// Angles between p and a, b (and the angle between a and b). With `fold`,
/// a and b are inverted where needed so that theta_pa, theta_pb lie in
/// [0, pi/2]; theta_ab is then the angle between the inverted vectors.
/// Completely mixed states (|p| = 0) are rejected.
template <typename Scalar>
AngleSet<Scalar> angles(const Observable<Scalar>& a, const Observable<Scalar>& b,
                        const QuantumState<Scalar>& rho, bool fold) {
  require_same_dim(a, rho);
  require_same_dim(b, rho);
  if (rho.bloch().norm() == Scalar(0))
    throw PreconditionError("angles are undefined for the completely mixed state (|p| = 0)");
  AngleSet<Scalar> s;
  s.theta_pa = angle_between(rho.bloch(), a.bloch());
  s.theta_pb = angle_between(rho.bloch(), b.bloch());
  s.theta_ab = angle_between(a.bloch(), b.bloch());
  s.theta_pa_prime = detail::optional_angle(rho.bloch(), a.primed());
  s.theta_pb_prime = detail::optional_angle(rho.bloch(), b.primed());
  if (fold) {
    s.folded_pa = detail::fold(s.theta_pa);
    s.folded_pb = detail::fold(s.theta_pb);
    if (s.folded_pa != s.folded_pb) {
      s.theta_ab = std::numbers::pi_v<Scalar> - s.theta_ab;
      s.folded_ab = true;
    }
  }
  return s;
}

template <typename Scalar>
AngleSet<Scalar> angles(const Observable<Scalar>& a, const Observable<Scalar>& b, const Observable<Scalar>& c,
                        const QuantumState<Scalar>& rho, bool fold) {
  AngleSet<Scalar> s = angles(a, b, rho, fold);
  require_same_dim(c, rho);
  Scalar theta_pc = angle_between(rho.bloch(), c.bloch());
  if (fold) s.folded_pc = detail::fold(theta_pc);
  s.theta_pc = theta_pc;
  return s;
}

/// Norms and mutual inner products of {a, a', b, b'}. Every entry is the
/// vector value; each one is also recomputed from traces of A and B and the
/// largest disagreement is kept in worst_discrepancy.
template <typename Scalar>
struct PairGeometry {
  Scalar a_sq = 0, a_prime_sq = 0, b_sq = 0, b_prime_sq = 0;
  Scalar g = 0;                ///< a.b
  Scalar a_dot_b_prime = 0;
  Scalar a_dot_a_prime = 0;
  Scalar b_dot_b_prime = 0;
  Scalar b_dot_a_prime = 0;
  Scalar g_prime = 0;          ///< a'.b'
  Scalar worst_discrepancy = 0;
};

template <typename Scalar>
PairGeometry<Scalar> pair_geometry(const Observable<Scalar>& a, const Observable<Scalar>& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("pair_geometry: observables differ in dimension");
  const auto& va = a.bloch();
  const auto& vb = b.bloch();
  const auto& pa = a.primed();
  const auto& pb = b.primed();

  PairGeometry<Scalar> g;
  g.a_sq = va.squaredNorm();
  g.a_prime_sq = pa.squaredNorm();
  g.b_sq = vb.squaredNorm();
  g.b_prime_sq = pb.squaredNorm();
  g.g = va.dot(vb);
  g.a_dot_b_prime = va.dot(pb);
  g.a_dot_a_prime = va.dot(pa);
  g.b_dot_b_prime = vb.dot(pb);
  g.b_dot_a_prime = vb.dot(pa);
  g.g_prime = pa.dot(pb);

  const CMatrix<Scalar>& ma = a.matrix().matrix();
  const CMatrix<Scalar>& mb = b.matrix().matrix();
  const CMatrix<Scalar> a2 = ma * ma;
  const CMatrix<Scalar> b2 = mb * mb;
  auto tr = [](const CMatrix<Scalar>& x, const CMatrix<Scalar>& y) {
    return (x.array() * y.transpose().array()).sum().real();
  };
  const Scalar n = Scalar(a.dim());
  const Scalar tr_a2 = a2.trace().real();
  const Scalar tr_b2 = b2.trace().real();
  const Scalar via_trace[] = {
      tr_a2 / 2,
      (tr(a2, a2) - tr_a2 * tr_a2 / n) / 2,
      tr_b2 / 2,
      (tr(b2, b2) - tr_b2 * tr_b2 / n) / 2,
      tr(ma, mb) / 2,
      tr(ma, b2) / 2,
      tr(ma, a2) / 2,
      tr(mb, b2) / 2,
      tr(a2, mb) / 2,
      (tr(a2, b2) - tr_a2 * tr_b2 / n) / 2,
  };
  const Scalar via_vector[] = {g.a_sq,          g.a_prime_sq,    g.b_sq,          g.b_prime_sq,
                               g.g,             g.a_dot_b_prime, g.a_dot_a_prime, g.b_dot_b_prime,
                               g.b_dot_a_prime, g.g_prime};
  for (std::size_t i = 0; i < std::size(via_vector); ++i)
    g.worst_discrepancy = std::max(g.worst_discrepancy, std::abs(via_vector[i] - via_trace[i]));
  if (g.worst_discrepancy > Scalar(tolerance::kTraceVsVector)) {
    std::ostringstream os;
    os << "pair_geometry: trace and vector routes disagree by " << static_cast<double>(g.worst_discrepancy);
    throw ConsistencyError(os.str());
  }
  return g;
}

}  // namespace blochur
