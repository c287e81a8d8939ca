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

// Uncertainty and certainty relations in Bloch form, plus the Robertson and
// state-dependent (sum-of-variances) bounds used as baselines.
//
// Every check returns a RelationVerdict with a graded margin lhs - rhs.
// Equalities report margin = -|lhs - rhs|.
//
// Orientation convention. Inverting an observable (A -> -A) leaves its
// variance unchanged, so a and b are taken with the signs that make
// <A>, <B> >= 0. Quantities that depend on the relative orientation of a and
// b (g = a.b, cos theta_ab) are evaluated for the inverted pair. Without this
// the qubit relation in its square-root form fails whenever
// <A><B>(a.b) < 0.

#include <cstdint>
#include <optional>
#include <string_view>

#include "blochur/variance.hpp"

namespace blochur {

namespace tolerance {
inline constexpr double kHolds = 1e-10;
inline constexpr double kSaturated = 1e-9;
inline constexpr double kRadicand = 1e-10;
inline constexpr double kPureState = 1e-9;
inline constexpr double kMixedState = 1e-12;
/// |<A>|, |<B>| allowed by the <A> = <B> = 0 trade-off.
inline constexpr double kZeroMean = 1e-9;
}  // namespace tolerance

enum class RelationId {
  triangle,
  theorem1,
  mixed_limit,
  pure_limit,
  unit_vector,
  three_obs_equality,
  appendix_b,
  appendix_c,
  robertson,
  state_dependent,
};

/// CLI spelling, e.g. "three-obs-equality".
std::string_view relation_name(RelationId id);
/// Accepts hyphens or underscores.
std::optional<RelationId> parse_relation(std::string_view name);
bool is_qubit_only(RelationId id);

struct RelationVerdict {
  RelationId id = RelationId::theorem1;
  double lhs = 0;
  double rhs = 0;
  double margin = 0;
  bool holds = true;      ///< margin >= -kHolds
  bool saturated = false; ///< |margin| <= kSaturated
};

RelationVerdict make_verdict(RelationId id, double lhs, double rhs);
RelationVerdict make_equality_verdict(RelationId id, double lhs, double rhs);

/// Shared SU(2) basis (Pauli matrices).
const Basis& qubit_basis();
/// sigma . n for a qubit (n need not be a unit vector).
Obs pauli_observable(double x, double y, double z);
/// Qubit state with Bloch vector (x, y, z).
State qubit_state(double x, double y, double z);

/// +1 when <A><B> >= 0, -1 otherwise.
double orientation_sign(const Obs& a, const Obs& b, const State& rho);

/// |theta_pa - theta_pb| <= theta_ab <= theta_pa + theta_pb on the angles of
/// the inverted pair (theta_pa, theta_pb in [0, pi/2]); the binding side is
/// reported. Qubits with |p| > 0 only.
RelationVerdict check_triangle(const Obs& a, const Obs& b, const State& rho);

/// Qubit relation
///   sqrt(a^2(p^2-1) + dA^2) sqrt(b^2(p^2-1) + dB^2)
///     >= | sqrt(a^2 - dA^2) sqrt(b^2 - dB^2) - g p^2 |
/// with a^2 = Tr[A^2]/2, p^2 = 2(Tr[rho^2] - 1/2) and g = Tr[AB]/2 in the
/// orientation convention above.
RelationVerdict check_theorem1(const Obs& a, const Obs& b, const State& rho);

/// Completely mixed qubit: the relation forces dA^2 = a^2 and dB^2 = b^2.
/// Reported as the equality dA^2 + dB^2 = a^2 + b^2 (each term is bounded
/// by its right-hand counterpart).
RelationVerdict check_mixed_limit(const Obs& a, const Obs& b, const State& rho);

/// Pure qubit: dA dB >= | sqrt(a^2 - dA^2) sqrt(b^2 - dB^2) - g |.
RelationVerdict check_pure_limit(const Obs& a, const Obs& b, const State& rho);

/// dA dB >= | sqrt(1 - dA^2) sqrt(1 - dB^2) - cos theta_ab | for unit
/// observables sigma.n_a, sigma.n_b on pure states.
RelationVerdict check_unit_vector_relation(double theta_ab, double dA2, double dB2);

/// Pure qubit, A = sigma1, B = sigma1 cos t + sigma2 sin t, C = sigma3:
///   dA^2 + dB^2 + dC^2 sin^2 t + 2 cos t sqrt(1 - dA^2) sqrt(1 - dB^2) = 2,
/// with cos t taken in the orientation convention.
RelationVerdict check_three_observable_equality(double theta_ab, const State& rho);

/// Qubit: sum of the Pauli variances equals 3 - |p|^2.
RelationVerdict check_appendix_b(const State& rho);

/// Shifted variances of the <A> = <B> = 0 trade-off in N dimensions.
struct TradeoffCheck {
  double x = 0;  ///< dA^2 - Tr[A^2]/N
  double y = 0;  ///< dB^2 - Tr[B^2]/N
  double a_prime_sq = 0;
  double b_prime_sq = 0;
  double g_prime = 0;
  double p_sq = 0;
};

/// Throws PreconditionError unless |<A>|, |<B>| <= kZeroMean.
TradeoffCheck tradeoff_check(const Obs& a, const Obs& b, const State& rho);

/// sqrt(a'^2 p^2 - x^2) sqrt(b'^2 p^2 - y^2) >= | x y - g' p^2 |.
RelationVerdict check_appendix_c(const Obs& a, const Obs& b, const State& rho);

/// dA dB >= |Tr[rho [A, B]]| / 2, any N.
RelationVerdict robertson_bound(const Obs& a, const Obs& b, const State& rho);

/// dA^2 + dB^2 >= +-i<psi|[A,B]|psi> + |<psi|A +- iB|psi_perp>|^2 for a pure
/// qubit state; psi_perp is the eigenvector of rho with eigenvalue 0.
/// Throws PreconditionError for mixed input: no single state is orthogonal
/// to every component of a mixture.
RelationVerdict state_dependent_bound(const Obs& a, const Obs& b, const State& psi, int sign);
/// Same bound with explicit, orthonormal kets.
RelationVerdict state_dependent_bound(const Obs& a, const Obs& b, const CVector<double>& psi,
                                      const CVector<double>& psi_perp, int sign);

struct Span {
  double lo = 0;
  double hi = 0;
};

/// Range of dB allowed for unit qubit observables at angle theta_ab and a
/// given dA^2 on pure states (the slice of the unit-vector relation's region).
Span unit_vector_span(double theta_ab, double dA2);

}  // namespace blochur
