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

#include "blochur/relations.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace blochur {

namespace {

constexpr std::array<std::pair<RelationId, std::string_view>, 10> kNames{{
    {RelationId::triangle, "triangle"},
    {RelationId::theorem1, "theorem1"},
    {RelationId::mixed_limit, "mixed-limit"},
    {RelationId::pure_limit, "pure-limit"},
    {RelationId::unit_vector, "unit-vector"},
    {RelationId::three_obs_equality, "three-obs-equality"},
    {RelationId::appendix_b, "appendix-b"},
    {RelationId::appendix_c, "appendix-c"},
    {RelationId::robertson, "robertson"},
    {RelationId::state_dependent, "state-dependent"},
}};

void require_qubit(int dim, RelationId id) {
  if (dim != 2) {
    std::ostringstream os;
    os << relation_name(id) << " is a qubit relation (N = 2), got N = " << dim;
    throw PreconditionError(os.str());
  }
}

void require_pure(const State& rho, RelationId id) {
  const double pure = 2.0 * (1.0 - 1.0 / rho.dim());
  if (std::abs(rho.purity() - pure) > tolerance::kPureState) {
    std::ostringstream os;
    os << relation_name(id) << " needs a pure state, |p|^2 = " << rho.purity();
    throw PreconditionError(os.str());
  }
}

/// sqrt of a quantity that may only dip below zero by round-off.
double checked_sqrt(double x, const char* what) {
  if (x < -tolerance::kRadicand) {
    std::ostringstream os;
    os << what << ": radicand " << x << " is negative beyond round-off";
    throw PreconditionError(os.str());
  }
  return std::sqrt(std::max(0.0, x));
}

double half_trace_square(const Obs& a) { return 0.5 * trace_product(a.matrix(), a.matrix()).real(); }

}  // namespace

std::string_view relation_name(RelationId id) {
  for (const auto& [rid, name] : kNames)
    if (rid == id) return name;
  return "unknown";
}

std::optional<RelationId> parse_relation(std::string_view name) {
  std::string normalized(name);
  std::replace(normalized.begin(), normalized.end(), '_', '-');
  for (const auto& [rid, n] : kNames)
    if (n == normalized) return rid;
  return std::nullopt;
}

bool is_qubit_only(RelationId id) {
  return id != RelationId::appendix_c && id != RelationId::robertson;
}

RelationVerdict make_verdict(RelationId id, double lhs, double rhs) {
  RelationVerdict v;
  v.id = id;
  v.lhs = lhs;
  v.rhs = rhs;
  v.margin = lhs - rhs;
  v.holds = v.margin >= -tolerance::kHolds;
  v.saturated = std::abs(v.margin) <= tolerance::kSaturated;
  return v;
}

RelationVerdict make_equality_verdict(RelationId id, double lhs, double rhs) {
  RelationVerdict v = make_verdict(id, lhs, rhs);
  v.margin = -std::abs(lhs - rhs);
  v.holds = v.margin >= -tolerance::kHolds;
  v.saturated = std::abs(v.margin) <= tolerance::kSaturated;
  return v;
}

const Basis& qubit_basis() {
  static const Basis basis = build_basis<double>(2);
  return basis;
}

Obs pauli_observable(double x, double y, double z) {
  RVector<double> n(3);
  n << x, y, z;
  return observable_from_bloch(n, qubit_basis());
}

State qubit_state(double x, double y, double z) {
  RVector<double> p(3);
  p << x, y, z;
  return state_to_matrix(p, qubit_basis());
}

double orientation_sign(const Obs& a, const Obs& b, const State& rho) {
  const double ea = expectation(a, rho);
  const double eb = expectation(b, rho);
  return (ea < 0) != (eb < 0) ? -1.0 : 1.0;
}

RelationVerdict check_triangle(const Obs& a, const Obs& b, const State& rho) {
  require_qubit(rho.dim(), RelationId::triangle);
  const AngleSet<double> s = angles(a, b, rho, true);
  const double lower = std::abs(s.theta_pa - s.theta_pb);
  const double upper = s.theta_pa + s.theta_pb;
  if (s.theta_ab - lower <= upper - s.theta_ab) return make_verdict(RelationId::triangle, s.theta_ab, lower);
  return make_verdict(RelationId::triangle, upper, s.theta_ab);
}

RelationVerdict check_theorem1(const Obs& a, const Obs& b, const State& rho) {
  require_qubit(rho.dim(), RelationId::theorem1);
  const double a2 = half_trace_square(a);
  const double b2 = half_trace_square(b);
  const double p2 = 2.0 * (trace_product(rho.rho(), rho.rho()).real() - 0.5);
  const double g = orientation_sign(a, b, rho) * 0.5 * trace_product(a.matrix(), b.matrix()).real();
  const double dA2 = clip_variance(variance_matrix(a, rho));
  const double dB2 = clip_variance(variance_matrix(b, rho));
  if (dA2 > a2 + tolerance::kRadicand || dB2 > b2 + tolerance::kRadicand)
    throw PreconditionError("theorem1: qubit variance exceeds |a|^2");

  // For qubits a^2 (p^2 - 1) + dA^2 = |a x p|^2 and a^2 - dA^2 = <A>^2. The
  // right-hand forms are free of cancellation where either radicand is near 0.
  const double ra_literal = checked_sqrt(a2 * (p2 - 1.0) + dA2, "theorem1");
  const double rb_literal = checked_sqrt(b2 * (p2 - 1.0) + dB2, "theorem1");
  const Eigen::Vector3d av = a.bloch(), bv = b.bloch(), pv = rho.bloch();
  const double ra = av.cross(pv).norm();
  const double rb = bv.cross(pv).norm();
  const double scale = std::max({1.0, a2, b2});
  if (std::abs(ra * ra - ra_literal * ra_literal) > tolerance::kRadicand * scale ||
      std::abs(rb * rb - rb_literal * rb_literal) > tolerance::kRadicand * scale)
    throw ConsistencyError("theorem1: variance and Bloch-vector radicands disagree");
  const double lhs = ra * rb;
  const double rhs = std::abs(std::abs(expectation(a, rho)) * std::abs(expectation(b, rho)) - g * p2);
  return make_verdict(RelationId::theorem1, lhs, rhs);
}

RelationVerdict check_mixed_limit(const Obs& a, const Obs& b, const State& rho) {
  require_qubit(rho.dim(), RelationId::mixed_limit);
  if (rho.purity() > tolerance::kMixedState)
    throw PreconditionError("mixed-limit needs the completely mixed state");
  const double dA2 = clip_variance(variance_matrix(a, rho));
  const double dB2 = clip_variance(variance_matrix(b, rho));
  return make_equality_verdict(RelationId::mixed_limit, dA2 + dB2, half_trace_square(a) + half_trace_square(b));
}

RelationVerdict check_pure_limit(const Obs& a, const Obs& b, const State& rho) {
  require_qubit(rho.dim(), RelationId::pure_limit);
  require_pure(rho, RelationId::pure_limit);
  const double a2 = half_trace_square(a);
  const double b2 = half_trace_square(b);
  const double g = orientation_sign(a, b, rho) * 0.5 * trace_product(a.matrix(), b.matrix()).real();
  const double dA2 = clip_variance(variance_matrix(a, rho));
  const double dB2 = clip_variance(variance_matrix(b, rho));
  const double lhs = std::sqrt(dA2) * std::sqrt(dB2);
  const double rhs = std::abs(std::sqrt(std::max(0.0, a2 - dA2)) * std::sqrt(std::max(0.0, b2 - dB2)) - g);
  return make_verdict(RelationId::pure_limit, lhs, rhs);
}

RelationVerdict check_unit_vector_relation(double theta_ab, double dA2, double dB2) {
  if (!(theta_ab >= 0.0 && theta_ab <= std::numbers::pi))
    throw PreconditionError("unit-vector relation: theta_ab must lie in [0, pi]");
  if (!(dA2 >= 0.0 && dA2 <= 1.0 && dB2 >= 0.0 && dB2 <= 1.0))
    throw PreconditionError("unit-vector relation: variances must lie in [0, 1]");
  const double lhs = std::sqrt(dA2) * std::sqrt(dB2);
  const double rhs = std::abs(std::sqrt(1.0 - dA2) * std::sqrt(1.0 - dB2) - std::cos(theta_ab));
  return make_verdict(RelationId::unit_vector, lhs, rhs);
}

RelationVerdict check_three_observable_equality(double theta_ab, const State& rho) {
  require_qubit(rho.dim(), RelationId::three_obs_equality);
  require_pure(rho, RelationId::three_obs_equality);
  const Obs a = pauli_observable(1, 0, 0);
  const Obs b = pauli_observable(std::cos(theta_ab), std::sin(theta_ab), 0);
  const Obs c = pauli_observable(0, 0, 1);
  const double dA2 = std::min(1.0, clip_variance(variance_matrix(a, rho)));
  const double dB2 = std::min(1.0, clip_variance(variance_matrix(b, rho)));
  const double dC2 = clip_variance(variance_matrix(c, rho));
  const double s = std::sin(theta_ab);
  const double cos_oriented = orientation_sign(a, b, rho) * std::cos(theta_ab);
  const double lhs = dA2 + dB2 + dC2 * s * s + 2.0 * cos_oriented * std::sqrt(1.0 - dA2) * std::sqrt(1.0 - dB2);
  return make_equality_verdict(RelationId::three_obs_equality, lhs, 2.0);
}

RelationVerdict check_appendix_b(const State& rho) {
  require_qubit(rho.dim(), RelationId::appendix_b);
  double sum = 0;
  for (int axis = 0; axis < 3; ++axis) {
    const Obs o = observable_from_matrix(qubit_basis().generator(axis), qubit_basis());
    sum += clip_variance(variance_matrix(o, rho));
  }
  return make_equality_verdict(RelationId::appendix_b, sum, 3.0 - rho.purity());
}

TradeoffCheck tradeoff_check(const Obs& a, const Obs& b, const State& rho) {
  const double ea = expectation(a, rho);
  const double eb = expectation(b, rho);
  if (std::abs(ea) > tolerance::kZeroMean || std::abs(eb) > tolerance::kZeroMean) {
    std::ostringstream os;
    os << "appendix-c needs <A> = <B> = 0, got " << ea << ", " << eb;
    throw PreconditionError(os.str());
  }
  const PairGeometry<double> geo = pair_geometry(a, b);
  const double n = rho.dim();
  TradeoffCheck t;
  t.x = variance_matrix(a, rho) - 2.0 * half_trace_square(a) / n;
  t.y = variance_matrix(b, rho) - 2.0 * half_trace_square(b) / n;
  t.a_prime_sq = geo.a_prime_sq;
  t.b_prime_sq = geo.b_prime_sq;
  t.g_prime = geo.g_prime;
  t.p_sq = rho.purity();
  return t;
}

RelationVerdict check_appendix_c(const Obs& a, const Obs& b, const State& rho) {
  const TradeoffCheck t = tradeoff_check(a, b, rho);
  const double lhs = checked_sqrt(t.a_prime_sq * t.p_sq - t.x * t.x, "appendix-c") *
                     checked_sqrt(t.b_prime_sq * t.p_sq - t.y * t.y, "appendix-c");
  const double rhs = std::abs(t.x * t.y - t.g_prime * t.p_sq);
  return make_verdict(RelationId::appendix_c, lhs, rhs);
}

RelationVerdict robertson_bound(const Obs& a, const Obs& b, const State& rho) {
  require_same_dim(a, rho);
  require_same_dim(b, rho);
  const double dA2 = clip_variance(variance_matrix(a, rho));
  const double dB2 = clip_variance(variance_matrix(b, rho));
  const ComplexMatrix<double> comm = commutator(a.matrix(), b.matrix());
  const double rhs = std::abs(trace_product(rho.rho(), comm)) / 2.0;
  return make_verdict(RelationId::robertson, std::sqrt(dA2) * std::sqrt(dB2), rhs);
}

RelationVerdict state_dependent_bound(const Obs& a, const Obs& b, const State& psi, int sign) {
  require_qubit(psi.dim(), RelationId::state_dependent);
  if (std::abs(psi.purity() - 1.0) > tolerance::kPureState)
    throw PreconditionError(
        "state-dependent bound not applicable: a mixed state has no state orthogonal to all its components");
  const EigenDecomposition<double> eig = eigh(psi.rho());
  return state_dependent_bound(a, b, eig.vectors.col(1), eig.vectors.col(0), sign);
}

RelationVerdict state_dependent_bound(const Obs& a, const Obs& b, const CVector<double>& psi,
                                      const CVector<double>& psi_perp, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  if (a.dim() != 2 || b.dim() != 2 || psi.size() != 2 || psi_perp.size() != 2)
    throw PreconditionError("state-dependent bound is evaluated for qubits only");
  if (std::abs(psi.norm() - 1.0) > 1e-10 || std::abs(psi_perp.norm() - 1.0) > 1e-10 ||
      std::abs(psi.dot(psi_perp)) > 1e-10)
    throw PreconditionError("psi and psi_perp must be orthonormal");

  const CMatrix<double>& ma = a.matrix().matrix();
  const CMatrix<double>& mb = b.matrix().matrix();
  auto variance = [&](const CMatrix<double>& m) {
    const Complex<double> mean = psi.dot(m * psi);
    const Complex<double> second = psi.dot(m * (m * psi));
    return clip_variance(second.real() - mean.real() * mean.real());
  };
  const double lhs = variance(ma) + variance(mb);

  const Complex<double> i(0, 1);
  const double s = sign;
  const CMatrix<double> comm = ma * mb - mb * ma;
  const double commutator_term = (s * i * psi.dot(comm * psi)).real();
  const CMatrix<double> ladder = ma + s * i * mb;
  const double overlap = std::norm(psi.dot(ladder * psi_perp));
  return make_verdict(RelationId::state_dependent, lhs, commutator_term + overlap);
}

Span unit_vector_span(double theta_ab, double dA2) {
  if (!(dA2 >= 0.0 && dA2 <= 1.0)) throw PreconditionError("dA^2 must lie in [0, 1] for unit observables");
  // With c1 = a.p >= 0 (inversion), b.p sweeps c1 cos t +- sin t sqrt(1 - c1^2).
  const double c1 = std::sqrt(1.0 - dA2);
  const double centre = c1 * std::cos(theta_ab);
  const double half = std::abs(std::sin(theta_ab)) * std::sqrt(dA2);
  const double lo = std::max(-1.0, centre - half);
  const double hi = std::min(1.0, centre + half);
  const double max_abs = std::max(std::abs(lo), std::abs(hi));
  const double min_abs = (lo <= 0.0 && hi >= 0.0) ? 0.0 : std::min(std::abs(lo), std::abs(hi));
  return {std::sqrt(std::max(0.0, 1.0 - max_abs * max_abs)), std::sqrt(std::max(0.0, 1.0 - min_abs * min_abs))};
}

}  // namespace blochur
