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

#include "blochur/fuzz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "blochur/parallel.hpp"

namespace blochur {

namespace {

State draw_by_mix(Rng& rng, const Basis& basis, StateMix mix) {
  switch (mix) {
    case StateMix::pure:
      return draw_pure_state(rng, basis);
    case StateMix::mixed:
      return draw_mixed_state(rng, basis, basis.dim());
    case StateMix::any:
      break;
  }
  return rng.uniform() < 0.5 ? draw_pure_state(rng, basis) : draw_mixed_state(rng, basis, basis.dim());
}

RelationVerdict worse(const RelationVerdict& x, const RelationVerdict& y) { return y.margin < x.margin ? y : x; }

RelationVerdict evaluate_one(const FuzzConfig& cfg, const Basis& basis, Rng& rng, std::size_t& rejected) {
  switch (cfg.relation) {
    case RelationId::triangle: {
      const Obs a = draw_observable(rng, basis, false);
      const Obs b = draw_observable(rng, basis, false);
      return check_triangle(a, b, draw_by_mix(rng, basis, cfg.mix));
    }
    case RelationId::theorem1: {
      const Obs a = draw_observable(rng, basis, false);
      const Obs b = draw_observable(rng, basis, false);
      return check_theorem1(a, b, draw_by_mix(rng, basis, cfg.mix));
    }
    case RelationId::mixed_limit: {
      const Obs a = draw_observable(rng, basis, false);
      const Obs b = draw_observable(rng, basis, false);
      return check_mixed_limit(a, b, qubit_state(0, 0, 0));
    }
    case RelationId::pure_limit: {
      const Obs a = draw_observable(rng, basis, false);
      const Obs b = draw_observable(rng, basis, false);
      return check_pure_limit(a, b, draw_pure_state(rng, basis));
    }
    case RelationId::unit_vector: {
      const Obs a = draw_observable(rng, basis, true);
      const Obs b = draw_observable(rng, basis, true);
      const State rho = draw_pure_state(rng, basis);
      const double theta = angles(a, b, rho, true).theta_ab;
      const double dA2 = std::min(1.0, clip_variance(variance_matrix(a, rho)));
      const double dB2 = std::min(1.0, clip_variance(variance_matrix(b, rho)));
      return check_unit_vector_relation(theta, dA2, dB2);
    }
    case RelationId::three_obs_equality:
      return check_three_observable_equality(cfg.theta_ab, draw_pure_state(rng, basis));
    case RelationId::appendix_b:
      return check_appendix_b(draw_by_mix(rng, basis, cfg.mix));
    case RelationId::appendix_c: {
      const ZeroMeanTriple t = draw_zero_mean_triple(rng, basis, cfg.max_attempts, rejected);
      return check_appendix_c(t.a, t.b, t.rho);
    }
    case RelationId::robertson: {
      const Obs a = draw_observable(rng, basis, false);
      const Obs b = draw_observable(rng, basis, false);
      return robertson_bound(a, b, draw_by_mix(rng, basis, cfg.mix));
    }
    case RelationId::state_dependent: {
      const Obs a = draw_observable(rng, basis, false);
      const Obs b = draw_observable(rng, basis, false);
      const State psi = draw_pure_state(rng, basis);
      return worse(state_dependent_bound(a, b, psi, +1), state_dependent_bound(a, b, psi, -1));
    }
  }
  throw std::logic_error("unhandled relation");
}

void absorb(FuzzSummary& into, const RelationVerdict& v, std::size_t index) {
  if (into.evaluated == 0 || v.margin < into.worst_margin) {
    into.worst_margin = v.margin;
    into.worst = v;
    into.worst_index = index;
  }
  ++into.evaluated;
  if (!v.holds) ++into.violations;
  if (v.saturated) ++into.saturated;
  into.max_abs_residual = std::max(into.max_abs_residual, std::abs(v.lhs - v.rhs));
}

}  // namespace

ZeroMeanTriple draw_zero_mean_triple(Rng& rng, const Basis& basis, int max_attempts, std::size_t& rejected) {
  Obs a = draw_observable(rng, basis, true);
  Obs b = draw_observable(rng, basis, true);
  const RVector<double> e1 = a.bloch().normalized();
  RVector<double> e2 = b.bloch() - b.bloch().dot(e1) * e1;
  const bool has_e2 = e2.norm() > 1e-12;
  if (has_e2) e2.normalize();

  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    const int rank = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(basis.dim())));
    const State raw = draw_mixed_state(rng, basis, rank);
    RVector<double> p = raw.bloch() - raw.bloch().dot(e1) * e1;
    if (has_e2) p -= p.dot(e2) * e2;
    try {
      State rho = state_to_matrix(p, basis);
      if (std::abs(expectation(a, rho)) <= tolerance::kZeroMean &&
          std::abs(expectation(b, rho)) <= tolerance::kZeroMean)
        return {std::move(a), std::move(b), std::move(rho)};
    } catch (const UnphysicalState&) {
    }
    ++rejected;
  }
  std::ostringstream os;
  os << "no physical <A> = <B> = 0 state after " << max_attempts << " attempts";
  throw std::runtime_error(os.str());
}

FuzzSummary fuzz_relation(const FuzzConfig& cfg) {
  if (cfg.dim < 2) throw PreconditionError("dimension must be >= 2");
  if (is_qubit_only(cfg.relation) && cfg.dim != 2) {
    std::ostringstream os;
    os << relation_name(cfg.relation) << " is defined for qubits only (N = 2), got N = " << cfg.dim;
    throw PreconditionError(os.str());
  }
  if (cfg.samples == 0) throw std::invalid_argument("fuzz needs at least one sample");
  const Basis basis = build_basis<double>(cfg.dim);

  const std::size_t chunks = (cfg.samples + kChunkSize - 1) / kChunkSize;
  std::vector<FuzzSummary> parts(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    Rng rng = Rng::stream(cfg.seed, c);
    const std::size_t end = std::min(cfg.samples, (c + 1) * kChunkSize);
    FuzzSummary& part = parts[c];
    for (std::size_t i = c * kChunkSize; i < end; ++i) absorb(part, evaluate_one(cfg, basis, rng, part.rejected), i);
  });

  FuzzSummary total;
  for (const FuzzSummary& part : parts) {
    if (part.evaluated == 0) continue;
    if (total.evaluated == 0 || part.worst_margin < total.worst_margin) {
      total.worst_margin = part.worst_margin;
      total.worst = part.worst;
      total.worst_index = part.worst_index;
    }
    total.evaluated += part.evaluated;
    total.violations += part.violations;
    total.saturated += part.saturated;
    total.rejected += part.rejected;
    total.max_abs_residual = std::max(total.max_abs_residual, part.max_abs_residual);
  }
  return total;
}

}  // namespace blochur
