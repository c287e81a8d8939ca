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

// Monte-Carlo verification of a relation over random states and observables.
// Draw i comes from Rng::stream(seed, i / kChunkSize), so the summary is
// independent of the worker count and bit-reproducible from (config).

#include <cstdint>
#include <numbers>

#include "blochur/relations.hpp"
#include "blochur/sampling.hpp"

namespace blochur {

enum class StateMix { pure, mixed, any };

struct FuzzConfig {
  RelationId relation = RelationId::theorem1;
  int dim = 2;
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  /// Angle of B for three-obs-equality.
  double theta_ab = std::numbers::pi / 4;
  /// State ensemble for relations that accept both pure and mixed input.
  StateMix mix = StateMix::any;
  /// Attempts per accepted draw for the <A> = <B> = 0 rejection sampler.
  int max_attempts = 10000;
};

struct FuzzSummary {
  std::size_t evaluated = 0;
  std::size_t violations = 0;     ///< verdicts with holds == false
  std::size_t saturated = 0;
  std::size_t rejected = 0;       ///< rejection-sampler draws thrown away
  double worst_margin = 0;
  double max_abs_residual = 0;    ///< max |lhs - rhs| (meaningful for equalities)
  std::size_t worst_index = 0;
  RelationVerdict worst;
};

/// Throws PreconditionError when the relation does not apply to cfg.dim.
FuzzSummary fuzz_relation(const FuzzConfig& cfg);

/// Random zero-mean pair: A and B drawn at random with a state whose Bloch
/// vector is projected onto the complement of span{a, b}. Projections that
/// leave the physical body are rejected and redrawn; `rejected` counts them.
struct ZeroMeanTriple {
  Obs a;
  Obs b;
  State rho;
};
ZeroMeanTriple draw_zero_mean_triple(Rng& rng, const Basis& basis, int max_attempts, std::size_t& rejected);

}  // namespace blochur
