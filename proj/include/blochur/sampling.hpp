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

// Seedable random states and observables.
//
// Generator: xoshiro256** 1.0 (Blackman & Vigna), state seeded by four
// successive SplitMix64 outputs. Uniform doubles take the top 53 bits;
// Gaussians use the Box-Muller transform and consume two uniforms per pair.
// Everything here is fully specified by integer arithmetic and libm, so a
// sequence is reproducible from its seed on any platform.
//
// Ensembles are generated in chunks of kChunkSize draws. Chunk c is produced
// by stream(seed, c), so the output does not depend on the worker count and
// the first n draws of a larger ensemble equal the n-draw ensemble.

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "blochur/bloch.hpp"

namespace blochur {

class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed);
  /// Independent stream `index` of `seed`.
  static Rng stream(std::uint64_t seed, std::uint64_t index);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()();

  /// Uniform on [0, 1).
  double uniform();
  /// Standard normal.
  double gaussian();
  /// Uniform integer on [0, n).
  std::uint64_t below(std::uint64_t n);

 private:
  std::uint64_t s_[4];
  std::optional<double> spare_;
};

inline constexpr std::size_t kChunkSize = 4096;

struct HaarPure {};
struct HsMixed {};
struct RankKMixed {
  int k = 1;
};
struct BlochShell {
  double radius = 0;
};

/// Draws a point at Bloch radius r by mixing a Haar-random pure state with
/// I/N: rho = (1 - t) I/N + t |psi><psi|, t = r / sqrt(2(1-1/N)). For N = 2
/// this is uniform on the sphere of radius r; for N > 2 it stays inside the
/// physical body.
using SampleKind = std::variant<HaarPure, HsMixed, RankKMixed, BlochShell>;

struct SampleConfig {
  std::uint64_t seed = 0;
  int dim = 2;
  std::size_t count = 1;
  SampleKind kind = HaarPure{};

  /// Throws std::invalid_argument for dim < 2, count == 0, k outside 1..N or
  /// a shell radius outside [0, sqrt(2(1-1/N))].
  void validate() const;
};

/// Complex Ginibre matrix with entries (x + iy)/sqrt(2), x, y standard normal.
CMatrix<double> ginibre(Rng& rng, int rows, int cols);
/// First column of a Haar unitary, from the QR factor of a Ginibre matrix
/// with the diagonal phases of R divided out.
CVector<double> haar_ket(Rng& rng, int dim);

State draw_pure_state(Rng& rng, const Basis& basis);
/// rho = G G^dagger / Tr[G G^dagger] with G an N x rank Ginibre matrix.
State draw_mixed_state(Rng& rng, const Basis& basis, int rank);
State draw_shell_state(Rng& rng, const Basis& basis, double radius);
State draw_state(Rng& rng, const Basis& basis, const SampleKind& kind);
/// Bloch vector with standard-normal components, rescaled to |a| = 1 when
/// `normalize` is set.
Obs draw_observable(Rng& rng, const Basis& basis, bool normalize = true);

/// Draws [first, last) of the ensemble described by cfg.
std::vector<State> sample_range(const SampleConfig& cfg, const Basis& basis, std::size_t first, std::size_t last);
/// Whole ensemble of any kind.
std::vector<State> sample_states(const SampleConfig& cfg, const Basis& basis);
/// Requires kind == HaarPure.
std::vector<State> sample_pure(const SampleConfig& cfg, const Basis& basis);
/// Requires kind == HsMixed or RankKMixed.
std::vector<State> sample_mixed(const SampleConfig& cfg, const Basis& basis);
Obs sample_observable(std::uint64_t seed, const Basis& basis);

}  // namespace blochur
