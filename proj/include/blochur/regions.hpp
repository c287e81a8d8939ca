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

// Feasible variance regions: Monte-Carlo scatter over an ensemble, an
// occupancy bitmap over squared variances, analytic qubit boundaries, and
// the search for states that saturate the qubit relation.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "blochur/relations.hpp"
#include "blochur/sampling.hpp"

namespace blochur {

/// Bitmap over the box [0, extent_0] x ... with cubic cells of side `cell`.
/// Values are clamped into the box before binning.
class Occupancy {
 public:
  Occupancy() = default;
  Occupancy(std::vector<double> extents, double cell);

  int dims() const { return static_cast<int>(shape_.size()); }
  const std::vector<std::size_t>& shape() const { return shape_; }
  const std::vector<double>& extents() const { return extents_; }
  double cell() const { return cell_; }

  std::size_t cell_index(int axis, double value) const;
  void mark(std::span<const double> point);
  bool occupied(std::span<const std::size_t> cell) const;
  bool occupied_at(std::span<const double> point) const;
  std::size_t count() const;

  Occupancy& operator|=(const Occupancy& other);
  bool subset_of(const Occupancy& other) const;

  /// Run lengths over the row-major flattened bitmap (last axis fastest),
  /// alternating unoccupied/occupied and starting with an unoccupied run
  /// (which may be 0).
  std::vector<std::size_t> run_lengths() const;

 private:
  std::size_t flat(std::span<const std::size_t> cell) const;

  std::vector<std::size_t> shape_;
  std::vector<double> extents_;
  double cell_ = 0.01;
  std::vector<bool> bits_;
};

struct VarianceSample {
  std::size_t index = 0;
  double purity = 0;
  std::array<double, 3> variances{};  ///< dA^2, dB^2[, dC^2]
  double margin = 0;                  ///< of the governing relation
};

struct RegionScan {
  std::vector<std::string> axes;
  std::string governing;  ///< relation checked for every sample
  double grid = 0.01;
  std::vector<VarianceSample> samples;
  Occupancy occupancy;
  /// Analytic boundary (dA^2, dB^2) of the pair region, when known.
  std::vector<std::array<double, 2>> boundary;
  double worst_margin = 0;
  double max_residual = 0;  ///< triple scans: largest |lhs - 2| of the equality

  int dims() const { return static_cast<int>(axes.size()); }
};

/// (dA^2, dB^2) over the ensemble. The governing relation is the qubit
/// relation for N = 2 and the Robertson bound otherwise. For qubit
/// ensembles of fixed Bloch radius (pure or shell) the boundary traced by
/// coplanar states is attached.
RegionScan scan_pair(const Obs& a, const Obs& b, const SampleConfig& ensemble, double grid);

/// (dA^2, dB^2, dC^2) for A = sigma1, B = sigma1 cos t + sigma2 sin t,
/// C = sigma3 over a pure qubit ensemble; each sample must satisfy the
/// three-observable equality to kSaturated.
RegionScan scan_triple(double theta_ab, const SampleConfig& ensemble, double grid);

struct SliceRange {
  std::size_t count = 0;
  double min = 0;
  double max = 0;
};

/// Range of `target_axis` over samples whose `fixed_axis` value lies within
/// half_width of `value`; empty when no sample falls in the slice.
std::optional<SliceRange> slice_range(const RegionScan& scan, int fixed_axis, double value, double half_width,
                                      int target_axis);

/// Qubit boundary of the (dA^2, dB^2) region for states of Bloch radius r:
/// p = r (cos phi e1 + sin phi e2) swept over phi in [0, pi] in the plane of a, b.
std::vector<std::array<double, 2>> coplanar_boundary(const Obs& a, const Obs& b, double radius, std::size_t points);

struct SaturationResult {
  State best_state;
  double achieved_margin = 0;
  int iterations = 0;
  double in_plane_margin = 0;  ///< golden-section result within span{a, b}
  double refined_margin = 0;   ///< Nelder-Mead over the full sphere
};

/// Minimizes the qubit-relation margin over states with |p| = p_norm:
/// golden-section over the in-plane angle (each half-plane separately), then
/// a Nelder-Mead refinement over the whole sphere started from that point.
SaturationResult find_saturating_state(const Obs& a, const Obs& b, double p_norm);

}  // namespace blochur
