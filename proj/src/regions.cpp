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

#include "blochur/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "blochur/optimize.hpp"
#include "blochur/parallel.hpp"

namespace blochur {

Occupancy::Occupancy(std::vector<double> extents, double cell) : extents_(std::move(extents)), cell_(cell) {
  if (!(cell_ > 0)) throw std::invalid_argument("occupancy cell must be positive");
  std::size_t total = 1;
  for (double e : extents_) {
    if (!(e >= 0)) throw std::invalid_argument("occupancy extent must be non-negative");
    const auto n = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(e / cell_ - 1e-9)));
    shape_.push_back(n);
    total *= n;
  }
  bits_.assign(total, false);
}

std::size_t Occupancy::cell_index(int axis, double value) const {
  const std::size_t n = shape_.at(static_cast<std::size_t>(axis));
  if (!(value > 0)) return 0;
  const auto i = static_cast<std::size_t>(std::floor(value / cell_));
  return std::min(i, n - 1);
}

std::size_t Occupancy::flat(std::span<const std::size_t> cell) const {
  if (cell.size() != shape_.size()) throw DimensionMismatch("occupancy cell rank mismatch");
  std::size_t f = 0;
  for (std::size_t d = 0; d < shape_.size(); ++d) {
    if (cell[d] >= shape_[d]) throw std::out_of_range("occupancy cell out of range");
    f = f * shape_[d] + cell[d];
  }
  return f;
}

void Occupancy::mark(std::span<const double> point) {
  if (point.size() != shape_.size()) throw DimensionMismatch("occupancy point rank mismatch");
  std::array<std::size_t, 3> cell{};
  for (std::size_t d = 0; d < shape_.size(); ++d) cell[d] = cell_index(static_cast<int>(d), point[d]);
  bits_[flat(std::span<const std::size_t>(cell.data(), shape_.size()))] = true;
}

bool Occupancy::occupied(std::span<const std::size_t> cell) const { return bits_[flat(cell)]; }

bool Occupancy::occupied_at(std::span<const double> point) const {
  if (point.size() != shape_.size()) throw DimensionMismatch("occupancy point rank mismatch");
  std::array<std::size_t, 3> cell{};
  for (std::size_t d = 0; d < shape_.size(); ++d) cell[d] = cell_index(static_cast<int>(d), point[d]);
  return occupied(std::span<const std::size_t>(cell.data(), shape_.size()));
}

std::size_t Occupancy::count() const { return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true)); }

Occupancy& Occupancy::operator|=(const Occupancy& other) {
  if (other.shape_ != shape_) throw DimensionMismatch("occupancy shapes differ");
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (other.bits_[i]) bits_[i] = true;
  return *this;
}

bool Occupancy::subset_of(const Occupancy& other) const {
  if (other.shape_ != shape_) throw DimensionMismatch("occupancy shapes differ");
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] && !other.bits_[i]) return false;
  return true;
}

std::vector<std::size_t> Occupancy::run_lengths() const {
  std::vector<std::size_t> runs;
  bool current = false;
  std::size_t length = 0;
  for (bool b : bits_) {
    if (b != current) {
      runs.push_back(length);
      current = b;
      length = 0;
    }
    ++length;
  }
  runs.push_back(length);
  return runs;
}

namespace {

void check_grid(double grid) {
  if (!(grid >= 1e-3 && grid <= 0.1)) throw std::invalid_argument("grid must lie in [1e-3, 0.1]");
}

/// Fixed Bloch radius of a qubit ensemble, if it has one.
std::optional<double> fixed_radius(const SampleConfig& cfg) {
  if (std::holds_alternative<HaarPure>(cfg.kind)) return std::sqrt(2.0 * (1.0 - 1.0 / cfg.dim));
  if (const auto* s = std::get_if<BlochShell>(&cfg.kind)) return s->radius;
  if (const auto* r = std::get_if<RankKMixed>(&cfg.kind); r && r->k == 1)
    return std::sqrt(2.0 * (1.0 - 1.0 / cfg.dim));
  return std::nullopt;
}

struct ChunkScan {
  std::vector<VarianceSample> samples;
  double worst_margin = std::numeric_limits<double>::infinity();
  double max_residual = 0;
};

template <typename Evaluate>
RegionScan run_scan(const SampleConfig& ensemble, const Basis& basis, std::vector<double> extents, double grid,
                    Evaluate&& evaluate) {
  const std::size_t chunks = (ensemble.count + kChunkSize - 1) / kChunkSize;
  std::vector<ChunkScan> parts(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t first = c * kChunkSize;
    const std::vector<State> states = sample_range(ensemble, basis, first, first + kChunkSize);
    ChunkScan& part = parts[c];
    part.samples.reserve(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
      VarianceSample s;
      s.index = first + i;
      s.purity = states[i].purity();
      const RelationVerdict v = evaluate(states[i], s.variances);
      s.margin = v.margin;
      part.worst_margin = std::min(part.worst_margin, v.margin);
      part.max_residual = std::max(part.max_residual, std::abs(v.lhs - v.rhs));
      part.samples.push_back(s);
    }
  });

  RegionScan scan;
  scan.grid = grid;
  scan.occupancy = Occupancy(std::move(extents), grid);
  scan.samples.reserve(ensemble.count);
  scan.worst_margin = std::numeric_limits<double>::infinity();
  const int dims = scan.occupancy.dims();
  for (ChunkScan& part : parts) {
    for (const VarianceSample& s : part.samples) {
      scan.occupancy.mark(std::span<const double>(s.variances.data(), static_cast<std::size_t>(dims)));
      scan.samples.push_back(s);
    }
    scan.worst_margin = std::min(scan.worst_margin, part.worst_margin);
    scan.max_residual = std::max(scan.max_residual, part.max_residual);
  }
  return scan;
}

}  // namespace

std::vector<std::array<double, 2>> coplanar_boundary(const Obs& a, const Obs& b, double radius, std::size_t points) {
  if (a.dim() != 2 || b.dim() != 2) throw PreconditionError("analytic boundary is available for qubits only");
  const RVector<double> e1 = a.bloch().normalized();
  RVector<double> e2 = b.bloch() - b.bloch().dot(e1) * e1;
  if (e2.norm() < 1e-12) {
    // a parallel to b: any direction orthogonal to a closes the plane
    e2 = RVector<double>::Zero(3);
    e2(std::abs(e1(0)) < 0.9 ? 0 : 1) = 1.0;
    e2 -= e2.dot(e1) * e1;
  }
  e2.normalize();
  std::vector<std::array<double, 2>> out;
  out.reserve(points + 1);
  const double a2 = a.bloch().squaredNorm();
  const double b2 = b.bloch().squaredNorm();
  for (std::size_t k = 0; k <= points; ++k) {
    const double phi = std::numbers::pi * static_cast<double>(k) / static_cast<double>(points);
    const RVector<double> p = radius * (std::cos(phi) * e1 + std::sin(phi) * e2);
    const double ap = a.bloch().dot(p);
    const double bp = b.bloch().dot(p);
    out.push_back({a2 - ap * ap, b2 - bp * bp});
  }
  return out;
}

RegionScan scan_pair(const Obs& a, const Obs& b, const SampleConfig& ensemble, double grid) {
  check_grid(grid);
  ensemble.validate();
  if (a.dim() != ensemble.dim || b.dim() != ensemble.dim)
    throw DimensionMismatch("observables and ensemble differ in dimension");
  const Basis basis = build_basis<double>(ensemble.dim);
  const bool qubit = ensemble.dim == 2;

  RegionScan scan = run_scan(ensemble, basis, {a.bloch().squaredNorm(), b.bloch().squaredNorm()}, grid,
                             [&](const State& rho, std::array<double, 3>& v) {
                               v[0] = clip_variance(variance_matrix(a, rho));
                               v[1] = clip_variance(variance_matrix(b, rho));
                               return qubit ? check_theorem1(a, b, rho) : robertson_bound(a, b, rho);
                             });
  scan.axes = {"dA2", "dB2"};
  scan.governing = std::string(relation_name(qubit ? RelationId::theorem1 : RelationId::robertson));
  scan.max_residual = 0;
  if (qubit)
    if (const auto r = fixed_radius(ensemble))
      scan.boundary = coplanar_boundary(a, b, *r, static_cast<std::size_t>(std::ceil(4.0 / grid)));
  return scan;
}

RegionScan scan_triple(double theta_ab, const SampleConfig& ensemble, double grid) {
  check_grid(grid);
  ensemble.validate();
  if (ensemble.dim != 2) throw PreconditionError("triple scan is defined for qubits only");
  const auto r = fixed_radius(ensemble);
  if (!r || std::abs(*r - 1.0) > tolerance::kPureState)
    throw PreconditionError("triple scan needs a pure-state ensemble");
  const Basis& basis = qubit_basis();
  const Obs a = pauli_observable(1, 0, 0);
  const Obs b = pauli_observable(std::cos(theta_ab), std::sin(theta_ab), 0);
  const Obs c = pauli_observable(0, 0, 1);

  RegionScan scan = run_scan(ensemble, basis, {1.0, 1.0, 1.0}, grid, [&](const State& rho, std::array<double, 3>& v) {
    v[0] = clip_variance(variance_matrix(a, rho));
    v[1] = clip_variance(variance_matrix(b, rho));
    v[2] = clip_variance(variance_matrix(c, rho));
    const RelationVerdict verdict = check_three_observable_equality(theta_ab, rho);
    if (!verdict.saturated) {
      std::ostringstream os;
      os << "three-observable equality residual " << -verdict.margin << " exceeds tolerance";
      throw ConsistencyError(os.str());
    }
    return verdict;
  });
  scan.axes = {"dA2", "dB2", "dC2"};
  scan.governing = std::string(relation_name(RelationId::three_obs_equality));
  scan.boundary = coplanar_boundary(a, b, 1.0, static_cast<std::size_t>(std::ceil(4.0 / grid)));
  return scan;
}

std::optional<SliceRange> slice_range(const RegionScan& scan, int fixed_axis, double value, double half_width,
                                      int target_axis) {
  if (fixed_axis < 0 || fixed_axis >= scan.dims() || target_axis < 0 || target_axis >= scan.dims())
    throw std::out_of_range("slice axis out of range");
  std::optional<SliceRange> out;
  for (const VarianceSample& s : scan.samples) {
    if (std::abs(s.variances[static_cast<std::size_t>(fixed_axis)] - value) > half_width) continue;
    const double t = s.variances[static_cast<std::size_t>(target_axis)];
    if (!out) {
      out = SliceRange{1, t, t};
    } else {
      ++out->count;
      out->min = std::min(out->min, t);
      out->max = std::max(out->max, t);
    }
  }
  return out;
}

SaturationResult find_saturating_state(const Obs& a, const Obs& b, double p_norm) {
  if (a.dim() != 2 || b.dim() != 2) throw PreconditionError("saturation search is defined for qubits only");
  if (!(p_norm > 0.0 && p_norm <= 1.0)) throw PreconditionError("p_norm must lie in (0, 1]");

  const RVector<double> e1 = a.bloch().normalized();
  RVector<double> e2 = b.bloch() - b.bloch().dot(e1) * e1;
  auto margin_at = [&](const RVector<double>& p) { return check_theorem1(a, b, qubit_state(p(0), p(1), p(2))).margin; };

  if (e2.norm() < 1e-12 * b.bloch().norm()) {
    // Commuting directions: the common axis saturates.
    const RVector<double> p = p_norm * e1;
    State best = qubit_state(p(0), p(1), p(2));
    const double m = margin_at(p);
    return {std::move(best), m, 0, m, m};
  }
  e2.normalize();

  auto in_plane = [&](double phi) -> RVector<double> { return p_norm * (std::cos(phi) * e1 + std::sin(phi) * e2); };
  const ScalarMinimum upper =
      golden_section_minimize([&](double phi) { return margin_at(in_plane(phi)); }, 0.0, std::numbers::pi);
  const ScalarMinimum lower = golden_section_minimize([&](double phi) { return margin_at(in_plane(phi)); },
                                                      std::numbers::pi, 2.0 * std::numbers::pi);
  const ScalarMinimum& plane = upper.value <= lower.value ? upper : lower;
  const RVector<double> p_plane = in_plane(plane.x);

  auto on_sphere = [&](const Eigen::VectorXd& angles) -> RVector<double> {
    RVector<double> p(3);
    p << std::sin(angles(0)) * std::cos(angles(1)), std::sin(angles(0)) * std::sin(angles(1)), std::cos(angles(0));
    return p_norm * p;
  };
  Eigen::VectorXd start(2);
  start << std::acos(std::clamp(p_plane(2) / p_norm, -1.0, 1.0)), std::atan2(p_plane(1), p_plane(0));
  const VectorMinimum refined =
      nelder_mead_minimize([&](const Eigen::VectorXd& x) { return margin_at(on_sphere(x)); }, start, 0.1, 500);

  const bool use_plane = plane.value <= refined.value;
  const RVector<double> p_best = use_plane ? p_plane : on_sphere(refined.x);
  return {qubit_state(p_best(0), p_best(1), p_best(2)), use_plane ? plane.value : refined.value,
          upper.iterations + lower.iterations + refined.iterations, plane.value, refined.value};
}

}  // namespace blochur
