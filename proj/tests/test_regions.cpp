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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "blochur/optimize.hpp"
#include "blochur/regions.hpp"

using namespace blochur;
using std::numbers::pi;

namespace {

SampleConfig pure_qubits(std::size_t count, std::uint64_t seed) { return {seed, 2, count, HaarPure{}}; }

}  // namespace

TEST_CASE("occupancy bins, clamps and encodes runs") {
  Occupancy occ({1.0, 1.0}, 0.25);
  CHECK(occ.shape() == std::vector<std::size_t>{4, 4});
  CHECK(occ.cell_index(0, 0.0) == 0);
  CHECK(occ.cell_index(0, 0.26) == 1);
  CHECK(occ.cell_index(0, 1.0) == 3);
  CHECK(occ.cell_index(0, 7.0) == 3);
  CHECK(occ.cell_index(0, -1.0) == 0);
  const std::array<double, 2> p{0.1, 0.6};
  occ.mark(p);
  CHECK(occ.occupied_at(p));
  CHECK(occ.count() == 1);
  // Flat index of (0, 2) is 2: runs are 2 empty, 1 occupied, 13 empty.
  CHECK(occ.run_lengths() == std::vector<std::size_t>{2, 1, 13});

  Occupancy first({1.0}, 0.5);
  first.mark(std::array<double, 1>{0.1});
  CHECK(first.run_lengths() == std::vector<std::size_t>{0, 1, 1});

  Occupancy bigger({1.0, 1.0}, 0.25);
  bigger |= occ;
  bigger.mark(std::array<double, 2>{0.9, 0.9});
  CHECK(occ.subset_of(bigger));
  CHECK_FALSE(bigger.subset_of(occ));
  CHECK_THROWS(Occupancy({1.0}, 0.25) |= occ);
}

TEST_CASE("occupancy grows monotonically with the sample count") {
  const auto a = pauli_observable(1, 0, 0);
  const auto b = pauli_observable(std::cos(1.0), std::sin(1.0), 0);
  const auto small = scan_pair(a, b, pure_qubits(2000, 3), 0.02);
  const auto large = scan_pair(a, b, pure_qubits(20000, 3), 0.02);
  CHECK(small.occupancy.subset_of(large.occupancy));
  CHECK(small.occupancy.count() <= large.occupancy.count());
  for (std::size_t i = 0; i < small.samples.size(); ++i)
    CHECK(small.samples[i].variances == large.samples[i].variances);
}

TEST_CASE("pair scan obeys the qubit relation and the boundary") {
  const auto a = pauli_observable(1, 0, 0);
  const auto b = pauli_observable(0, 1, 0);
  const auto scan = scan_pair(a, b, pure_qubits(20000, 5), 0.01);
  CHECK(scan.governing == "theorem1");
  CHECK(scan.worst_margin >= -tolerance::kHolds);
  REQUIRE_FALSE(scan.boundary.empty());
  // theta_ab = pi/2, pure: the coplanar boundary is dA^2 + dB^2 = 1.
  for (const auto& pt : scan.boundary) CHECK(pt[0] + pt[1] == doctest::Approx(1.0).epsilon(1e-12));
  for (const auto& s : scan.samples) CHECK(s.variances[0] + s.variances[1] >= 1.0 - 1e-12);
}

TEST_CASE("pair scan at theta_ab = 0 collapses to a line") {
  const auto a = pauli_observable(1, 0, 0);
  const auto scan = scan_pair(a, a, pure_qubits(5000, 6), 0.01);
  for (const auto& s : scan.samples) CHECK(std::abs(std::sqrt(s.variances[1]) - std::sqrt(s.variances[0])) <= 1e-9);
}

TEST_CASE("pair scan for N = 3 is governed by Robertson") {
  const auto basis = build_basis(3);
  Rng rng(1);
  const auto a = draw_observable(rng, basis), b = draw_observable(rng, basis);
  const auto scan = scan_pair(a, b, SampleConfig{2, 3, 3000, HsMixed{}}, 0.01);
  CHECK(scan.governing == "robertson");
  CHECK(scan.worst_margin >= -tolerance::kHolds);
  CHECK(scan.boundary.empty());
}

TEST_CASE("grid and ensemble validation") {
  const auto a = pauli_observable(1, 0, 0);
  CHECK_THROWS_AS(scan_pair(a, a, pure_qubits(10, 1), 0.5), std::invalid_argument);
  CHECK_THROWS_AS(scan_pair(a, a, pure_qubits(10, 1), 1e-4), std::invalid_argument);
  CHECK_THROWS_AS(scan_triple(pi / 4, SampleConfig{1, 2, 10, HsMixed{}}, 0.01), PreconditionError);
}

TEST_CASE("triple scan satisfies the three-observable equality") {
  for (double t : {pi / 6, pi / 4, pi / 2}) {
    const auto scan = scan_triple(t, pure_qubits(4000, 7), 0.01);
    CHECK(scan.dims() == 3);
    CHECK(scan.max_residual <= 1e-9);
    // At t = pi/2 the cross term vanishes and the three variances sum to 2.
    if (t == pi / 2)
      for (const auto& s : scan.samples)
        CHECK(s.variances[0] + s.variances[1] + s.variances[2] == doctest::Approx(2.0).epsilon(1e-12));
  }
}

TEST_CASE("slice range") {
  const double t = pi / 6;
  const auto a = pauli_observable(1, 0, 0);
  const auto b = pauli_observable(std::cos(t), std::sin(t), 0);
  const auto scan = scan_pair(a, b, pure_qubits(100000, 1), 0.01);
  const auto r = slice_range(scan, 0, 0.25, 0.005, 1);
  REQUIRE(r.has_value());
  CHECK(r->count > 100);
  // Within one cell of the expected dB^2 range [0, 3/4].
  CHECK(r->min <= 0.01);
  CHECK(std::abs(r->max - 0.75) <= 0.01);
  CHECK_FALSE(slice_range(scan, 0, 5.0, 0.001, 1).has_value());
  CHECK_THROWS_AS(slice_range(scan, 0, 0.2, 0.01, 2), std::out_of_range);
}

TEST_CASE("saturation search reaches zero margin on the pure sphere") {
  Rng rng(19);
  const auto& basis = qubit_basis();
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = draw_observable(rng, basis, false);
    const auto b = draw_observable(rng, basis, false);
    const auto res = find_saturating_state(a, b, 1.0);
    CHECK(std::abs(res.achieved_margin) <= 1e-9);
    CHECK(res.best_state.purity() == doctest::Approx(1.0).epsilon(1e-12));
  }
  const auto a = pauli_observable(1, 0, 0);
  const auto res = find_saturating_state(a, pauli_observable(2, 0, 0), 1.0);
  CHECK(std::abs(res.achieved_margin) <= 1e-9);
  CHECK_THROWS_AS(find_saturating_state(a, a, 1.5), PreconditionError);
}

TEST_CASE("golden section and Nelder-Mead") {
  const auto g = golden_section_minimize([](double x) { return (x - 0.3) * (x - 0.3); }, 0, 1);
  CHECK(g.x == doctest::Approx(0.3).epsilon(1e-6));
  const auto nm = nelder_mead_minimize(
      [](const Eigen::VectorXd& x) { return 100 * std::pow(x(1) - x(0) * x(0), 2) + std::pow(1 - x(0), 2); },
      Eigen::Vector2d(-1.2, 1.0), 0.5, 5000, 1e-20);
  CHECK(nm.x(0) == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(nm.x(1) == doctest::Approx(1.0).epsilon(1e-4));
}
