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
#include <random>

#include "blochur/bloch.hpp"
#include "oracles.hpp"

using namespace blochur;

namespace {
HermitianMatrix<double> herm(const oracle::Mat& m) { return HermitianMatrix<double>(CMatrix<double>(m)); }
}  // namespace

TEST_CASE("completely mixed qubit has a zero Bloch vector") {
  const auto b = build_basis(2);
  const auto s = State::from_matrix(herm(oracle::Mat::Identity(2, 2) / 2.0), b);
  CHECK(s.bloch().norm() == 0.0);
  CHECK(s.purity() == 0.0);
}

TEST_CASE("|0> sits at the north pole") {
  const auto b = build_basis(2);
  oracle::Mat rho = oracle::Mat::Zero(2, 2);
  rho(0, 0) = 1;
  const auto s = State::from_matrix(herm(rho), b);
  CHECK(s.bloch()(0) == doctest::Approx(0));
  CHECK(s.bloch()(1) == doctest::Approx(0));
  CHECK(s.bloch()(2) == doctest::Approx(1));
  CHECK(s.purity() == doctest::Approx(1));
}

TEST_CASE("purity is 2(1 - 1/N) for pure states and 2(Tr rho^2 - 1/N) in general") {
  std::mt19937_64 gen(21);
  for (int n = 2; n <= 5; ++n) {
    const auto b = build_basis(n);
    const auto pure = State::from_matrix(herm(oracle::pure_density(gen, n)), b);
    CHECK(pure.purity() == doctest::Approx(2.0 * (1.0 - 1.0 / n)).epsilon(1e-12));
    const oracle::Mat rho = oracle::random_density(gen, n);
    const auto mixed = State::from_matrix(herm(rho), b);
    CHECK(mixed.purity() == doctest::Approx(2.0 * ((rho * rho).trace().real() - 1.0 / n)).epsilon(1e-12));
    CHECK(purity(mixed) == mixed.purity());
  }
}

TEST_CASE("state round-trips through its Bloch vector") {
  std::mt19937_64 gen(22);
  for (int n = 2; n <= 5; ++n) {
    const auto b = build_basis(n);
    for (int trial = 0; trial < 10; ++trial) {
      const oracle::Mat rho = oracle::random_density(gen, n);
      const auto s = state_from_matrix(herm(rho), b);
      const auto back = state_to_matrix(s.bloch(), b);
      CHECK((back.rho().matrix() - rho).norm() < 1e-13);
    }
  }
}

TEST_CASE("unphysical input is rejected") {
  const auto b2 = build_basis(2);
  RVector<double> p(3);
  p << 0, 0, 1.1;
  CHECK_THROWS_AS(State::from_bloch(p, b2), UnphysicalState);
  CHECK_THROWS_AS(State::from_matrix(herm(oracle::Mat::Identity(2, 2)), b2), UnphysicalState);

  // For N = 3 the ball of radius 2/sqrt(3) is not all physical: along the
  // lambda_2 axis rho has eigenvalues 1/3 +- r/2, 1/3.
  const auto b3 = build_basis(3);
  RVector<double> q = RVector<double>::Zero(8);
  q(1) = 2.0 / std::sqrt(3.0);
  CHECK_THROWS_AS(State::from_bloch(q, b3), UnphysicalState);
  q(1) = 2.0 / 3.0;
  CHECK_NOTHROW(State::from_bloch(q, b3));
  // Along lambda_8 the pure state |2><2| reaches the full radius.
  RVector<double> r = RVector<double>::Zero(8);
  r(7) = -2.0 / std::sqrt(3.0);
  const auto edge = State::from_bloch(r, b3);
  CHECK(std::abs(edge.rho().matrix()(2, 2) - 1.0) < 1e-14);
  CHECK_THROWS_AS(State::from_bloch(RVector<double>::Zero(3), b3), DimensionMismatch);
}

TEST_CASE("observable drops its trace") {
  const auto b = build_basis(3);
  std::mt19937_64 gen(23);
  const oracle::Mat a = oracle::random_hermitian(gen, 3);
  const auto obs = Obs::from_matrix(herm(a), b);
  const auto shifted = Obs::from_matrix(herm(a + 2.5 * oracle::Mat::Identity(3, 3)), b);
  CHECK((obs.bloch() - shifted.bloch()).norm() < 1e-13);
  CHECK((obs.primed() - shifted.primed()).norm() < 1e-13);
  CHECK(shifted.original_trace() == doctest::Approx(obs.original_trace() + 7.5));
  CHECK(std::abs(trace(obs.matrix())) < 1e-13);
}

TEST_CASE("observable from its Bloch vector") {
  const auto b = build_basis(3);
  RVector<double> a = RVector<double>::Zero(8);
  a(0) = 1;  // A = lambda_1
  const auto obs = observable_from_bloch(a, b);
  CHECK((obs.matrix().matrix() - oracle::gell_mann(1)).norm() < 1e-15);
  // a'_l = d_11l = delta_l8 / sqrt(3), so |a'|^2 = 1/3.
  CHECK(obs.primed().squaredNorm() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(obs.primed()(7) == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-12));
  const auto from_m = observable_from_matrix(herm(oracle::gell_mann(1)), b);
  CHECK((from_m.bloch() - a).norm() < 1e-15);
}

TEST_CASE("primed vector vanishes for qubits") {
  std::mt19937_64 gen(24);
  const auto b = build_basis(2);
  for (int trial = 0; trial < 10; ++trial) {
    const auto obs = Obs::from_matrix(herm(oracle::random_hermitian(gen, 2)), b);
    CHECK(obs.primed().norm() == 0.0);
  }
}

TEST_CASE("negated observable") {
  const auto b = build_basis(3);
  std::mt19937_64 gen(25);
  const auto obs = Obs::from_matrix(herm(oracle::random_hermitian(gen, 3)), b);
  const auto neg = obs.negated();
  CHECK((neg.bloch() + obs.bloch()).norm() == 0.0);
  CHECK((neg.primed() - obs.primed()).norm() == 0.0);
  CHECK((neg.matrix().matrix() + obs.matrix().matrix()).norm() == 0.0);
}

TEST_CASE("Bloch purity of a half-mixed qubit") {
  const auto b = build_basis(2);
  RVector<double> p(3);
  p << std::sqrt(0.5), 0, 0;
  const auto s = State::from_bloch(p, b);
  CHECK(s.purity() == doctest::Approx(0.5));
  CHECK(s.min_eigenvalue() == doctest::Approx((1 - std::sqrt(0.5)) / 2));
}
