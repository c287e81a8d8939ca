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
#include <random>

#include "blochur/variance.hpp"
#include "oracles.hpp"

using namespace blochur;

namespace {

HermitianMatrix<double> herm(const oracle::Mat& m) { return HermitianMatrix<double>(CMatrix<double>(m)); }

struct Draw {
  oracle::Mat a_m, rho_m;
  Obs a;
  State rho;
};

Draw draw(std::mt19937_64& gen, const Basis& b, bool pure) {
  const int n = b.dim();
  oracle::Mat a = oracle::random_hermitian(gen, n);
  oracle::Mat rho = pure ? oracle::pure_density(gen, n) : oracle::random_density(gen, n);
  return {a, rho, Obs::from_matrix(herm(a), b), State::from_matrix(herm(rho), b)};
}

}  // namespace

TEST_CASE("matrix and Bloch routes agree with the definition") {
  std::mt19937_64 gen(31);
  for (int n = 2; n <= 5; ++n) {
    const auto b = build_basis(n);
    for (int trial = 0; trial < 50; ++trial) {
      const Draw d = draw(gen, b, trial % 2 == 0);
      const double ref = oracle::variance(d.a_m, d.rho_m);
      CHECK(std::abs(variance_matrix(d.a, d.rho) - ref) < 1e-10);
      CHECK(std::abs(variance_bloch(d.a, d.rho) - ref) < 1e-10);
      const auto rep = variance_report(d.a, d.rho);
      CHECK(rep.discrepancy <= tolerance::kVarianceRoutes);
      CHECK(rep.variance >= 0.0);
    }
  }
}

TEST_CASE("qubit variance is |a|^2 - (a.p)^2") {
  std::mt19937_64 gen(32);
  const auto b = build_basis(2);
  for (int trial = 0; trial < 50; ++trial) {
    const Draw d = draw(gen, b, false);
    const double ap = d.a.bloch().dot(d.rho.bloch());
    CHECK(variance_bloch(d.a, d.rho) == doctest::Approx(d.a.bloch().squaredNorm() - ap * ap).epsilon(1e-12));
  }
}

TEST_CASE("completely mixed state gives Tr[A^2]/N") {
  std::mt19937_64 gen(33);
  for (int n = 2; n <= 5; ++n) {
    const auto b = build_basis(n);
    const oracle::Mat a = oracle::random_hermitian(gen, n);
    const oracle::Mat a0 = a - a.trace() / double(n) * oracle::Mat::Identity(n, n);
    const auto obs = Obs::from_matrix(herm(a), b);
    const auto mixed = State::from_bloch(RVector<double>::Zero(b.size()), b);
    CHECK(std::abs(variance_bloch(obs, mixed) - (a0 * a0).trace().real() / n) < 1e-12);
  }
}

TEST_CASE("variance is invariant under A -> -A and A -> A + cI") {
  std::mt19937_64 gen(34);
  const auto b = build_basis(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Draw d = draw(gen, b, false);
    const double v = variance_bloch(d.a, d.rho);
    CHECK(variance_bloch(d.a.negated(), d.rho) == doctest::Approx(v).epsilon(1e-12));
    const auto shifted = Obs::from_matrix(herm(d.a_m + 3.0 * oracle::Mat::Identity(3, 3)), b);
    CHECK(variance_bloch(shifted, d.rho) == doctest::Approx(v).epsilon(1e-12));
  }
}

TEST_CASE("eigenstates have zero variance") {
  const auto b = build_basis(2);
  const auto s3 = Obs::from_matrix(herm(oracle::pauli(3)), b);
  RVector<double> p(3);
  p << 0, 0, 1;
  const auto up = State::from_bloch(p, b);
  CHECK(std::abs(variance_matrix(s3, up)) < 1e-15);
  CHECK(expectation(s3, up) == doctest::Approx(1));
}

TEST_CASE("clip_variance") {
  CHECK(clip_variance(-5e-13) == 0.0);
  CHECK(clip_variance(0.25) == 0.25);
  CHECK_THROWS_AS(clip_variance(-1e-9), ConsistencyError);
}

TEST_CASE("dimension mismatch") {
  const auto b2 = build_basis(2);
  const auto b3 = build_basis(3);
  const auto a = Obs::from_matrix(herm(oracle::pauli(1)), b2);
  const auto rho = State::from_bloch(RVector<double>::Zero(8), b3);
  CHECK_THROWS_AS(variance_matrix(a, rho), DimensionMismatch);
  CHECK_THROWS_AS(variance_bloch(a, rho), DimensionMismatch);
}

TEST_CASE("angle_between") {
  RVector<double> x(3), y(3), z(3);
  x << 1, 0, 0;
  y << 0, 2, 0;
  z << -3, 0, 0;
  CHECK(angle_between(x, y) == doctest::Approx(std::numbers::pi / 2));
  CHECK(angle_between(x, z) == doctest::Approx(std::numbers::pi));
  CHECK(angle_between(x, x) == 0.0);
  // Near-parallel vectors: acos(1 - tiny) would lose half the digits.
  RVector<double> w(3);
  w << 1, 1e-9, 0;
  CHECK(angle_between(x, w) == doctest::Approx(1e-9).epsilon(1e-6));
  CHECK_THROWS_AS(angle_between(x, RVector<double>(RVector<double>::Zero(3))), PreconditionError);
}

TEST_CASE("folded angles") {
  const auto b = build_basis(2);
  const auto a = Obs::from_matrix(herm(oracle::pauli(1)), b);
  const auto bb = Obs::from_matrix(herm(oracle::pauli(2)), b);
  RVector<double> p(3);
  p << -0.6, 0.6, 0;
  const auto rho = State::from_bloch(p, b);
  const auto raw = angles(a, bb, rho, false);
  CHECK(raw.theta_pa == doctest::Approx(3 * std::numbers::pi / 4));
  CHECK(raw.theta_pb == doctest::Approx(std::numbers::pi / 4));
  const auto folded = angles(a, bb, rho, true);
  CHECK(folded.folded_pa);
  CHECK_FALSE(folded.folded_pb);
  CHECK(folded.theta_pa == doctest::Approx(std::numbers::pi / 4));
  CHECK(folded.folded_ab);
  CHECK(folded.theta_ab == doctest::Approx(std::numbers::pi / 2));
  CHECK_FALSE(folded.theta_pa_prime.has_value());
  const auto c = Obs::from_matrix(herm(oracle::pauli(3)), b);
  CHECK(angles(a, bb, c, rho, true).theta_pc.value() == doctest::Approx(std::numbers::pi / 2));
  CHECK_THROWS_AS(angles(a, bb, State::from_bloch(RVector<double>::Zero(3), b), false), PreconditionError);
}

TEST_CASE("pair geometry: vector values match the trace identities") {
  std::mt19937_64 gen(35);
  for (int n = 2; n <= 5; ++n) {
    const auto b = build_basis(n);
    for (int trial = 0; trial < 10; ++trial) {
      const oracle::Mat am = oracle::random_hermitian(gen, n);
      const oracle::Mat bm = oracle::random_hermitian(gen, n);
      const auto a = Obs::from_matrix(herm(am), b);
      const auto bo = Obs::from_matrix(herm(bm), b);
      const auto g = pair_geometry(a, bo);
      CHECK(g.worst_discrepancy <= tolerance::kTraceVsVector);
      // Independent check of two identities on traceless parts.
      const oracle::Mat a0 = am - am.trace() / double(n) * oracle::Mat::Identity(n, n);
      const oracle::Mat b0 = bm - bm.trace() / double(n) * oracle::Mat::Identity(n, n);
      CHECK(std::abs(g.g - (a0 * b0).trace().real() / 2) < 1e-11);
      CHECK(std::abs(g.a_dot_a_prime - (a0 * a0 * a0).trace().real() / 2) < 1e-11);
      const double ta2 = (a0 * a0).trace().real();
      CHECK(std::abs(g.a_prime_sq - ((a0 * a0 * a0 * a0).trace().real() - ta2 * ta2 / n) / 2) < 1e-10);
      if (n == 2) CHECK(g.a_prime_sq == 0.0);
    }
  }
}
