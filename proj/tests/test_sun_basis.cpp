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

#include "blochur/sun_basis.hpp"
#include "oracles.hpp"

using namespace blochur;

TEST_CASE("SU(2) generators are the Pauli matrices") {
  const auto b = build_basis(2);
  REQUIRE(b.size() == 3);
  for (int k = 0; k < 3; ++k) CHECK((b.generator(k).matrix() - oracle::pauli(k + 1)).norm() == 0.0);
  CHECK(b.d_entries().empty());
  REQUIRE(b.f_entries().size() == 1);
  CHECK(structure_f(b, 1, 2, 3) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("SU(3) generators are the Gell-Mann matrices") {
  const auto b = build_basis(3);
  REQUIRE(b.size() == 8);
  for (int k = 0; k < 8; ++k) CHECK((b.generator(k).matrix() - oracle::gell_mann(k + 1)).norm() < 1e-15);
}

TEST_CASE("SU(3) structure constants match the trace formulas") {
  const auto b = build_basis(3);
  for (int j = 1; j <= 8; ++j)
    for (int k = 1; k <= 8; ++k)
      for (int l = 1; l <= 8; ++l) {
        const auto &gj = oracle::gell_mann(j), &gk = oracle::gell_mann(k), &gl = oracle::gell_mann(l);
        CHECK(std::abs(structure_f(b, j, k, l) - oracle::f_of(gj, gk, gl)) < 1e-12);
        CHECK(std::abs(structure_d(b, j, k, l) - oracle::d_of(gj, gk, gl)) < 1e-12);
      }
  CHECK(structure_f(b, 1, 2, 3) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(structure_d(b, 1, 1, 8) == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK(structure_f(b, 4, 5, 8) == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-12));
  CHECK(structure_d(b, 8, 8, 8) == doctest::Approx(-1 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK(b.f_entries().size() == 9);
  CHECK(b.d_entries().size() == 16);
}

TEST_CASE("generators are traceless, Hermitian and orthonormal") {
  for (int n = 2; n <= 6; ++n) {
    const auto b = build_basis(n);
    REQUIRE(b.size() == n * n - 1);
    for (int j = 0; j < b.size(); ++j) {
      CHECK(std::abs(trace(b.generator(j))) < 1e-14);
      for (int k = 0; k < b.size(); ++k)
        CHECK(std::abs(trace_product(b.generator(j), b.generator(k)) - std::complex<double>(j == k ? 2 : 0)) < 1e-13);
    }
  }
}

TEST_CASE("algebra closes for N = 2..6") {
  for (int n = 2; n <= 6; ++n) {
    const auto check = verify_algebra(build_basis(n));
    CAPTURE(n);
    CHECK(check);
    CHECK(check.worst_residual < tolerance::kAlgebra);
  }
}

TEST_CASE("a corrupted generator breaks the algebra") {
  const auto good = build_basis(3);
  auto gens = good.generators();
  gens[3] = HermitianMatrix<double>(CMatrix<double>(gens[3].matrix() * 1.01));
  const auto bad = GeneratorBasis<double>::from_generators(gens);
  const auto check = verify_algebra(bad);
  CHECK_FALSE(check);
  CHECK(check.worst_residual > tolerance::kAlgebra);
}

TEST_CASE("from_generators validates count, shape and trace") {
  auto gens = build_basis(3).generators();
  auto short_list = gens;
  short_list.pop_back();
  CHECK_THROWS_AS(GeneratorBasis<double>::from_generators(short_list), std::invalid_argument);
  auto traced = gens;
  traced[0] = HermitianMatrix<double>::identity(3);
  CHECK_THROWS_AS(GeneratorBasis<double>::from_generators(traced), std::invalid_argument);
  CHECK_THROWS_AS(GeneratorBasis<double>::from_generators({}), std::invalid_argument);
}

TEST_CASE("f is totally antisymmetric and d totally symmetric") {
  for (int n = 2; n <= 4; ++n) {
    const auto b = build_basis(n);
    const int m = b.size();
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
          CHECK(b.f(j, k, l) == -b.f(k, j, l));
          CHECK(b.f(j, k, l) == b.f(k, l, j));
          CHECK(b.d(j, k, l) == b.d(k, j, l));
          CHECK(b.d(j, k, l) == b.d(l, k, j));
        }
    CHECK_THROWS_AS(b.f(0, 0, m), std::out_of_range);
    CHECK_THROWS_AS(b.d(-1, 0, 0), std::out_of_range);
  }
}

TEST_CASE("d contracted with itself") {
  // sum_kl d_jkl d_mkl = (N^2 - 4)/N delta_jm
  for (int n = 2; n <= 5; ++n) {
    const auto b = build_basis(n);
    const int m = b.size();
    for (int j = 0; j < m; ++j)
      for (int q = 0; q < m; ++q) {
        double s = 0;
        for (int k = 0; k < m; ++k)
          for (int l = 0; l < m; ++l) s += b.d(j, k, l) * b.d(q, k, l);
        CHECK(std::abs(s - (j == q ? (n * n - 4.0) / n : 0.0)) < 1e-12);
      }
  }
}

TEST_CASE("project inverts combine") {
  const auto b = build_basis(4);
  RVector<double> c(b.size());
  for (int i = 0; i < b.size(); ++i) c(i) = std::sin(1.0 + i);
  const RVector<double> back = b.project(b.combine(c)) / 2.0;
  CHECK((back - c).norm() < 1e-13);
}
