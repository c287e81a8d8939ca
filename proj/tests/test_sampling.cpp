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
#include <cstdlib>
#include <numeric>
#include <set>

#include "blochur/parallel.hpp"
#include "blochur/sampling.hpp"

using namespace blochur;

namespace {

bool same_states(const std::vector<State>& x, const std::vector<State>& y) {
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i].bloch() != y[i].bloch()) return false;
  return true;
}

}  // namespace

TEST_CASE("Rng is deterministic and streams differ") {
  Rng a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    CHECK(x == b());
    (void)c();
  }
  Rng s0 = Rng::stream(42, 0), s1 = Rng::stream(42, 1), s0b = Rng::stream(42, 0);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 1000; ++i) {
    const auto x = s0();
    CHECK(x == s0b());
    seen.insert(x);
    seen.insert(s1());
  }
  CHECK(seen.size() == 2000);
}

TEST_CASE("uniform and gaussian moments") {
  Rng rng(1);
  const int n = 200000;
  double su = 0, sg = 0, sg2 = 0;
  double lo = 1, hi = 0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    su += u;
    const double g = rng.gaussian();
    sg += g;
    sg2 += g * g;
  }
  CHECK(lo >= 0.0);
  CHECK(hi < 1.0);
  CHECK(su / n == doctest::Approx(0.5).epsilon(0.01));
  CHECK(std::abs(sg / n) < 0.01);
  CHECK(sg2 / n == doctest::Approx(1.0).epsilon(0.01));
  for (int i = 0; i < 1000; ++i) CHECK(rng.below(7) < 7);
  CHECK_THROWS_AS(rng.below(0), std::invalid_argument);
}

TEST_CASE("SampleConfig validation") {
  SampleConfig cfg;
  cfg.dim = 1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.dim = 3;
  cfg.count = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.count = 10;
  cfg.kind = RankKMixed{4};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.kind = BlochShell{2.0};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.kind = BlochShell{0.5};
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("Haar pure states are pure, unbiased and isotropic") {
  for (int n : {2, 3, 4}) {
    const auto basis = build_basis(n);
    SampleConfig cfg{7, n, 20000, HaarPure{}};
    const auto states = sample_pure(cfg, basis);
    RVector<double> mean = RVector<double>::Zero(basis.size());
    double second = 0;
    for (const auto& s : states) {
      CHECK(std::abs(s.purity() - 2.0 * (1.0 - 1.0 / n)) < 1e-12);
      mean += s.bloch();
      second += s.bloch()(0) * s.bloch()(0);
    }
    mean /= double(states.size());
    CHECK(mean.norm() < 0.05);
    // Isotropy: E[p_1^2] = |p|^2 / (N^2 - 1).
    CHECK(second / states.size() == doctest::Approx(2.0 * (1.0 - 1.0 / n) / (n * n - 1)).epsilon(0.05));
  }
}

TEST_CASE("Hilbert-Schmidt mixed states have the known mean purity") {
  // E Tr[rho^2] = 2N / (N^2 + 1) under the Hilbert-Schmidt measure.
  for (int n : {2, 3}) {
    const auto basis = build_basis(n);
    SampleConfig cfg{9, n, 20000, HsMixed{}};
    const auto states = sample_mixed(cfg, basis);
    double tr2 = 0;
    for (const auto& s : states) tr2 += s.purity() / 2.0 + 1.0 / n;
    CHECK(tr2 / states.size() == doctest::Approx(2.0 * n / (n * n + 1)).epsilon(0.01));
  }
}

TEST_CASE("rank-k states have rank k") {
  const auto basis = build_basis(4);
  Rng rng(3);
  for (int k = 1; k <= 4; ++k) {
    const auto s = draw_mixed_state(rng, basis, k);
    const auto e = eigh(s.rho());
    int nonzero = 0;
    for (Index i = 0; i < e.values.size(); ++i) nonzero += e.values(i) > 1e-10;
    CHECK(nonzero == k);
  }
}

TEST_CASE("Bloch shell states sit at the requested radius") {
  for (int n : {2, 3}) {
    const auto basis = build_basis(n);
    SampleConfig cfg{5, n, 500, BlochShell{0.5}};
    for (const auto& s : sample_states(cfg, basis)) CHECK(std::sqrt(s.purity()) == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("samples do not depend on the worker count") {
  const auto basis = build_basis(3);
  SampleConfig cfg{11, 3, 3 * kChunkSize + 17, HsMixed{}};
  ::setenv("UR_THREADS", "1", 1);
  CHECK(worker_count() == 1);
  const auto serial = sample_states(cfg, basis);
  ::setenv("UR_THREADS", "5", 1);
  CHECK(worker_count() == 5);
  const auto parallel = sample_states(cfg, basis);
  ::unsetenv("UR_THREADS");
  CHECK(same_states(serial, parallel));
}

TEST_CASE("a prefix of an ensemble is the smaller ensemble") {
  const auto basis = build_basis(2);
  SampleConfig big{13, 2, kChunkSize + 100, HaarPure{}};
  SampleConfig small = big;
  small.count = 50;
  const auto all = sample_states(big, basis);
  const auto head = sample_states(small, basis);
  CHECK(same_states(std::vector<State>(all.begin(), all.begin() + 50), head));
  const auto tail = sample_range(big, basis, kChunkSize, kChunkSize + 100);
  CHECK(same_states(std::vector<State>(all.begin() + kChunkSize, all.end()), tail));
}

TEST_CASE("random observables") {
  const auto basis = build_basis(3);
  Rng rng(17);
  const auto a = draw_observable(rng, basis);
  CHECK(a.bloch().norm() == doctest::Approx(1.0).epsilon(1e-14));
  const auto b = draw_observable(rng, basis, false);
  CHECK(b.bloch().size() == 8);
  const auto c1 = sample_observable(99, basis), c2 = sample_observable(99, basis);
  CHECK(c1.bloch() == c2.bloch());
}

TEST_CASE("parallel_for rethrows the lowest failing index") {
  std::vector<int> hit(100, 0);
  parallel_for(100, [&](std::size_t i) { hit[i] = 1; }, 4);
  CHECK(std::accumulate(hit.begin(), hit.end(), 0) == 100);
  try {
    parallel_for(
        50,
        [](std::size_t i) {
          if (i == 7 || i == 30) throw std::runtime_error(std::to_string(i));
        },
        4);
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "7");
  }
}
