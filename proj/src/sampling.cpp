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

#include "blochur/sampling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "blochur/parallel.hpp"

namespace blochur {

namespace {

std::uint64_t splitmix_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t splitmix_next(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  return splitmix_mix(x);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(std::uint64_t seed) {
  std::uint64_t x = seed;
  for (auto& w : s_) w = splitmix_next(x);
}

Rng Rng::stream(std::uint64_t seed, std::uint64_t index) {
  return Rng(splitmix_mix(seed ^ splitmix_mix(index + 0x632be59bd9b4e019ULL)));
}

Rng::result_type Rng::operator()() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

double Rng::gaussian() {
  if (spare_) {
    const double z = *spare_;
    spare_.reset();
    return z;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(phi);
  return r * std::cos(phi);
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below(0)");
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t x = (*this)();
    if (x >= threshold) return x % n;
  }
}

void SampleConfig::validate() const {
  if (dim < 2) throw std::invalid_argument("sample dimension must be >= 2");
  if (count == 0) throw std::invalid_argument("sample count must be positive");
  if (const auto* r = std::get_if<RankKMixed>(&kind); r && (r->k < 1 || r->k > dim))
    throw std::invalid_argument("rank k must lie in 1..N");
  if (const auto* s = std::get_if<BlochShell>(&kind)) {
    const double r_max = std::sqrt(2.0 * (1.0 - 1.0 / dim));
    if (!(s->radius >= 0.0 && s->radius <= r_max + 1e-12))
      throw std::invalid_argument("Bloch shell radius must lie in [0, sqrt(2(1-1/N))]");
  }
}

CMatrix<double> ginibre(Rng& rng, int rows, int cols) {
  CMatrix<double> g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      const double re = rng.gaussian();
      const double im = rng.gaussian();
      g(i, j) = Complex<double>(re, im) / std::sqrt(2.0);
    }
  return g;
}

CVector<double> haar_ket(Rng& rng, int dim) {
  const CMatrix<double> g = ginibre(rng, dim, dim);
  Eigen::HouseholderQR<CMatrix<double>> qr(g);
  const CMatrix<double> q = qr.householderQ() * CMatrix<double>::Identity(dim, dim);
  const Complex<double> r00 = qr.matrixQR()(0, 0);
  const Complex<double> phase = std::abs(r00) > 0 ? r00 / std::abs(r00) : Complex<double>(1);
  CVector<double> psi = q.col(0) * phase;
  psi.normalize();
  return psi;
}

State draw_pure_state(Rng& rng, const Basis& basis) {
  const CVector<double> psi = haar_ket(rng, basis.dim());
  return state_from_matrix(HermitianMatrix<double>(CMatrix<double>(psi * psi.adjoint())), basis);
}

State draw_mixed_state(Rng& rng, const Basis& basis, int rank) {
  const CMatrix<double> g = ginibre(rng, basis.dim(), rank);
  CMatrix<double> w = g * g.adjoint();
  w /= w.trace().real();
  return state_from_matrix(HermitianMatrix<double>(std::move(w)), basis);
}

State draw_shell_state(Rng& rng, const Basis& basis, double radius) {
  const int n = basis.dim();
  const double t = radius / std::sqrt(2.0 * (1.0 - 1.0 / n));
  const CVector<double> psi = haar_ket(rng, n);
  CMatrix<double> rho = (1.0 - t) / n * CMatrix<double>::Identity(n, n);
  rho += t * psi * psi.adjoint();
  return state_from_matrix(HermitianMatrix<double>(std::move(rho)), basis);
}

State draw_state(Rng& rng, const Basis& basis, const SampleKind& kind) {
  return std::visit(
      [&](const auto& k) -> State {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, HaarPure>) return draw_pure_state(rng, basis);
        else if constexpr (std::is_same_v<K, HsMixed>) return draw_mixed_state(rng, basis, basis.dim());
        else if constexpr (std::is_same_v<K, RankKMixed>) return draw_mixed_state(rng, basis, k.k);
        else return draw_shell_state(rng, basis, k.radius);
      },
      kind);
}

Obs draw_observable(Rng& rng, const Basis& basis, bool normalize) {
  RVector<double> a(basis.size());
  for (Index j = 0; j < a.size(); ++j) a(j) = rng.gaussian();
  if (normalize) a.normalize();
  return observable_from_bloch(a, basis);
}

std::vector<State> sample_range(const SampleConfig& cfg, const Basis& basis, std::size_t first, std::size_t last) {
  cfg.validate();
  if (basis.dim() != cfg.dim) throw DimensionMismatch("sample config and basis differ in dimension");
  last = std::min(last, cfg.count);
  std::vector<State> out;
  if (first >= last) return out;
  out.reserve(last - first);
  for (std::size_t chunk = first / kChunkSize; chunk * kChunkSize < last; ++chunk) {
    Rng rng = Rng::stream(cfg.seed, chunk);
    const std::size_t end = std::min(last, (chunk + 1) * kChunkSize);
    for (std::size_t i = chunk * kChunkSize; i < end; ++i) {
      State s = draw_state(rng, basis, cfg.kind);
      if (i >= first) out.push_back(std::move(s));
    }
  }
  return out;
}

std::vector<State> sample_states(const SampleConfig& cfg, const Basis& basis) {
  cfg.validate();
  const std::size_t chunks = (cfg.count + kChunkSize - 1) / kChunkSize;
  std::vector<std::vector<State>> parts(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    parts[c] = sample_range(cfg, basis, c * kChunkSize, (c + 1) * kChunkSize);
  });
  std::vector<State> out;
  out.reserve(cfg.count);
  for (auto& p : parts)
    for (auto& s : p) out.push_back(std::move(s));
  return out;
}

std::vector<State> sample_pure(const SampleConfig& cfg, const Basis& basis) {
  if (!std::holds_alternative<HaarPure>(cfg.kind)) throw std::invalid_argument("sample_pure needs kind haar_pure");
  return sample_states(cfg, basis);
}

std::vector<State> sample_mixed(const SampleConfig& cfg, const Basis& basis) {
  if (!std::holds_alternative<HsMixed>(cfg.kind) && !std::holds_alternative<RankKMixed>(cfg.kind))
    throw std::invalid_argument("sample_mixed needs kind hs_mixed or rank_k_mixed");
  return sample_states(cfg, basis);
}

Obs sample_observable(std::uint64_t seed, const Basis& basis) {
  Rng rng(seed);
  return draw_observable(rng, basis, true);
}

}  // namespace blochur
