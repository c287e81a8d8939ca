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

#include "blochur/commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <string>

namespace blochur::cli {

using nlohmann::json;

namespace {

/// Margin below which a run exits with kExitViolated.
constexpr double kExitMargin = 1e-10;
/// |sin theta_ab| below which A and B are treated as collinear.
constexpr double kCollinear = 1e-12;

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

int exit_for(double worst_margin) { return worst_margin >= -kExitMargin ? kExitOk : kExitViolated; }

StateMix parse_mix(const std::string& mix) {
  if (mix == "pure") return StateMix::pure;
  if (mix == "mixed") return StateMix::mixed;
  if (mix == "any") return StateMix::any;
  throw UsageError("mix must be pure, mixed or any (got '" + mix + "')");
}

SampleKind parse_kind(const std::string& kind) {
  if (kind == "pure") return HaarPure{};
  if (kind == "mixed") return HsMixed{};
  try {
    if (kind.starts_with("shell:")) return BlochShell{std::stod(kind.substr(6))};
    if (kind.starts_with("rank:")) return RankKMixed{std::stoi(kind.substr(5))};
  } catch (const std::exception&) {
  }
  throw UsageError("kind must be pure, mixed, shell:<r> or rank:<k> (got '" + kind + "')");
}

void require_angle(double theta) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) throw UsageError("theta-ab must lie in [0, pi] radians");
}

/// Opposite signs of the two Bloch directions do not change the region; the
/// angle is taken between the observables as given.
double bloch_angle(const Obs& a, const Obs& b) { return angle_between(a.bloch(), b.bloch()); }

template <typename Writer>
void write_file(const std::string& path, Writer&& write) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  write(out);
  if (!out) throw std::runtime_error("write failed: " + path);
}

json slice_summary(const RegionScan& scan, double da2, const Obs& a, const Obs& b) {
  const double half = scan.grid / 2;
  json j = {{"dA2", da2}, {"half_width", half}};
  const auto range = slice_range(scan, 0, da2, half, 1);
  if (!range) {
    j["count"] = 0;
  } else {
    j["count"] = range->count;
    j["dB2_min"] = range->min;
    j["dB2_max"] = range->max;
    j["dB_min"] = std::sqrt(range->min);
    j["dB_max"] = std::sqrt(range->max);
  }
  if (a.dim() == 2) {
    const double a2 = a.bloch().squaredNorm();
    const double bn = b.bloch().norm();
    if (da2 <= a2) {
      const Span s = unit_vector_span(bloch_angle(a, b), da2 / a2);
      j["expected_dB"] = {bn * s.lo, bn * s.hi};
    }
  }
  return j;
}

}  // namespace

json RunReport::to_json() const {
  return {{"schema", kSchemaVersion},
          {"command", command},
          {"config", config},
          {"results", results},
          {"worst_margin", worst_margin},
          {"wall_time", wall_time},
          {"exit_code", exit_code}};
}

RunReport cmd_basis(const BasisOptions& opts) {
  const Stopwatch clock;
  if (opts.dim < 2 || opts.dim > 8) throw UsageError("dim must lie in 2..8");
  const Basis basis = build_basis<double>(opts.dim);
  const AlgebraCheck<double> check = verify_algebra(basis);
  RunReport r;
  r.command = opts.include_generators ? "basis" : "structure-consts";
  r.config = {{"dim", opts.dim}};
  r.results = basis_to_json(basis, opts.include_generators);
  r.results["algebra_ok"] = check.ok;
  r.results["algebra_residual"] = check.worst_residual;
  r.exit_code = check.ok ? kExitOk : kExitViolated;
  r.wall_time = clock.seconds();
  return r;
}

RunReport cmd_verify(const VerifyOptions& opts) {
  const Stopwatch clock;
  const auto id = parse_relation(opts.relation);
  if (!id) throw UsageError("unknown relation '" + opts.relation + "'");
  if (opts.dim < 2 || opts.dim > 8) throw UsageError("dim must lie in 2..8");
  if (is_qubit_only(*id) && opts.dim != 2)
    throw UsageError(std::string(relation_name(*id)) + " is defined for dim 2 only");
  if (opts.samples == 0) throw UsageError("samples must be positive");
  require_angle(opts.theta_ab);

  FuzzConfig cfg;
  cfg.relation = *id;
  cfg.dim = opts.dim;
  cfg.samples = opts.samples;
  cfg.seed = opts.seed;
  cfg.theta_ab = opts.theta_ab;
  cfg.mix = parse_mix(opts.mix);
  const FuzzSummary s = fuzz_relation(cfg);

  RunReport r;
  r.command = "verify";
  r.config = {{"relation", std::string(relation_name(*id))},
              {"dim", opts.dim},
              {"samples", opts.samples},
              {"seed", opts.seed},
              {"theta_ab", opts.theta_ab},
              {"mix", opts.mix},
              {"max_attempts", cfg.max_attempts}};
  r.results = {{"evaluated", s.evaluated},
               {"violations", s.violations},
               {"saturated", s.saturated},
               {"rejected", s.rejected},
               {"max_abs_residual", s.max_abs_residual},
               {"worst_index", s.worst_index},
               {"worst", verdict_to_json(s.worst)}};
  r.worst_margin = s.worst_margin;
  r.exit_code = exit_for(s.worst_margin);
  r.wall_time = clock.seconds();
  return r;
}

RegionRun cmd_region(const RegionOptions& opts) {
  const Stopwatch clock;
  if (opts.mode != "pair" && opts.mode != "triple") throw UsageError("mode must be pair or triple");
  require_angle(opts.theta_ab);
  if (opts.samples == 0) throw UsageError("samples must be positive");
  if (!(opts.grid >= 1e-3 && opts.grid <= 0.1)) throw UsageError("grid must lie in [0.001, 0.1]");
  const bool triple = opts.mode == "triple";
  if (triple && (opts.a_spec || opts.b_spec)) throw UsageError("triple mode uses fixed observables");

  SampleConfig ensemble;
  ensemble.seed = opts.seed;
  ensemble.dim = 2;
  ensemble.count = opts.samples;
  ensemble.kind = parse_kind(opts.kind);

  const Basis& basis = qubit_basis();
  const Obs a = opts.a_spec ? parse_observable(*opts.a_spec, basis) : pauli_observable(1, 0, 0);
  const Obs b = opts.b_spec ? parse_observable(*opts.b_spec, basis)
                            : pauli_observable(std::cos(opts.theta_ab), std::sin(opts.theta_ab), 0);
  if (a.bloch().norm() == 0.0 || b.bloch().norm() == 0.0) throw UsageError("observables must not be multiples of I");
  try {
    ensemble.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  RegionRun run{{}, triple ? scan_triple(opts.theta_ab, ensemble, opts.grid) : scan_pair(a, b, ensemble, opts.grid)};
  const RegionScan& scan = run.scan;
  RunReport& r = run.report;
  r.command = "region";
  r.config = {{"mode", opts.mode},
              {"theta_ab", opts.theta_ab},
              {"samples", opts.samples},
              {"grid", opts.grid},
              {"seed", opts.seed},
              {"kind", opts.kind},
              {"a", opts.a_spec.value_or("sigma1")},
              {"b", opts.b_spec.value_or("n:(cos theta_ab, sin theta_ab, 0)")},
              {"slice_da2", opts.slice_da2 ? json(*opts.slice_da2) : json(nullptr)}};

  json res = {{"governing_relation", scan.governing},
              {"samples", scan.samples.size()},
              {"occupied_cells", scan.occupancy.count()},
              {"worst_margin", scan.worst_margin}};
  if (opts.slice_da2) res["slice"] = slice_summary(scan, *opts.slice_da2, a, b);

  if (triple) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& s : scan.samples) {
      const double sum = s.variances[0] + s.variances[1] + s.variances[2];
      lo = std::min(lo, sum);
      hi = std::max(hi, sum);
    }
    res["max_residual"] = scan.max_residual;
    res["variance_sum_range"] = {lo, hi};
  } else {
    // Collinear a, b: |b| dA = |a| dB for every state.
    const double an = a.bloch().norm(), bn = b.bloch().norm();
    const double sin_ab = std::sin(bloch_angle(a, b));
    double deviation = 0;
    for (const auto& s : scan.samples)
      deviation = std::max(deviation, std::abs(an * std::sqrt(s.variances[1]) - bn * std::sqrt(s.variances[0])) / an);
    res["line_deviation"] = deviation;
    if (std::abs(sin_ab) < kCollinear) {
      res["degenerate"] = {{"collinear", true},
                           {"line", "dB = (|b|/|a|) dA"},
                           {"slope", bn / an},
                           {"max_deviation", deviation}};
    }
  }
  r.results = std::move(res);
  r.worst_margin = scan.worst_margin;
  r.exit_code = exit_for(scan.worst_margin);

  if (!opts.csv_path.empty()) write_file(opts.csv_path, [&](std::ostream& out) { write_region_csv(out, scan); });
  if (!opts.json_path.empty()) {
    json doc = region_to_json(scan);
    doc["schema"] = kSchemaVersion;
    doc["config"] = r.config;
    write_file(opts.json_path, [&](std::ostream& out) { out << doc.dump(2) << '\n'; });
  }
  r.wall_time = clock.seconds();
  return run;
}

RunReport cmd_compare(const CompareOptions& opts) {
  const Stopwatch clock;
  require_angle(opts.theta_ab);
  const Basis& basis = qubit_basis();
  Rng rng(opts.seed);
  const State rho = opts.state_spec ? parse_state(*opts.state_spec, basis) : draw_pure_state(rng, basis);
  const Obs a = parse_observable(opts.a_spec, basis);
  const Obs b = opts.b_spec ? parse_observable(*opts.b_spec, basis)
                            : pauli_observable(std::cos(opts.theta_ab), std::sin(opts.theta_ab), 0);
  if (a.bloch().norm() == 0.0 || b.bloch().norm() == 0.0) throw UsageError("observables must not be multiples of I");

  const double dA2 = clip_variance(variance_matrix(a, rho));
  const double dB2 = clip_variance(variance_matrix(b, rho));
  const RelationVerdict robertson = robertson_bound(a, b, rho);
  const RelationVerdict bloch = check_theorem1(a, b, rho);

  json state_dependent = json::object();
  for (const int sign : {+1, -1}) {
    const char* key = sign > 0 ? "plus" : "minus";
    try {
      state_dependent[key] = verdict_to_json(state_dependent_bound(a, b, rho, sign));
    } catch (const PreconditionError& e) {
      state_dependent[key] = {{"status", "not applicable"}, {"reason", e.what()}};
    }
  }

  const double a2 = a.bloch().squaredNorm();
  const double bn = b.bloch().norm();
  const double da2 = opts.da2.value_or(dA2);
  if (!(da2 >= 0.0 && da2 <= a2 + tolerance::kHolds)) throw UsageError("da2 must lie in [0, |a|^2]");
  const double theta = bloch_angle(a, b);
  const Span s = unit_vector_span(theta, std::min(1.0, da2 / a2));

  RunReport r;
  r.command = "compare";
  r.config = {{"state", opts.state_spec ? json(*opts.state_spec) : json(nullptr)},
              {"seed", opts.seed},
              {"a", opts.a_spec},
              {"b", opts.b_spec.value_or("n:(cos theta_ab, sin theta_ab, 0)")},
              {"theta_ab", opts.theta_ab},
              {"da2", opts.da2 ? json(*opts.da2) : json(nullptr)}};
  r.results = {{"purity", rho.purity()},
               {"bloch", std::vector<double>(rho.bloch().data(), rho.bloch().data() + rho.bloch().size())},
               {"dA2", dA2},
               {"dB2", dB2},
               {"robertson", verdict_to_json(robertson)},
               {"state_dependent", state_dependent},
               {"bloch_relation", verdict_to_json(bloch)},
               {"bloch_span",
                {{"theta_ab", theta},
                 {"dA2", da2},
                 {"dB_given_dA2", {bn * s.lo, bn * s.hi}},
                 {"dB_unconditional", {0.0, bn}}}}};
  r.worst_margin = bloch.margin;
  r.exit_code = exit_for(bloch.margin);
  r.wall_time = clock.seconds();
  return r;
}

}  // namespace blochur::cli
