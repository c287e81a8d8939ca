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

// blochur: build SU(N) bases, fuzz variance relations, scan feasible
// variance regions and compare uncertainty bounds.
//
// Exit codes: 0 success, 1 relation violated, 2 usage error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

#include "blochur/commands.hpp"

namespace {

using blochur::cli::RunReport;

int emit(const RunReport& report, const std::string& out_path) {
  const std::string text = report.to_json().dump(2) + "\n";
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw blochur::cli::UsageError("cannot write " + out_path);
    out << text;
  }
  return report.exit_code;
}

void print_basis_text(const RunReport& report) {
  const auto& r = report.results;
  std::cout << "SU(" << r["dim"].get<int>() << "): " << r["count"].get<int>() << " generators\n";
  for (const char* tensor : {"f", "d"}) {
    std::cout << tensor << " (" << r[tensor].size() << " independent nonzero entries, 1-based)\n";
    for (const auto& e : r[tensor])
      std::cout << "  " << tensor << "_" << e["j"].get<int>() << "," << e["k"].get<int>() << "," << e["l"].get<int>()
                << " = " << e["value"].get<double>() << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bloch-vector variance relations: bases, verification, regions and bound comparison"};
  app.require_subcommand(1);
  std::string out_path;

  blochur::cli::BasisOptions basis_opts;
  std::string basis_format = "json";
  auto* basis = app.add_subcommand("basis", "Generalized Gell-Mann generators with sparse f and d tensors");
  basis->add_option("--dim", basis_opts.dim, "Hilbert-space dimension N (2..8)")->required();
  basis->add_option("--format", basis_format, "json or text")->check(CLI::IsMember({"json", "text"}));
  basis->add_option("--out", out_path, "Write the report here instead of stdout");

  int consts_dim = 2;
  auto* consts = app.add_subcommand("structure-consts", "Sparse f and d tensors only");
  consts->add_option("--dim", consts_dim, "Hilbert-space dimension N (2..8)")->required();
  consts->add_option("--out", out_path, "Write the report here instead of stdout");

  blochur::cli::VerifyOptions verify_opts;
  auto* verify = app.add_subcommand("verify", "Fuzz a relation over random states and observables");
  verify->add_option("relation", verify_opts.relation,
                     "triangle | theorem1 | mixed-limit | pure-limit | unit-vector | three-obs-equality | "
                     "appendix-b | appendix-c | robertson | state-dependent")
      ->required();
  verify->add_option("--dim", verify_opts.dim, "Hilbert-space dimension N");
  verify->add_option("--samples", verify_opts.samples, "Number of evaluated draws");
  verify->add_option("--seed", verify_opts.seed, "RNG seed");
  verify->add_option("--theta-ab", verify_opts.theta_ab, "Angle of B in radians (three-obs-equality)");
  verify->add_option("--mix", verify_opts.mix, "State ensemble: pure, mixed or any");
  verify->add_option("--out", out_path, "Write the report here instead of stdout");

  blochur::cli::RegionOptions region_opts;
  std::string a_spec, b_spec;
  double slice = 0;
  auto* region = app.add_subcommand("region", "Scan the feasible variance region of a pair or triple");
  region->add_option("mode", region_opts.mode, "pair or triple")->required();
  region->add_option("--theta-ab", region_opts.theta_ab, "Angle between A and B in radians, in [0, pi]");
  region->add_option("--samples", region_opts.samples, "Number of sampled states");
  region->add_option("--grid", region_opts.grid, "Occupancy cell size in squared-variance units");
  region->add_option("--seed", region_opts.seed, "RNG seed");
  region->add_option("--kind", region_opts.kind, "pure, mixed, shell:<r> or rank:<k>");
  auto* slice_opt = region->add_option("--slice-da2", slice, "Report the dB range at this dA^2");
  auto* a_opt = region->add_option("--a", a_spec, "Observable A (pair mode)");
  auto* b_opt = region->add_option("--b", b_spec, "Observable B (pair mode)");
  region->add_option("--csv", region_opts.csv_path, "Per-sample CSV output");
  region->add_option("--json", region_opts.json_path, "Occupancy JSON output");
  region->add_option("--out", out_path, "Write the report here instead of stdout");

  blochur::cli::CompareOptions compare_opts;
  std::string state_spec, cmp_b;
  double da2 = 0;
  auto* compare = app.add_subcommand("compare", "Robertson, state-dependent and Bloch bounds for one qubit state");
  auto* state_opt = compare->add_option("--state", state_spec, "ket0 | ket1 | plus | minus | mixed | bloch:(x,y,z) | @file");
  compare->add_option("--seed", compare_opts.seed, "Seed of the random pure state used without --state");
  compare->add_option("--a", compare_opts.a_spec, "Observable A");
  auto* cmp_b_opt = compare->add_option("--b", cmp_b, "Observable B (default n:(cos t, sin t, 0))");
  compare->add_option("--theta-ab", compare_opts.theta_ab, "Angle of the default B in radians");
  auto* da2_opt = compare->add_option("--da2", da2, "dA^2 at which to report the dB span");
  compare->add_option("--out", out_path, "Write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return blochur::cli::kExitUsage;
  }

  try {
    if (*basis) {
      const RunReport r = blochur::cli::cmd_basis(basis_opts);
      if (basis_format == "text") {
        print_basis_text(r);
        return r.exit_code;
      }
      return emit(r, out_path);
    }
    if (*consts) return emit(blochur::cli::cmd_basis({consts_dim, false}), out_path);
    if (*verify) return emit(blochur::cli::cmd_verify(verify_opts), out_path);
    if (*region) {
      if (*slice_opt) region_opts.slice_da2 = slice;
      if (*a_opt) region_opts.a_spec = a_spec;
      if (*b_opt) region_opts.b_spec = b_spec;
      return emit(blochur::cli::cmd_region(region_opts).report, out_path);
    }
    if (*compare) {
      if (*state_opt) compare_opts.state_spec = state_spec;
      if (*cmp_b_opt) compare_opts.b_spec = cmp_b;
      if (*da2_opt) compare_opts.da2 = da2;
      return emit(blochur::cli::cmd_compare(compare_opts), out_path);
    }
  } catch (const blochur::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return blochur::cli::kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return blochur::cli::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return blochur::cli::kExitViolated;
  }
  return blochur::cli::kExitUsage;
}
