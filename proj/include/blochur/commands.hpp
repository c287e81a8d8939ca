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

// Subcommands of the `blochur` tool as library calls. Each returns a
// RunReport whose config echo reproduces the run bit-identically (apart
// from wall_time).

#include <cstdint>
#include <numbers>
#include <optional>
#include <string>

#include <json.hpp>

#include "blochur/cli_io.hpp"
#include "blochur/fuzz.hpp"

namespace blochur::cli {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int { kExitOk = 0, kExitViolated = 1, kExitUsage = 2 };

struct RunReport {
  std::string command;
  nlohmann::json config;
  nlohmann::json results;
  double worst_margin = 0;
  double wall_time = 0;
  int exit_code = kExitOk;

  nlohmann::json to_json() const;
};

struct BasisOptions {
  int dim = 2;
  bool include_generators = true;
};
RunReport cmd_basis(const BasisOptions& opts);

struct VerifyOptions {
  std::string relation = "theorem1";
  int dim = 2;
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  double theta_ab = std::numbers::pi / 4;
  std::string mix = "any";  ///< pure | mixed | any
};
RunReport cmd_verify(const VerifyOptions& opts);

struct RegionOptions {
  std::string mode = "pair";  ///< pair | triple
  double theta_ab = std::numbers::pi / 2;
  std::size_t samples = 100000;
  double grid = 0.01;
  std::uint64_t seed = 0;
  std::string kind = "pure";  ///< pure | mixed | shell:<r>
  std::optional<double> slice_da2;
  /// Pair mode only; default A = sigma1, B = sigma.(cos t, sin t, 0).
  std::optional<std::string> a_spec;
  std::optional<std::string> b_spec;
  std::string csv_path;
  std::string json_path;
};

struct RegionRun {
  RunReport report;
  RegionScan scan;
};
RegionRun cmd_region(const RegionOptions& opts);

struct CompareOptions {
  std::optional<std::string> state_spec;  ///< otherwise a Haar-random pure state from `seed`
  std::uint64_t seed = 0;
  std::string a_spec = "sigma1";
  std::optional<std::string> b_spec;      ///< otherwise sigma.(cos t, sin t, 0)
  double theta_ab = std::numbers::pi / 2;
  std::optional<double> da2;              ///< dA^2 for the span; defaults to the state's
};
RunReport cmd_compare(const CompareOptions& opts);

}  // namespace blochur::cli
