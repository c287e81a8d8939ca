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

// Text and file formats of the command-line tool.
//
// Matrix JSON:   {"dim": N, "re": [N*N row-major], "im": [N*N row-major]}
//                ("im" may be omitted for real matrices).
// Observables:   sigma1 | sigma2 | sigma3 | n:(x,y,z) | @path/to/matrix.json
// States:        ket0 | ket1 | plus | minus | mixed | bloch:(x,y,z) | @path/to/matrix.json
// Region CSV:    sample_index,purity,dA2,dB2[,dC2],margin  (UTF-8, LF)

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "blochur/regions.hpp"

namespace blochur::cli {

/// Malformed command-line input; maps to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

HermitianMatrix<double> parse_matrix_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const ComplexMatrix<double>& m);

Obs parse_observable(std::string_view spec, const Basis& basis);
State parse_state(std::string_view spec, const Basis& basis);

nlohmann::json basis_to_json(const Basis& basis, bool include_generators);
nlohmann::json verdict_to_json(const RelationVerdict& v);

void write_region_csv(std::ostream& out, const RegionScan& scan);
/// Metadata, occupancy (shape, cell, run lengths) and the analytic boundary.
nlohmann::json region_to_json(const RegionScan& scan);

}  // namespace blochur::cli
