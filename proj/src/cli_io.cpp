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

#include "blochur/cli_io.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <regex>
#include <string>

namespace blochur::cli {

using nlohmann::json;

namespace {

std::vector<double> number_array(const json& j, const char* key, std::size_t expected) {
  if (!j.contains(key)) {
    if (std::string(key) == "im") return std::vector<double>(expected, 0.0);
    throw UsageError(std::string("matrix JSON lacks \"") + key + "\"");
  }
  const json& arr = j.at(key);
  if (!arr.is_array() || arr.size() != expected)
    throw UsageError(std::string("matrix JSON \"") + key + "\" must hold " + std::to_string(expected) + " numbers");
  std::vector<double> out;
  out.reserve(expected);
  for (const json& v : arr) {
    if (!v.is_number()) throw UsageError(std::string("matrix JSON \"") + key + "\" has a non-number entry");
    out.push_back(v.get<double>());
  }
  return out;
}

json load_json_file(std::string_view path) {
  std::ifstream in{std::string(path)};
  if (!in) throw UsageError("cannot open " + std::string(path));
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string(path) + ": " + e.what());
  }
}

/// Parses "name:(x,y,z)" with optional whitespace; nullopt if `prefix` differs.
std::optional<std::array<double, 3>> triple_after(std::string_view spec, std::string_view prefix) {
  if (spec.substr(0, prefix.size()) != prefix) return std::nullopt;
  static const std::regex re(
      R"(^\(\s*([-+0-9.eE]+)\s*,\s*([-+0-9.eE]+)\s*,\s*([-+0-9.eE]+)\s*\)$)");
  const std::string rest(spec.substr(prefix.size()));
  std::smatch m;
  if (!std::regex_match(rest, m, re)) throw UsageError("expected " + std::string(prefix) + "(x,y,z), got " + std::string(spec));
  std::array<double, 3> v{};
  for (int i = 0; i < 3; ++i) {
    try {
      std::size_t used = 0;
      const std::string s = m[i + 1].str();
      v[static_cast<std::size_t>(i)] = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
    } catch (const std::exception&) {
      throw UsageError("bad number in " + std::string(spec));
    }
  }
  return v;
}

void require_qubit(const Basis& basis, std::string_view spec) {
  if (basis.dim() != 2) throw UsageError("'" + std::string(spec) + "' names a qubit operator; use @file.json for N > 2");
}

}  // namespace

HermitianMatrix<double> parse_matrix_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.at("dim").is_number_integer())
    throw UsageError("matrix JSON needs an integer \"dim\"");
  const long long dim = j.at("dim").get<long long>();
  if (dim < 1 || dim > 64) throw UsageError("matrix JSON \"dim\" out of range");
  const auto n = static_cast<std::size_t>(dim * dim);
  const std::vector<double> re = number_array(j, "re", n);
  const std::vector<double> im = number_array(j, "im", n);
  std::vector<Complex<double>> entries(n);
  for (std::size_t i = 0; i < n; ++i) entries[i] = {re[i], im[i]};
  try {
    return HermitianMatrix<double>(ComplexMatrix<double>::from_row_major(dim, entries).matrix());
  } catch (const NotHermitian& e) {
    throw UsageError(e.what());
  }
}

json matrix_to_json(const ComplexMatrix<double>& m) {
  json re = json::array(), im = json::array();
  for (const auto& z : m.row_major()) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  return {{"dim", m.dim()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

Obs parse_observable(std::string_view spec, const Basis& basis) {
  if (spec.starts_with("@")) return Obs::from_matrix(parse_matrix_json(load_json_file(spec.substr(1))), basis);
  if (spec == "sigma1" || spec == "sigma2" || spec == "sigma3") {
    require_qubit(basis, spec);
    const int axis = spec.back() - '1';
    return pauli_observable(axis == 0, axis == 1, axis == 2);
  }
  if (auto n = triple_after(spec, "n:")) {
    require_qubit(basis, spec);
    return pauli_observable((*n)[0], (*n)[1], (*n)[2]);
  }
  throw UsageError("unknown observable '" + std::string(spec) + "'");
}

State parse_state(std::string_view spec, const Basis& basis) {
  if (spec.starts_with("@")) {
    try {
      return State::from_matrix(parse_matrix_json(load_json_file(spec.substr(1))), basis);
    } catch (const UnphysicalState& e) {
      throw UsageError(e.what());
    }
  }
  if (spec == "mixed") return State::from_bloch(RVector<double>::Zero(basis.size()), basis);
  require_qubit(basis, spec);
  if (spec == "ket0") return qubit_state(0, 0, 1);
  if (spec == "ket1") return qubit_state(0, 0, -1);
  if (spec == "plus") return qubit_state(1, 0, 0);
  if (spec == "minus") return qubit_state(-1, 0, 0);
  if (auto p = triple_after(spec, "bloch:")) {
    try {
      return qubit_state((*p)[0], (*p)[1], (*p)[2]);
    } catch (const UnphysicalState& e) {
      throw UsageError(e.what());
    }
  }
  throw UsageError("unknown state '" + std::string(spec) + "'");
}

json basis_to_json(const Basis& basis, bool include_generators) {
  auto entries = [](const auto& map) {
    json out = json::array();
    for (const auto& [key, value] : map)
      out.push_back({{"j", key[0] + 1}, {"k", key[1] + 1}, {"l", key[2] + 1}, {"value", value}});
    return out;
  };
  json j = {{"dim", basis.dim()},
            {"count", basis.size()},
            {"index_base", 1},
            {"f", entries(basis.f_entries())},
            {"d", entries(basis.d_entries())}};
  if (include_generators) {
    json gens = json::array();
    for (const auto& g : basis.generators()) gens.push_back(matrix_to_json(g));
    j["generators"] = std::move(gens);
  }
  return j;
}

json verdict_to_json(const RelationVerdict& v) {
  return {{"relation", std::string(relation_name(v.id))},
          {"lhs", v.lhs},
          {"rhs", v.rhs},
          {"margin", v.margin},
          {"holds", v.holds},
          {"saturated", v.saturated}};
}

void write_region_csv(std::ostream& out, const RegionScan& scan) {
  const bool triple = scan.dims() == 3;
  out << "sample_index,purity,dA2,dB2" << (triple ? ",dC2" : "") << ",margin\n";
  out.precision(17);
  for (const auto& s : scan.samples) {
    out << s.index << ',' << s.purity << ',' << s.variances[0] << ',' << s.variances[1];
    if (triple) out << ',' << s.variances[2];
    out << ',' << s.margin << '\n';
  }
}

json region_to_json(const RegionScan& scan) {
  const Occupancy& occ = scan.occupancy;
  json j = {{"axes", scan.axes},
            {"governing_relation", scan.governing},
            {"grid", scan.grid},
            {"samples", scan.samples.size()},
            {"worst_margin", scan.worst_margin},
            {"max_residual", scan.max_residual},
            {"occupancy",
             {{"shape", occ.shape()},
              {"extent", occ.extents()},
              {"cell", occ.cell()},
              {"occupied_cells", occ.count()},
              {"rle", occ.run_lengths()}}}};
  json boundary = json::array();
  for (const auto& pt : scan.boundary) boundary.push_back({pt[0], pt[1]});
  j["boundary"] = std::move(boundary);
  return j;
}

}  // namespace blochur::cli
