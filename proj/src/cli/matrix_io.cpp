// Copyright 2026 The qpolar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qpolar/cli/matrix_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qpolar::cli {

namespace {

using nlohmann::json;

[[noreturn]] void malformed(const std::string& path, const std::string& why) {
  throw CliError(kExitMalformedInput, path + ": " + why);
}

json load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError(kExitUnreadableFile, path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    malformed(path, std::string("invalid JSON (") + e.what() + ")");
  }
}

double number(const json& j, const std::string& path, const std::string& where) {
  if (!j.is_number()) malformed(path, where + " is not a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) malformed(path, where + " is not finite");
  return v;
}

cplx complex_entry(const json& j, const std::string& path, const std::string& where) {
  if (!j.is_array() || j.size() != 2) malformed(path, where + " must be a [re, im] pair");
  return {number(j[0], path, where + ".re"), number(j[1], path, where + ".im")};
}

Vector vector_entry(const json& j, const std::string& path, const std::string& where) {
  if (!j.is_array() || j.empty()) malformed(path, where + " must be a non-empty array");
  Vector v;
  for (std::size_t i = 0; i < j.size(); ++i) {
    v.push_back(complex_entry(j[i], path, where + "[" + std::to_string(i) + "]"));
  }
  return v;
}

std::size_t count_field(const json& j, const char* key, const std::string& path) {
  if (!j.contains(key)) malformed(path, std::string("missing field \"") + key + "\"");
  const json& v = j[key];
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    malformed(path, std::string("field \"") + key + "\" must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

ComplexMatrix matrix_entry(const json& j, const std::string& path) {
  if (!j.is_object()) malformed(path, "matrix must be a JSON object");
  const std::size_t rows = count_field(j, "rows", path);
  const std::size_t cols = count_field(j, "cols", path);
  if (rows == 0 || cols == 0) malformed(path, "matrix has a zero dimension");
  if (!j.contains("data") || !j["data"].is_array()) malformed(path, "missing \"data\" array");
  const json& data = j["data"];
  if (data.size() != rows * cols) {
    malformed(path, "data has " + std::to_string(data.size()) + " entries, expected " +
                        std::to_string(rows * cols));
  }
  std::vector<cplx> entries;
  entries.reserve(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    entries.push_back(complex_entry(data[i], path, "data[" + std::to_string(i) + "]"));
  }
  return ComplexMatrix(rows, cols, std::move(entries));
}

json to_json(std::span<const cplx> v) {
  json arr = json::array();
  for (const cplx& z : v) arr.push_back({z.real(), z.imag()});
  return arr;
}

json to_json(const ComplexMatrix& m) {
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", to_json(m.entries())}};
}

}  // namespace

MatrixFile read_matrix_file(const std::string& path) {
  const json j = load(path);
  MatrixFile out{matrix_entry(j, path), std::nullopt};
  if (j.contains("split")) out.split = count_field(j, "split", path);
  return out;
}

ProcrustesInstance read_procrustes_file(const std::string& path) {
  const json j = load(path);
  if (!j.is_object() || !j.contains("pairs") || !j["pairs"].is_array()) {
    malformed(path, "missing \"pairs\" array");
  }
  std::vector<StatePair> pairs;
  for (std::size_t i = 0; i < j["pairs"].size(); ++i) {
    const json& p = j["pairs"][i];
    const std::string where = "pairs[" + std::to_string(i) + "]";
    if (!p.is_object() || !p.contains("phi") || !p.contains("psi")) {
      malformed(path, where + " needs \"phi\" and \"psi\"");
    }
    pairs.push_back({vector_entry(p["phi"], path, where + ".phi"),
                     vector_entry(p["psi"], path, where + ".psi")});
  }
  try {
    return ProcrustesInstance(std::move(pairs));
  } catch (const std::invalid_argument& e) {
    malformed(path, e.what());
  }
}

PGMFile read_pgm_file(const std::string& path) {
  const json j = load(path);
  if (!j.is_object() || !j.contains("states") || !j["states"].is_array()) {
    malformed(path, "missing \"states\" array");
  }
  std::vector<Vector> states;
  for (std::size_t i = 0; i < j["states"].size(); ++i) {
    states.push_back(vector_entry(j["states"][i], path, "states[" + std::to_string(i) + "]"));
  }
  std::optional<ComplexMatrix> rho;
  if (j.contains("rho")) rho = matrix_entry(j["rho"], path);
  try {
    return {PGMInstance(std::move(states)), std::move(rho)};
  } catch (const std::invalid_argument& e) {
    malformed(path, e.what());
  }
}

std::string matrix_json(const ComplexMatrix& m, std::optional<std::size_t> split) {
  json j = to_json(m);
  if (split) j["split"] = *split;
  return j.dump(1) + "\n";
}

std::string procrustes_json(const ProcrustesInstance& inst) {
  json pairs = json::array();
  for (const auto& p : inst.pairs()) pairs.push_back({{"phi", to_json(p.phi)}, {"psi", to_json(p.psi)}});
  return json{{"pairs", pairs}}.dump(1) + "\n";
}

std::string pgm_json(const PGMInstance& inst, const std::optional<ComplexMatrix>& rho) {
  json states = json::array();
  for (const auto& s : inst.states()) states.push_back(to_json(s));
  json j{{"states", states}};
  if (rho) j["rho"] = to_json(*rho);
  return j.dump(1) + "\n";
}

std::string vector_json(std::span<const cplx> v) { return to_json(v).dump(); }

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliError(kExitUnreadableFile, path + ": cannot open for writing");
  out << text;
  if (!out) throw CliError(kExitUnreadableFile, path + ": write failed");
}

}  // namespace qpolar::cli
