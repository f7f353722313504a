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

// JSON file formats.
//
//   matrix:      {"rows": m, "cols": n, "data": [[re, im], ...]}   row-major
//   procrustes:  {"pairs": [{"phi": [[re, im], ...], "psi": [...]}, ...]}
//   pgm:         {"states": [[[re, im], ...], ...], "rho": <matrix>}   rho optional
//
// A matrix file may carry an integer "split" field for split Hamiltonians.

#ifndef QPOLAR_CLI_MATRIX_IO_HPP_
#define QPOLAR_CLI_MATRIX_IO_HPP_

#include <optional>
#include <stdexcept>
#include <string>

#include "qpolar/matrix.hpp"
#include "qpolar/pgm.hpp"
#include "qpolar/procrustes.hpp"

namespace qpolar::cli {

enum ExitCode : int {
  kExitPass = 0,
  kExitVerdictFailure = 1,
  kExitUsage = 2,
  kExitUnreadableFile = 3,
  kExitMalformedInput = 4,
  kExitInvalidValue = 5,
};

class CliError : public std::runtime_error {
 public:
  CliError(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ExitCode code() const { return code_; }

 private:
  ExitCode code_;
};

struct MatrixFile {
  ComplexMatrix matrix;
  std::optional<std::size_t> split;
};

struct PGMFile {
  PGMInstance instance;
  std::optional<ComplexMatrix> rho;
};

/// All readers throw CliError with kExitUnreadableFile or kExitMalformedInput.
MatrixFile read_matrix_file(const std::string& path);
ProcrustesInstance read_procrustes_file(const std::string& path);
PGMFile read_pgm_file(const std::string& path);

std::string matrix_json(const ComplexMatrix& m, std::optional<std::size_t> split = {});
std::string procrustes_json(const ProcrustesInstance& inst);
std::string pgm_json(const PGMInstance& inst, const std::optional<ComplexMatrix>& rho = {});
/// [[re, im], ...] on one line.
std::string vector_json(std::span<const cplx> v);

/// Writes text to path; throws CliError(kExitUnreadableFile) on failure.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace qpolar::cli

#endif  // QPOLAR_CLI_MATRIX_IO_HPP_
