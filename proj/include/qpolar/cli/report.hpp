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

// Key = value run report. Sections appear in a fixed order and keys keep
// insertion order. Doubles are printed in shortest round-trip form, so a
// report is bit-for-bit reproducible; wall-clock numbers live only in the
// trailing [timings] section.

#ifndef QPOLAR_CLI_REPORT_HPP_
#define QPOLAR_CLI_REPORT_HPP_

#include <string>
#include <utility>
#include <vector>

namespace qpolar::cli {

std::string format_double(double v);

class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  void config(const std::string& key, const std::string& value);
  void config(const std::string& key, double value);
  void metric(const std::string& key, double value);
  void metric(const std::string& key, const std::string& value);
  void verdict(const std::string& key, bool pass);
  void timing(const std::string& key, double seconds);

  /// Appends another report's metrics and verdicts with keys prefixed.
  void merge(const std::string& prefix, const Report& other);

  bool passed() const;
  const std::string& command() const { return command_; }
  const std::vector<std::pair<std::string, bool>>& verdicts() const { return verdicts_; }

  std::string render(bool with_timings = true) const;

 private:
  using Entries = std::vector<std::pair<std::string, std::string>>;

  std::string command_;
  Entries config_;
  Entries metrics_;
  std::vector<std::pair<std::string, bool>> verdicts_;
  Entries timings_;
};

/// Drops the [timings] section from a rendered report.
std::string strip_timings(const std::string& rendered);

}  // namespace qpolar::cli

#endif  // QPOLAR_CLI_REPORT_HPP_
