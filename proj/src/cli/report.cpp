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

#include "qpolar/cli/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace qpolar::cli {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void Report::config(const std::string& key, const std::string& value) {
  config_.emplace_back(key, value);
}

void Report::config(const std::string& key, double value) {
  config_.emplace_back(key, format_double(value));
}

void Report::metric(const std::string& key, double value) {
  metrics_.emplace_back(key, format_double(value));
}

void Report::metric(const std::string& key, const std::string& value) {
  metrics_.emplace_back(key, value);
}

void Report::verdict(const std::string& key, bool pass) { verdicts_.emplace_back(key, pass); }

void Report::timing(const std::string& key, double seconds) {
  timings_.emplace_back(key, format_double(seconds));
}

void Report::merge(const std::string& prefix, const Report& other) {
  for (const auto& [k, v] : other.metrics_) metrics_.emplace_back(prefix + k, v);
  for (const auto& [k, v] : other.verdicts_) verdicts_.emplace_back(prefix + k, v);
  for (const auto& [k, v] : other.timings_) timings_.emplace_back(prefix + k, v);
}

bool Report::passed() const {
  for (const auto& [k, v] : verdicts_) {
    if (!v) return false;
  }
  return true;
}

std::string Report::render(bool with_timings) const {
  std::ostringstream out;
  out << "# qpolar report\n";
  out << "command = " << command_ << "\n";
  out << "\n[config]\n";
  for (const auto& [k, v] : config_) out << k << " = " << v << "\n";
  out << "\n[metrics]\n";
  for (const auto& [k, v] : metrics_) out << k << " = " << v << "\n";
  out << "\n[verdicts]\n";
  for (const auto& [k, v] : verdicts_) out << k << " = " << (v ? "pass" : "FAIL") << "\n";
  out << "overall = " << (passed() ? "pass" : "FAIL") << "\n";
  if (with_timings) {
    out << "\n[timings]\n";
    for (const auto& [k, v] : timings_) out << k << " = " << v << "\n";
  }
  return out.str();
}

std::string strip_timings(const std::string& rendered) {
  const auto pos = rendered.find("\n[timings]\n");
  return pos == std::string::npos ? rendered : rendered.substr(0, pos);
}

}  // namespace qpolar::cli
