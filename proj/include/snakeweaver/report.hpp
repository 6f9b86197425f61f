// Copyright 2026 The snakeweaver Authors
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

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "snakeweaver/lattice.hpp"

namespace snakeweaver {

struct CheckRecord {
  std::string id;
  std::vector<std::pair<std::string, Region>> regions;
  double residual = 0.0;
  double tol = 0.0;
  bool passed = true;
  // Residual is a certified upper bound rather than an exact value.
  bool upper_bound = false;
  std::string note;
};

class CheckReport {
 public:
  CheckReport() = default;
  explicit CheckReport(std::string name) : name_(std::move(name)) {}

  // Pass iff residual <= tol.
  CheckRecord& add(std::string id, std::vector<std::pair<std::string, Region>> regions,
                   double residual, double tol, bool upper_bound = false);
  // Pass/fail decided by the caller (e.g. geometric or hypothesis checks).
  CheckRecord& add_flag(std::string id, std::vector<std::pair<std::string, Region>> regions,
                        bool passed, std::string note = {});
  void append(const CheckReport& other);
  void warn(std::string message) { warnings_.push_back(std::move(message)); }

  const std::string& name() const { return name_; }
  const std::vector<CheckRecord>& records() const { return records_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  bool passed() const;
  std::size_t failures() const;
  double max_residual() const;
  // Record with the largest residual, or nullptr when empty.
  const CheckRecord* worst() const;

 private:
  std::string name_;
  std::vector<CheckRecord> records_;
  std::vector<std::string> warnings_;
};

}  // namespace snakeweaver
