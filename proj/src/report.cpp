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

#include "snakeweaver/report.hpp"

#include <algorithm>
#include <cmath>

namespace snakeweaver {

CheckRecord& CheckReport::add(std::string id, std::vector<std::pair<std::string, Region>> regions,
                              double residual, double tol, bool upper_bound) {
  CheckRecord r;
  r.id = std::move(id);
  r.regions = std::move(regions);
  r.residual = residual;
  r.tol = tol;
  r.passed = std::isfinite(residual) && residual <= tol;
  r.upper_bound = upper_bound;
  records_.push_back(std::move(r));
  return records_.back();
}

CheckRecord& CheckReport::add_flag(std::string id,
                                   std::vector<std::pair<std::string, Region>> regions,
                                   bool passed, std::string note) {
  CheckRecord r;
  r.id = std::move(id);
  r.regions = std::move(regions);
  r.residual = passed ? 0.0 : 1.0;
  r.tol = 0.0;
  r.passed = passed;
  r.note = std::move(note);
  records_.push_back(std::move(r));
  return records_.back();
}

void CheckReport::append(const CheckReport& other) {
  records_.insert(records_.end(), other.records_.begin(), other.records_.end());
  warnings_.insert(warnings_.end(), other.warnings_.begin(), other.warnings_.end());
}

bool CheckReport::passed() const { return failures() == 0; }

std::size_t CheckReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(records_.begin(), records_.end(), [](const CheckRecord& r) { return !r.passed; }));
}

double CheckReport::max_residual() const {
  double m = 0.0;
  for (const auto& r : records_) m = std::max(m, r.residual);
  return m;
}

const CheckRecord* CheckReport::worst() const {
  const CheckRecord* w = nullptr;
  for (const auto& r : records_) {
    if (!w || r.residual > w->residual) w = &r;
  }
  return w;
}

}  // namespace snakeweaver
