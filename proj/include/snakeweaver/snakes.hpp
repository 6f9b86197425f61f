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

#include <string>
#include <vector>

#include "snakeweaver/marginal_store.hpp"
#include "snakeweaver/merge.hpp"
#include "snakeweaver/report.hpp"

namespace snakeweaver {

enum class SnakeVariant { plain, flat_up, flat_down, hooked_up, hooked_down };
enum class BuildOrder { forward, reversed };

std::string to_string(SnakeVariant v);
std::string to_string(BuildOrder o);
SnakeVariant parse_snake_variant(const std::string& s);
BuildOrder parse_build_order(const std::string& s);

struct SnakeSpec {
  int level = 1;
  Vertex v;  // left end, bottom row
  Vertex u;  // right end, bottom row
  SnakeVariant variant = SnakeVariant::plain;
  BuildOrder order = BuildOrder::forward;

  // Throws GeometryError unless v.y == u.y, v.x < u.x - 1, and the variant
  // fits the level.
  void validate() const;
  friend bool operator==(const SnakeSpec&, const SnakeSpec&) = default;
};

// Regions of a merge product: initial support, then one region per factor.
struct MergePlan {
  Region initial;
  std::vector<Region> factors;

  Region support() const;
};

MergePlan snake_plan(const SnakeSpec& spec);

// Merge product of derived marginals over snake_plan(spec).
DensityOperator build_snake(const MarginalSet& ms, const SnakeSpec& spec, double tol = 1e-8);

// Plain variants only: for consecutive factors, their overlap distance, the
// CMI of the derived three-column marginal across the shared column, and the
// distance between the pairwise merge and that marginal; plus support
// disjointness of non-consecutive factors.
CheckReport verify_is_snake(const MarginalSet& ms, const SnakeSpec& spec, double tol = 1e-8,
                            LogBase base = LogBase::two);

// snake(v,t) against both merge orders of snake(v,u) and snake(u,t).
CheckReport split_check(const MarginalSet& ms, int level, const Vertex& v, const Vertex& u,
                        const Vertex& t, double tol = 1e-7);

// MED over the column path of the snake support, from derived marginals.
double snake_entropy_med(const MarginalSet& ms, const SnakeSpec& spec, LogBase base = LogBase::two);

// Level-2 snakes on rows (v.y, v.y+1) and (v.y-1, v.y) both reduce to the
// level-1 snake on row v.y. The second identity is skipped when v.y == 0.
CheckReport level_drop_check(const MarginalSet& ms, const Vertex& v, const Vertex& u,
                             double tol = 1e-7);

}  // namespace snakeweaver
