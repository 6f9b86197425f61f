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

#include "snakeweaver/snakes.hpp"

#include <cmath>

#include "snakeweaver/errors.hpp"

namespace snakeweaver {
namespace {

Region block(int x, int y, int w, int h) { return cluster_region({x, y}, w, h); }

MergePlan plain_plan(int level, const Vertex& v, const Vertex& u, BuildOrder order) {
  const int n = u.x - v.x;
  MergePlan p;
  if (order == BuildOrder::forward) {
    p.initial = block(v.x + 1, v.y, 2, level);
    for (int i = 2; i <= n; ++i) p.factors.push_back(block(v.x + i, v.y, 2, level));
  } else {
    p.initial = block(u.x, v.y, 2, level);
    for (int i = 1; i <= n - 1; ++i) p.factors.push_back(block(u.x - i, v.y, 2, level));
  }
  return p;
}

MergePlan hooked_up_plan(int level, const Vertex& v, const Vertex& u) {
  const int n = u.x - v.x;
  MergePlan p;
  if (level == 2) {
    p.initial = Region{v, v + kEx, v + kEy};
    for (int i = 2; i <= n; ++i) p.factors.push_back(block(v.x + i, v.y, 2, 1));
    for (int i = 1; i <= n; ++i) p.factors.push_back(block(v.x + i, v.y, 2, 2));
  } else {
    p.initial = Region{v, v + kEx, v + kEy, v + kEx + kEy, v + kEy + kEy};
    for (int i = 2; i <= n; ++i) p.factors.push_back(block(v.x + i, v.y, 2, 2));
    for (int i = 1; i <= n; ++i) p.factors.push_back(block(v.x + i, v.y + 1, 2, 2));
  }
  return p;
}

Region rotate_in_box(const Region& r, const Vertex& v, const Vertex& u, int level) {
  std::vector<Vertex> out;
  for (const auto& s : r) out.push_back({v.x + u.x - s.x, 2 * v.y + level - 1 - s.y});
  return Region(std::move(out));
}

Region row_segment(int x0, int x1, int y) { return block(x1, y, x1 - x0 + 1, 1); }

}  // namespace

std::string to_string(SnakeVariant v) {
  switch (v) {
    case SnakeVariant::plain: return "plain";
    case SnakeVariant::flat_up: return "flat_up";
    case SnakeVariant::flat_down: return "flat_down";
    case SnakeVariant::hooked_up: return "hooked_up";
    case SnakeVariant::hooked_down: return "hooked_down";
  }
  return "plain";
}

std::string to_string(BuildOrder o) { return o == BuildOrder::forward ? "forward" : "reversed"; }

SnakeVariant parse_snake_variant(const std::string& s) {
  for (auto v : {SnakeVariant::plain, SnakeVariant::flat_up, SnakeVariant::flat_down,
                 SnakeVariant::hooked_up, SnakeVariant::hooked_down}) {
    if (to_string(v) == s) return v;
  }
  throw FormatError("unknown snake variant '" + s + "'");
}

BuildOrder parse_build_order(const std::string& s) {
  if (s == "forward") return BuildOrder::forward;
  if (s == "reversed") return BuildOrder::reversed;
  throw FormatError("unknown build order '" + s + "'");
}

void SnakeSpec::validate() const {
  if (level < 1 || level > 3) throw GeometryError("snake level must be 1, 2 or 3");
  if (v.y != u.y) throw GeometryError("snake ends must share a row");
  if (!(v.x < u.x - 1)) throw GeometryError("snake needs v.x < u.x - 1");
  if (variant != SnakeVariant::plain && level == 1) {
    throw GeometryError("flat and hooked diagrams need level 2 or 3");
  }
  if ((variant == SnakeVariant::hooked_up || variant == SnakeVariant::hooked_down) &&
      order == BuildOrder::reversed) {
    throw GeometryError("hooked diagrams have a single build order");
  }
}

Region MergePlan::support() const {
  Region s = initial;
  for (const auto& f : factors) s = s.unite(f);
  return s;
}

MergePlan snake_plan(const SnakeSpec& spec) {
  spec.validate();
  const int n = spec.u.x - spec.v.x;
  const int level = spec.level;
  switch (spec.variant) {
    case SnakeVariant::plain:
      return plain_plan(level, spec.v, spec.u, spec.order);
    case SnakeVariant::flat_up: {
      MergePlan p = plain_plan(level - 1, spec.v, spec.u, spec.order);
      for (int i = 1; i <= n; ++i) p.factors.push_back(block(spec.v.x + i, spec.v.y + level - 2, 2, 2));
      return p;
    }
    case SnakeVariant::flat_down: {
      MergePlan p = plain_plan(level - 1, spec.v + kEy, spec.u + kEy, spec.order);
      for (int i = 0; i <= n - 1; ++i) p.factors.push_back(block(spec.u.x - i, spec.v.y, 2, 2));
      return p;
    }
    case SnakeVariant::hooked_up:
      return hooked_up_plan(level, spec.v, spec.u);
    case SnakeVariant::hooked_down: {
      MergePlan up = hooked_up_plan(level, spec.v, spec.u);
      MergePlan p;
      p.initial = rotate_in_box(up.initial, spec.v, spec.u, level);
      for (const auto& f : up.factors) p.factors.push_back(rotate_in_box(f, spec.v, spec.u, level));
      return p;
    }
  }
  throw GeometryError("unknown snake variant");
}

DensityOperator build_snake(const MarginalSet& ms, const SnakeSpec& spec, double tol) {
  const MergePlan plan = snake_plan(spec);
  const Region support = plan.support();
  try {
    guarded_dimension(ms.local_dim(), support.size());
  } catch (const DimensionGuardError& e) {
    const double per_column = spec.level * std::log(static_cast<double>(ms.local_dim()));
    const int max_span = static_cast<int>(std::floor(std::log(static_cast<double>(dense_guard())) / per_column + 1e-9));
    throw DimensionGuardError(std::string(e.what()) + "; the maximal span at level " +
                              std::to_string(spec.level) + " is " + std::to_string(max_span) +
                              " columns");
  }
  MergeExpression expr{ms.derived_marginal(plan.initial, tol), {}};
  for (const auto& f : plan.factors) expr.factors.push_back(ms.derived_marginal(f, tol));
  return merge_product(expr);
}

CheckReport verify_is_snake(const MarginalSet& ms, const SnakeSpec& spec, double tol, LogBase base) {
  if (spec.variant != SnakeVariant::plain) {
    throw GeometryError("snake axioms are defined for plain merge products");
  }
  const MergePlan plan = snake_plan(spec);
  std::vector<Region> parts{plan.initial};
  parts.insert(parts.end(), plan.factors.begin(), plan.factors.end());
  CheckReport report("is_snake");
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    const std::string tag = "snake/" + std::to_string(i) + "-" + std::to_string(i + 1);
    const Region overlap = parts[i].intersect(parts[i + 1]);
    if (overlap.empty()) {
      report.add_flag(tag + "/overlap", {{"first", parts[i]}, {"second", parts[i + 1]}}, false,
                      "consecutive factors do not overlap");
      continue;
    }
    const DensityOperator a = ms.derived_marginal(parts[i], tol);
    const DensityOperator b = ms.derived_marginal(parts[i + 1], tol);
    report.add(tag + "/overlap", {{"overlap", overlap}},
               trace_distance(partial_trace(a, overlap), partial_trace(b, overlap)), tol);
    const Region left = parts[i].minus(overlap);
    const Region right = parts[i + 1].minus(overlap);
    const DensityOperator joint = ms.derived_marginal(parts[i].unite(parts[i + 1]), tol);
    report.add(tag + "/cmi", {{"A", left}, {"B", overlap}, {"C", right}},
               cmi(joint, left, overlap, right, base), tol);
    report.add(tag + "/merge", {{"support", joint.region()}},
               trace_distance(right_merge(a, b), joint), tol);
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t j = i + 2; j < parts.size(); ++j) {
      if (parts[i].intersects(parts[j])) {
        report.add_flag("snake/" + std::to_string(i) + "-" + std::to_string(j) + "/disjoint",
                        {{"first", parts[i]}, {"second", parts[j]}}, false,
                        "non-consecutive factors overlap");
      }
    }
  }
  return report;
}

CheckReport split_check(const MarginalSet& ms, int level, const Vertex& v, const Vertex& u,
                        const Vertex& t, double tol) {
  if (v.y != u.y || u.y != t.y || !(v.x < u.x - 1) || !(u.x < t.x - 1)) {
    throw GeometryError("split needs v, u, t on one row with gaps of at least two");
  }
  const DensityOperator whole = build_snake(ms, {level, v, t});
  const DensityOperator left = build_snake(ms, {level, v, u});
  const DensityOperator right = build_snake(ms, {level, u, t});
  CheckReport report("split");
  auto record = [&](const std::string& id, const DensityOperator& merged) {
    const auto d = trace_distance_within(whole, merged, tol);
    report.add(id, {{"support", whole.region()}}, d.value, tol, d.upper_bound);
  };
  record("split/left_then_right", right_merge(left, right));
  record("split/right_then_left", right_merge(right, left));
  return report;
}

double snake_entropy_med(const MarginalSet& ms, const SnakeSpec& spec, LogBase base) {
  spec.validate();
  MarginalSetEntropyProvider provider(ms);
  return med(provider, BlockPath::columns(spec.v.x, spec.u.x, spec.v.y, spec.v.y + spec.level - 1),
             base);
}

CheckReport level_drop_check(const MarginalSet& ms, const Vertex& v, const Vertex& u, double tol) {
  const DensityOperator one = build_snake(ms, {1, v, u});
  const Region row = row_segment(v.x, u.x, v.y);
  CheckReport report("level_drop");
  const DensityOperator up = build_snake(ms, {2, v, u});
  report.add("level_drop/trace_top", {{"row", row}}, trace_distance(partial_trace(up, row), one), tol);
  if (v.y >= 1) {
    const DensityOperator down = build_snake(ms, {2, v - kEy, u - kEy});
    report.add("level_drop/trace_bottom", {{"row", row}},
               trace_distance(partial_trace(down, row), one), tol);
  }
  return report;
}

}  // namespace snakeweaver
