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

#include <optional>
#include <string>
#include <vector>

#include "snakeweaver/lattice.hpp"

namespace snakeweaver::ci {

// I(A:C|B) = 0. A and C are unordered; the canonical form stores the
// lexicographically smaller of the two as `a`.
struct Statement {
  Region a, b, c;

  friend bool operator==(const Statement&, const Statement&) = default;
  friend auto operator<=>(const Statement&, const Statement&) = default;
  Region support() const { return a.unite(b).unite(c); }
};

// Validates disjointness and non-empty A, C; returns the canonical form.
Statement make_statement(Region a, Region b, Region c);
std::string to_string(const Statement& s);

// Single monotonicity moves: drop a nonempty subset of C (or A), or move it
// into B, keeping both sides nonempty.
std::vector<Statement> mono_children(const Statement& s);

// Reverse monotonicity: from I(X:Y|B') and I(X:Z|B) with B' = B u Z, conclude
// I(X:Y u Z|B). Both input orders and both A/C orientations are tried.
std::optional<Statement> rev_mono(const Statement& s1, const Statement& s2);
std::vector<Statement> rev_mono_all(const Statement& s1, const Statement& s2);

struct Step {
  std::string move;  // "mono" or "revmono"
  std::vector<Statement> inputs;
  Statement output;
};

struct Derivation {
  std::vector<Step> steps;  // empty when the target is an axiom
};

// Breadth-first closure up to `depth` rounds of moves. Statement sets are
// limited to 64 distinct sites.
std::optional<Derivation> derive(const std::vector<Statement>& axioms, const Statement& target,
                                 int depth = 8);
std::vector<Statement> closure(const std::vector<Statement>& axioms, int depth = 8);

// Every 3x3 condition, from any cluster, supported inside the 3x3 cluster at
// `anchor`.
std::vector<Statement> cluster_axioms(const Vertex& anchor);

// I((2,1) : (0,1) | (1,1)) in cluster-local coordinates.
Statement level1_snake_target(const Vertex& anchor);

}  // namespace snakeweaver::ci
