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

#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "snakeweaver/ci_calculus.hpp"
#include "snakeweaver/errors.hpp"
#include "snakeweaver/marginal_store.hpp"

using namespace snakeweaver;
using namespace snakeweaver::testing;

namespace {

Region r1(int x, int y) { return Region{{x, y}}; }

bool contains(const std::vector<ci::Statement>& v, const ci::Statement& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

TEST_SUITE("ci_calculus") {
  TEST_CASE("statements") {
    const auto s = ci::make_statement(r1(2, 0), r1(1, 0), r1(0, 0));
    CHECK(s == ci::make_statement(r1(0, 0), r1(1, 0), r1(2, 0)));
    CHECK(s.support() == Region{{0, 0}, {1, 0}, {2, 0}});
    CHECK_THROWS_AS(ci::make_statement(Region{}, r1(1, 0), r1(0, 0)), GeometryError);
    CHECK_THROWS_AS(ci::make_statement(r1(0, 0), r1(0, 0), r1(1, 0)), GeometryError);
    CHECK(ci::to_string(s).rfind("I(", 0) == 0);
  }

  TEST_CASE("monotonicity moves") {
    const auto s = ci::make_statement(Region{{0, 0}, {1, 0}}, r1(2, 0), r1(3, 0));
    const auto kids = ci::mono_children(s);
    CHECK(kids.size() == 4);
    CHECK(contains(kids, ci::make_statement(r1(0, 0), r1(2, 0), r1(3, 0))));
    CHECK(contains(kids, ci::make_statement(r1(0, 0), Region{{1, 0}, {2, 0}}, r1(3, 0))));
    CHECK(contains(kids, ci::make_statement(r1(1, 0), Region{{0, 0}, {2, 0}}, r1(3, 0))));
    CHECK(ci::mono_children(ci::make_statement(r1(0, 0), r1(1, 0), r1(2, 0))).empty());
  }

  TEST_CASE("reverse monotonicity") {
    // I(x:y|b z) and I(x:z|b) give I(x:yz|b).
    const Region x = r1(0, 0), b = r1(1, 0), y = r1(3, 0), z = r1(2, 0);
    const auto s1 = ci::make_statement(x, b.unite(z), y);
    const auto s2 = ci::make_statement(x, b, z);
    const auto out = ci::rev_mono(s1, s2);
    REQUIRE(out.has_value());
    CHECK(*out == ci::make_statement(x, b, y.unite(z)));
    CHECK(ci::rev_mono(s2, s1) == out);
    CHECK_FALSE(ci::rev_mono(s1, ci::make_statement(r1(5, 5), b, z)).has_value());
  }

  TEST_CASE("level-1 snake target is derivable from the cluster conditions") {
    const Vertex anchor{2, 2};
    const auto axioms = ci::cluster_axioms(anchor);
    CHECK(axioms.size() >= 8);
    const auto target = ci::level1_snake_target(anchor);
    CHECK(target == ci::make_statement(r1(2, 3), r1(1, 3), r1(0, 3)));
    const auto d = ci::derive(axioms, target);
    REQUIRE(d.has_value());
    REQUIRE_FALSE(d->steps.empty());
    CHECK(d->steps.back().output == target);
    std::vector<ci::Statement> known = axioms;
    for (const auto& st : d->steps) {
      for (const auto& in : st.inputs) CHECK(contains(known, in));
      if (st.move == "mono") {
        REQUIRE(st.inputs.size() == 1);
        CHECK(contains(ci::mono_children(st.inputs[0]), st.output));
      } else {
        REQUIRE(st.move == "revmono");
        REQUIRE(st.inputs.size() == 2);
        CHECK(contains(ci::rev_mono_all(st.inputs[0], st.inputs[1]), st.output));
      }
      known.push_back(st.output);
    }
  }

  TEST_CASE("axioms and underivable targets") {
    const auto axioms = ci::cluster_axioms(Vertex{2, 2});
    const auto d = ci::derive(axioms, axioms.front());
    REQUIRE(d.has_value());
    CHECK(d->steps.empty());
    // No move removes conditioning, and no axiom is unconditional.
    CHECK_FALSE(ci::derive(axioms, ci::make_statement(r1(0, 2), Region{}, r1(2, 4))).has_value());
    CHECK_FALSE(ci::derive({}, axioms.front()).has_value());
  }

  TEST_CASE("closure is sound on a Markov fixture") {
    const MarginalSet ms = oracles::marginal_set(oracles::RowMarkovSource(explicit_row_markov_spec()));
    const Vertex anchor{2, 0};
    const DensityOperator& m = ms.marginal(anchor);
    const auto all = ci::closure(ci::cluster_axioms(anchor), 2);
    CHECK(all.size() > ci::cluster_axioms(anchor).size());
    double worst = 0.0;
    for (const auto& s : all) worst = std::max(worst, cmi(m, s.a, s.b, s.c));
    CHECK(worst < 1e-9);
  }
}
