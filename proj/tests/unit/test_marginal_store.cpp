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

#include <set>

#include "fixtures.hpp"
#include "snakeweaver/errors.hpp"
#include "snakeweaver/marginal_store.hpp"
#include "snakeweaver/oracles.hpp"

using namespace snakeweaver;
using namespace snakeweaver::testing;
using doctest::Approx;

namespace {

MarginalSet fixture_set() {
  return oracles::marginal_set(oracles::RowMarkovSource(explicit_row_markov_spec()));
}

}  // namespace

TEST_SUITE("marginal_store") {
  TEST_CASE("condition patterns") {
    const auto conds = c_m_conditions(Vertex{2, 0});
    REQUIRE(conds.size() == 8);
    const Region cluster = cluster_region(Vertex{2, 0}, 3, 3);
    std::set<std::string> labels;
    for (const auto& c : conds) {
      CHECK(cluster.contains(c.support()));
      CHECK_FALSE(c.a.intersects(c.b));
      CHECK_FALSE(c.b.intersects(c.c));
      CHECK_FALSE(c.a.intersects(c.c));
      labels.insert(c.label());
    }
    CHECK(labels == std::set<std::string>{"1", "2", "3", "4", "1r", "2r", "3r", "4r"});
    // The first pattern: A = right neighbour of the corner, B = corner, C = above.
    CHECK(conds[0].a == Region{{1, 0}});
    CHECK(conds[0].b == Region{{0, 0}});
    CHECK(conds[0].c == Region{{0, 1}});
    // Rotations map the pattern by 180 degrees inside the cluster.
    CHECK(conds[4].a == Region{{1, 2}});
    CHECK(conds[4].b == Region{{2, 2}});
    CHECK(conds[4].c == Region{{2, 1}});
    CHECK_THROWS_AS(c_m_conditions(Window(4, 3), Vertex{1, 0}), GeometryError);
  }

  TEST_CASE("marginal set construction") {
    const MarginalSet ms = fixture_set();
    CHECK(ms.marginals().size() == 2);
    CHECK(ms.marginal(Vertex{3, 0}).region() == cluster_region(Vertex{3, 0}, 3, 3));
    CHECK_THROWS_AS(ms.marginal(Vertex{0, 0}), RegionError);

    std::map<Vertex, DensityOperator> partial{{Vertex{2, 0}, ms.marginal(Vertex{2, 0})}};
    CHECK_THROWS_AS(MarginalSet(Window(4, 3), 2, partial), FormatError);
    auto wrong = ms.marginals();
    wrong.insert_or_assign(Vertex{3, 0}, ms.marginal(Vertex{2, 0}));
    CHECK_THROWS_AS(MarginalSet(Window(4, 3), 2, wrong), FormatError);
    CHECK_THROWS_AS(MarginalSet(Window(2, 3), 2, {}), GeometryError);
  }

  TEST_CASE("derived marginals") {
    const MarginalSet ms = fixture_set();
    const Region shared{{1, 0}, {2, 1}};
    CHECK(ms.parents(shared) == std::vector<Vertex>{{2, 0}, {3, 0}});
    CHECK(ms.parents(Region{{0, 0}}) == std::vector<Vertex>{{2, 0}});
    CHECK(ms.parents(Region{{0, 0}, {3, 0}}).empty());
    CHECK_FALSE(ms.covers(Region{{0, 0}, {3, 0}}));
    CHECK_THROWS_AS(ms.derived_marginal(Region{{0, 0}, {3, 0}}), RegionError);

    const DensityOperator a = ms.derived_marginal(shared);
    const DensityOperator b = partial_trace(ms.marginal(Vertex{3, 0}), shared);
    CHECK(trace_distance(a, b) < 1e-12);

    const MarginalSetEntropyProvider prov(ms);
    // numpy oracle: S(row 1) of the fixture.
    const Region row1{{0, 1}, {1, 1}, {2, 1}};
    CHECK(prov.entropy(row1, LogBase::two) == Approx(entropy(ms.derived_marginal(row1))).epsilon(1e-14));
    CHECK(prov.available(Region{}));
    CHECK(prov.entropy(Region{}, LogBase::two) == 0.0);
  }

  TEST_CASE("fixture satisfies every Markov condition") {
    const MarginalSet ms = fixture_set();
    const CheckReport r = check_markov_conditions(ms, 1e-8);
    CHECK(r.passed());
    CHECK(r.records().size() == 16);
    // numpy oracle: max residual 2.7e-15.
    CHECK(r.max_residual() < 1e-12);
    CHECK(check_local_consistency(ms, 1e-8).passed());
    CHECK(check_local_consistency(ms, 1e-8, true).records().size() == 1);
  }

  TEST_CASE("depolarized cluster breaks consistency by the frozen amount") {
    const MarginalSet ms = fixture_set();
    const MarginalSet bad = ms.with_marginal(Vertex{2, 0}, oracles::depolarize(ms.marginal(Vertex{2, 0}), 1e-3));
    const CheckReport r = check_local_consistency(bad, 1e-8);
    CHECK_FALSE(r.passed());
    REQUIRE(r.worst() != nullptr);
    CHECK(r.worst()->id == "consistency/2,0/3,0");
    CHECK(r.worst()->residual == Approx(kFixtureDepolarizedResidual).epsilon(1e-9));
    CHECK_THROWS_AS(bad.derived_marginal(Region{{1, 0}, {2, 0}}), ConsistencyError);
    CHECK_NOTHROW(bad.derived_marginal_unchecked(Region{{1, 0}, {2, 0}}));
  }

  TEST_CASE("GHZ row violates exactly the frozen conditions") {
    const MarginalSet ms = oracles::marginal_set(oracles::GhzRowSource(Window(4, 3), Vertex{0, 1}));
    const CheckReport r = check_markov_conditions(ms, 1e-8);
    std::set<std::string> failed;
    for (const auto& rec : r.records()) {
      if (!rec.passed) {
        failed.insert(rec.id);
        CHECK(rec.residual == Approx(1.0).epsilon(1e-10));
      }
    }
    // numpy oracle
    CHECK(failed == std::set<std::string>{"cm/2,0/2", "cm/2,0/2r"});
    CHECK(check_local_consistency(ms, 1e-8, true).passed());
  }

  TEST_CASE("GHZ row in a 4x4 window") {
    const MarginalSet ms = oracles::marginal_set(oracles::GhzRowSource(Window(4, 4), Vertex{0, 1}));
    std::set<std::string> failed;
    for (const auto& rec : check_markov_conditions(ms, 1e-8).records()) {
      if (!rec.passed) failed.insert(rec.id);
    }
    // numpy oracle
    CHECK(failed == std::set<std::string>{"cm/2,0/2", "cm/2,0/2r", "cm/2,1/2", "cm/2,1/4r"});
  }
}
