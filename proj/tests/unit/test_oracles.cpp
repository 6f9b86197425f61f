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

#include "fixtures.hpp"
#include "snakeweaver/errors.hpp"
#include "snakeweaver/oracles.hpp"

using namespace snakeweaver;
using namespace snakeweaver::testing;
using doctest::Approx;

namespace {

Region row(int width, int y) { return cluster_region({width - 1, y}, width, 1); }

}  // namespace

TEST_SUITE("oracles") {
  TEST_CASE("random matrices") {
    oracles::Rng rng(3);
    const Matrix u = oracles::haar_unitary(6, rng);
    CHECK((u.adjoint() * u - Matrix::Identity(6, 6)).norm() < 1e-12);
    const Matrix o = oracles::random_orthogonal(5, rng);
    CHECK(o.imag().norm() == 0.0);
    CHECK((o.adjoint() * o - Matrix::Identity(5, 5)).norm() < 1e-12);
    const Matrix r = oracles::random_density_matrix(8, rng, 3);
    CHECK(real_trace(r) == Approx(1.0).epsilon(1e-13));
    const RealVector w = eigvalsh(r);
    CHECK(w.minCoeff() > -1e-13);
    CHECK((w.array() > 1e-10).count() == 3);
    const RealVector p = oracles::random_distribution(7, rng);
    CHECK(p.sum() == Approx(1.0).epsilon(1e-14));
    CHECK(p.minCoeff() >= 0.0);
    const RealMatrix t = oracles::random_stochastic(4, rng);
    for (Eigen::Index i = 0; i < 4; ++i) CHECK(t.row(i).sum() == Approx(1.0).epsilon(1e-14));
    const DensityOperator dep = oracles::depolarize(DensityOperator(Region{{0, 0}}, 2, ket0()), 0.5);
    CHECK((dep.matrix() - diag({0.75, 0.25})).norm() < 1e-15);
  }

  TEST_CASE("names") {
    for (auto o : {oracles::Orientation::rows, oracles::Orientation::columns}) {
      CHECK(oracles::parse_orientation(oracles::to_string(o)) == o);
    }
    for (auto k : {oracles::UnitaryKind::none, oracles::UnitaryKind::real, oracles::UnitaryKind::complex}) {
      CHECK(oracles::parse_unitary_kind(oracles::to_string(k)) == k);
    }
    CHECK_THROWS_AS(oracles::parse_orientation("diagonal"), FormatError);
  }

  TEST_CASE("product and GHZ sources") {
    const auto src = oracles::ProductSource::uniform(Window(3, 3), 2, diag({0.25, 0.75}));
    const DensityOperator m = src.marginal(Region{{0, 0}, {2, 2}});
    CHECK((m.matrix() - diag({0.0625, 0.1875, 0.1875, 0.5625})).norm() < 1e-15);
    CHECK_THROWS(src.marginal(Region{{3, 0}}));

    const oracles::GhzRowSource ghz(Window(4, 3), Vertex{0, 1});
    const DensityOperator g = ghz.marginal(Region{{0, 1}, {1, 1}, {2, 1}});
    CHECK(entropy(g) < 1e-12);
    CHECK(trace_distance(DensityOperator(g.region(), 2, ghz3().matrix()), g) < 1e-14);
    CHECK(entropy(ghz.marginal(Region{{0, 1}, {1, 1}})) == Approx(1.0).epsilon(1e-12));
    CHECK(entropy(ghz.marginal(Region{{3, 1}, {0, 0}})) < 1e-12);
  }

  TEST_CASE("row-Markov fixture matches the frozen entropies") {
    const oracles::RowMarkovSource src(explicit_row_markov_spec());
    // numpy oracle
    CHECK(entropy(src.marginal(row(4, 1))) == Approx(kFixtureRow1Entropy).epsilon(1e-12));
    CHECK(entropy(src.marginal(cluster_region({3, 0}, 4, 2))) == Approx(kFixtureRows01Entropy).epsilon(1e-12));
    // Rows are independent.
    const double total = entropy(src.marginal(row(4, 0))) + entropy(src.marginal(row(4, 1))) +
                         entropy(src.marginal(row(4, 2)));
    CHECK(total == Approx(kFixtureGlobalEntropy).epsilon(1e-12));
    CHECK(trace_distance(partial_trace(src.marginal(cluster_region({3, 1}, 4, 2)), row(4, 1)),
                         src.marginal(row(4, 1))) < 1e-14);
  }

  TEST_CASE("row-Markov specs") {
    const Window w(4, 3);
    const auto rows = oracles::random_row_markov_spec(w, 3, oracles::Orientation::rows,
                                                      oracles::UnitaryKind::complex, 1);
    CHECK(rows.chains.size() == 3);
    CHECK(rows.chains[0].transitions.size() == 3);
    CHECK(rows.unitaries.size() == 12);
    const auto cols = oracles::random_row_markov_spec(w, 2, oracles::Orientation::columns,
                                                      oracles::UnitaryKind::none, 1);
    CHECK(cols.chains.size() == 4);
    CHECK(cols.unitaries.empty());
    const oracles::RowMarkovSource rep(oracles::repetition_rows_spec(w));
    CHECK(entropy(rep.marginal(row(4, 0))) == Approx(1.0).epsilon(1e-12));
    CHECK(entropy(rep.marginal(cluster_region({3, 0}, 4, 2))) == Approx(2.0).epsilon(1e-12));
    const oracles::RowMarkovSource uni(oracles::uniform_spec(w, 2, oracles::Orientation::rows));
    CHECK(entropy(uni.marginal(cluster_region({2, 0}, 3, 3))) == Approx(9.0).epsilon(1e-12));
  }

  TEST_CASE("quantum Markov triples and chains") {
    const auto t = oracles::gen_qmc_triple(1, 2, 1, 2, {{2, 1}, {1, 2}}, 4);
    CHECK(cmi(t.state, t.a, t.b, t.c) < 1e-9);
    CHECK(t.state.region() == t.a.unite(t.b).unite(t.c));
    CHECK_THROWS_AS(oracles::gen_qmc_triple(1, 1, 1, 2, {{2, 2}}, 4), GeometryError);

    const auto q = oracles::gen_dimer_chain(8);
    CHECK(cmi(q.state, q.a, q.b, q.c.unite(q.d)) < 1e-9);
    CHECK(cmi(q.state, q.a.unite(q.b), q.c, q.d) < 1e-9);
    CHECK(cmi(q.state, q.a, Region{}, q.b) > 1e-3);

    const auto c = oracles::gen_classical_chain4(3, oracles::UnitaryKind::real, 8);
    CHECK(c.state.local_dim() == 3);
    CHECK(cmi(c.state, c.a, c.b, c.c.unite(c.d)) < 1e-9);
    CHECK(cmi(c.state, c.a.unite(c.b), c.c, c.d) < 1e-9);
  }

  TEST_CASE("brute-force maximum entropy") {
    const auto t = oracles::gen_qmc_triple(1, 2, 1, 2, {{2, 1}, {1, 2}}, 6);
    const std::vector<DensityOperator> cons{partial_trace(t.state, t.a.unite(t.b)),
                                            partial_trace(t.state, t.b.unite(t.c))};
    const auto sol = oracles::brute_force_maxent(cons, t.state.region());
    CHECK(sol.converged);
    CHECK(sol.residual <= 1e-9);
    CHECK(sol.value == Approx(entropy(t.state)).epsilon(1e-7));
    CHECK(trace_distance(sol.state, t.state) < 1e-4);

    const auto ch = oracles::gen_classical_chain4(2, oracles::UnitaryKind::complex, 2);
    const std::vector<DensityOperator> pairs{partial_trace(ch.state, ch.a.unite(ch.b)),
                                             partial_trace(ch.state, ch.b.unite(ch.c)),
                                             partial_trace(ch.state, ch.c.unite(ch.d))};
    const auto sol4 = oracles::brute_force_maxent(pairs, ch.state.region());
    CHECK(sol4.converged);
    CHECK(sol4.value == Approx(entropy(ch.state)).epsilon(1e-7));

    const std::vector<DensityOperator> clash{DensityOperator(Region{{0, 0}}, 2, ket0()),
                                             DensityOperator::maximally_mixed(Region{{0, 0}, {1, 0}}, 2)};
    CHECK_THROWS_AS(oracles::brute_force_maxent(clash, Region{{0, 0}, {1, 0}}), ConsistencyError);
  }
}
