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
#include "snakeweaver/stabilizer.hpp"

using namespace snakeweaver;
using namespace snakeweaver::oracles;
using namespace snakeweaver::testing;
using doctest::Approx;

namespace {

PauliRow pauli(const std::string& s) {
  PauliRow r{std::vector<std::uint8_t>(s.size(), 0), std::vector<std::uint8_t>(s.size(), 0)};
  for (std::size_t i = 0; i < s.size(); ++i) {
    r.x[i] = s[i] == 'X' || s[i] == 'Y';
    r.z[i] = s[i] == 'Z' || s[i] == 'Y';
  }
  return r;
}

const Region kLine{{0, 0}, {1, 0}, {2, 0}};

// Every nonempty subset of the sites.
std::vector<Region> subsets(const Region& sites) {
  std::vector<Region> out;
  for (unsigned m = 1; m < (1u << sites.size()); ++m) {
    std::vector<Vertex> v;
    for (std::size_t i = 0; i < sites.size(); ++i) {
      if (m >> i & 1u) v.push_back(sites[i]);
    }
    out.emplace_back(std::move(v));
  }
  return out;
}

}  // namespace

TEST_SUITE("stabilizer") {
  TEST_CASE("GHZ stabilizer") {
    const StabilizerState ghz(kLine, 1, {pauli("XXX"), pauli("ZZI"), pauli("IZZ")});
    CHECK(ghz.rank() == 3);
    CHECK(ghz.entropy_bits(kLine) == 0);
    CHECK(ghz.entropy_bits(Region{{0, 0}}) == 1);
    CHECK(ghz.entropy_bits(Region{{0, 0}, {2, 0}}) == 1);
    CHECK(ghz.entropy(Region{{1, 0}}, LogBase::e) == Approx(std::log(2.0)));
    CHECK(trace_distance(ghz.to_density(), ghz3()) < 1e-14);
    CHECK_THROWS_AS(ghz.entropy_bits(Region{{5, 0}}), RegionError);
  }

  TEST_CASE("validation") {
    CHECK_THROWS_AS(StabilizerState(kLine, 1, {pauli("XII"), pauli("ZII")}), InvalidStateError);
    CHECK_THROWS_AS(StabilizerState(kLine, 1, {pauli("XX")}), InvalidStateError);
    CHECK_THROWS_AS(StabilizerState(kLine, 0, {}), InvalidStateError);
    // Y anticommutes with X and Z; YY commutes with XX.
    CHECK_NOTHROW(StabilizerState(kLine, 1, {pauli("YYI"), pauli("XXI")}));
  }

  TEST_CASE("GF(2) rank") {
    const std::vector<PauliRow> rows{pauli("XXI"), pauli("IXX"), pauli("XIX"), pauli("ZZZ")};
    CHECK(gf2_rank(rows, {0, 1, 2}) == 3);
    CHECK(gf2_rank(rows, {0}) == 2);
    CHECK(gf2_rank({}, {0, 1}) == 0);
  }

  TEST_CASE("random stabilizer entropies match dense") {
    const Region sites{{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}, {2, 1}};
    for (std::size_t drop : {0u, 2u}) {
      Rng rng(10 + drop);
      const StabilizerState st = random_stabilizer(sites, rng, drop);
      CHECK(st.rank() == sites.size() - drop);
      CHECK(st.entropy_bits(sites) == static_cast<long>(drop));
      const DensityOperator rho = st.to_density();
      for (const auto& r : subsets(sites)) {
        CAPTURE(to_string(r));
        CHECK(static_cast<double>(st.entropy_bits(r)) == Approx(entropy(partial_trace(rho, r))).epsilon(1e-9));
      }
    }
  }

  TEST_CASE("repetition rows") {
    const StabilizerState st = repetition_rows(Window(4, 3));
    CHECK(st.entropy_bits(Window(4, 3).region()) == 3);
    CHECK(st.entropy_bits(cluster_region({3, 1}, 4, 1)) == 1);
    CHECK(st.entropy_bits(Region{{0, 0}, {0, 1}}) == 2);
  }

  TEST_CASE("toric code") {
    const StabilizerState st = toric_code(Window(2, 2));
    CHECK(st.num_qubits() == 8);
    CHECK(st.generators().size() == 5);
    const DensityOperator rho = st.to_density();
    for (const auto& r : subsets(st.sites())) {
      CAPTURE(to_string(r));
      CHECK(static_cast<double>(st.entropy_bits(r)) == Approx(entropy(partial_trace(rho, r))).epsilon(1e-9));
    }
    const StabilizerState big = toric_code(Window(5, 4));
    CHECK(big.generators().size() == 20 + 12);
    const StabilizerEntropyProvider prov(big);
    CHECK(prov.available(Region{{4, 3}}));
    CHECK_FALSE(prov.available(Region{{5, 3}}));
    CHECK(prov.entropy(Window(5, 4).region(), LogBase::two) ==
          Approx(static_cast<double>(big.num_qubits() - big.rank())));
  }
}
