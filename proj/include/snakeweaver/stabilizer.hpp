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

#include <cstdint>
#include <vector>

#include "snakeweaver/lattice.hpp"
#include "snakeweaver/oracles.hpp"

namespace snakeweaver::oracles {

// One Pauli generator: X part then Z part, one byte per qubit.
struct PauliRow {
  std::vector<std::uint8_t> x;
  std::vector<std::uint8_t> z;
};

// Stabilizer (possibly mixed) state on a region. Qubit q of site k in the
// region's canonical order has index k * qubits_per_site + q. Phases are not
// stored.
class StabilizerState {
 public:
  StabilizerState(Region sites, int qubits_per_site, std::vector<PauliRow> generators);

  const Region& sites() const { return sites_; }
  int qubits_per_site() const { return q_; }
  std::size_t num_qubits() const { return sites_.size() * static_cast<std::size_t>(q_); }
  const std::vector<PauliRow>& generators() const { return rows_; }
  std::size_t rank() const { return rank_; }

  // Exact entropy in bits (an integer).
  long entropy_bits(const Region& r) const;
  double entropy(const Region& r, LogBase base = LogBase::two) const;

  // Dense density matrix with all generator signs +1.
  DensityOperator to_density() const;

 private:
  Region sites_;
  int q_;
  std::vector<PauliRow> rows_;
  std::size_t rank_ = 0;
};

// Rank over GF(2) of the generator rows restricted to the given qubits.
std::size_t gf2_rank(const std::vector<PauliRow>& rows, const std::vector<std::size_t>& qubits);

class StabilizerEntropyProvider : public EntropyProvider {
 public:
  explicit StabilizerEntropyProvider(StabilizerState st) : st_(std::move(st)) {}
  double entropy(const Region& r, LogBase base) const override { return st_.entropy(r, base); }
  bool available(const Region& r) const override { return st_.sites().contains(r); }
  const StabilizerState& state() const { return st_; }

 private:
  StabilizerState st_;
};

// Random pure stabilizer state from a random Clifford circuit; `drop`
// generators are discarded to make it mixed.
StabilizerState random_stabilizer(const Region& sites, Rng& rng, std::size_t drop = 0);

// Independent perfectly correlated rows: Z_i Z_{i+1} along every row.
StabilizerState repetition_rows(const Window& window);

// Toric code with one horizontal and one vertical edge qubit per site, open
// boundaries trimmed to the window.
StabilizerState toric_code(const Window& window);

}  // namespace snakeweaver::oracles
