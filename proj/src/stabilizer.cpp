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

#include "snakeweaver/stabilizer.hpp"

#include <bit>
#include <cmath>

#include "snakeweaver/errors.hpp"

namespace snakeweaver::oracles {
namespace {

using Bits = std::vector<std::uint64_t>;

std::size_t eliminate(std::vector<Bits> rows) {
  std::size_t rank = 0;
  const std::size_t words = rows.empty() ? 0 : rows.front().size();
  for (std::size_t col = 0; col < words * 64 && rank < rows.size(); ++col) {
    const std::size_t w = col / 64;
    const std::uint64_t mask = std::uint64_t{1} << (col % 64);
    std::size_t pivot = rank;
    while (pivot < rows.size() && !(rows[pivot][w] & mask)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != rank && (rows[i][w] & mask)) {
        for (std::size_t k = w; k < words; ++k) rows[i][k] ^= rows[rank][k];
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace

std::size_t gf2_rank(const std::vector<PauliRow>& rows, const std::vector<std::size_t>& qubits) {
  const std::size_t cols = 2 * qubits.size();
  const std::size_t words = (cols + 63) / 64;
  std::vector<Bits> packed;
  packed.reserve(rows.size());
  for (const auto& r : rows) {
    Bits b(words, 0);
    for (std::size_t k = 0; k < qubits.size(); ++k) {
      if (r.x[qubits[k]]) b[(2 * k) / 64] |= std::uint64_t{1} << ((2 * k) % 64);
      if (r.z[qubits[k]]) b[(2 * k + 1) / 64] |= std::uint64_t{1} << ((2 * k + 1) % 64);
    }
    packed.push_back(std::move(b));
  }
  return eliminate(std::move(packed));
}

StabilizerState::StabilizerState(Region sites, int qubits_per_site, std::vector<PauliRow> generators)
    : sites_(std::move(sites)), q_(qubits_per_site), rows_(std::move(generators)) {
  if (q_ < 1) throw InvalidStateError("qubits per site must be positive");
  const std::size_t n = num_qubits();
  for (const auto& r : rows_) {
    if (r.x.size() != n || r.z.size() != n) throw InvalidStateError("generator length does not match qubit count");
  }
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    for (std::size_t j = i + 1; j < rows_.size(); ++j) {
      int s = 0;
      for (std::size_t k = 0; k < n; ++k) s ^= (rows_[i].x[k] & rows_[j].z[k]) ^ (rows_[i].z[k] & rows_[j].x[k]);
      if (s) {
        throw InvalidStateError("generators " + std::to_string(i) + " and " + std::to_string(j) +
                                " anticommute");
      }
    }
  }
  std::vector<std::size_t> all(n);
  for (std::size_t k = 0; k < n; ++k) all[k] = k;
  rank_ = gf2_rank(rows_, all);
}

long StabilizerState::entropy_bits(const Region& r) const {
  if (!sites_.contains(r)) throw RegionError("region " + to_string(r) + " outside the stabilizer state");
  std::vector<std::size_t> outside;
  for (std::size_t k = 0; k < sites_.size(); ++k) {
    if (r.contains(sites_[k])) continue;
    for (int q = 0; q < q_; ++q) outside.push_back(k * q_ + q);
  }
  const long inside_qubits = static_cast<long>(r.size()) * q_;
  return inside_qubits - static_cast<long>(rank_) + static_cast<long>(gf2_rank(rows_, outside));
}

double StabilizerState::entropy(const Region& r, LogBase base) const {
  const double bits = static_cast<double>(entropy_bits(r));
  return base == LogBase::two ? bits : bits * std::log(2.0);
}

DensityOperator StabilizerState::to_density() const {
  const std::size_t n = num_qubits();
  if (sites_.size() * q_ != n) throw InvalidStateError("inconsistent qubit count");
  const int site_dim = 1 << q_;
  const auto dim = static_cast<Eigen::Index>(guarded_dimension(site_dim, sites_.size()));
  Matrix rho = Matrix::Identity(dim, dim);
  for (const auto& g : rows_) {
    std::uint64_t xm = 0, zm = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const std::uint64_t bit = std::uint64_t{1} << (n - 1 - k);
      if (g.x[k]) xm |= bit;
      if (g.z[k]) zm |= bit;
    }
    static const Complex ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const Complex phase = ipow[std::popcount(xm & zm) % 4];
    // (g M)_{b ^ x, :} = phase (-1)^{z.b} M_{b, :}
    Matrix next = rho;
    for (Eigen::Index b = 0; b < dim; ++b) {
      const double sign = (std::popcount(zm & static_cast<std::uint64_t>(b)) & 1) ? -1.0 : 1.0;
      next.row(static_cast<Eigen::Index>(static_cast<std::uint64_t>(b) ^ xm)) += phase * sign * rho.row(b);
    }
    rho = std::move(next);
  }
  rho /= real_trace(rho);
  hermitize(rho);
  return DensityOperator(sites_, site_dim, std::move(rho), Validation::cheap);
}

StabilizerState random_stabilizer(const Region& sites, Rng& rng, std::size_t drop) {
  const std::size_t n = sites.size();
  if (drop > n) throw InvalidStateError("cannot drop more generators than qubits");
  std::vector<PauliRow> rows(n, PauliRow{std::vector<std::uint8_t>(n, 0), std::vector<std::uint8_t>(n, 0)});
  for (std::size_t i = 0; i < n; ++i) rows[i].z[i] = 1;
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> gate(0, 2);
  for (std::size_t step = 0; step < 4 * n * n + 8; ++step) {
    const int g = gate(rng);
    const std::size_t a = pick(rng);
    if (g == 0) {
      for (auto& r : rows) std::swap(r.x[a], r.z[a]);
    } else if (g == 1) {
      for (auto& r : rows) r.z[a] ^= r.x[a];
    } else if (n > 1) {
      std::size_t t = pick(rng);
      while (t == a) t = pick(rng);
      for (auto& r : rows) {
        r.x[t] ^= r.x[a];
        r.z[a] ^= r.z[t];
      }
    }
  }
  rows.resize(n - drop);
  return StabilizerState(sites, 1, std::move(rows));
}

StabilizerState repetition_rows(const Window& window) {
  const Region sites = window.region();
  const std::size_t n = sites.size();
  std::vector<PauliRow> rows;
  for (int y = 0; y < window.height; ++y) {
    for (int x = 0; x + 1 < window.width; ++x) {
      PauliRow r{std::vector<std::uint8_t>(n, 0), std::vector<std::uint8_t>(n, 0)};
      r.z[sites.index_of({x, y})] = 1;
      r.z[sites.index_of({x + 1, y})] = 1;
      rows.push_back(std::move(r));
    }
  }
  return StabilizerState(sites, 1, std::move(rows));
}

StabilizerState toric_code(const Window& window) {
  const Region sites = window.region();
  const std::size_t n = 2 * sites.size();
  auto h = [&](int x, int y) { return 2 * static_cast<std::size_t>(sites.index_of({x, y})); };
  auto v = [&](int x, int y) { return 2 * static_cast<std::size_t>(sites.index_of({x, y})) + 1; };
  std::vector<PauliRow> rows;
  for (int y = 0; y < window.height; ++y) {
    for (int x = 0; x < window.width; ++x) {
      PauliRow star{std::vector<std::uint8_t>(n, 0), std::vector<std::uint8_t>(n, 0)};
      star.x[h(x, y)] = star.x[v(x, y)] = 1;
      if (x > 0) star.x[h(x - 1, y)] = 1;
      if (y > 0) star.x[v(x, y - 1)] = 1;
      rows.push_back(std::move(star));
      if (x + 1 < window.width && y + 1 < window.height) {
        PauliRow plaq{std::vector<std::uint8_t>(n, 0), std::vector<std::uint8_t>(n, 0)};
        plaq.z[h(x, y)] = plaq.z[v(x + 1, y)] = plaq.z[h(x, y + 1)] = plaq.z[v(x, y)] = 1;
        rows.push_back(std::move(plaq));
      }
    }
  }
  return StabilizerState(sites, 2, std::move(rows));
}

}  // namespace snakeweaver::oracles
