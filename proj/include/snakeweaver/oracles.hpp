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
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "snakeweaver/marginal_store.hpp"
#include "snakeweaver/operator_core.hpp"

namespace snakeweaver::oracles {

using Rng = std::mt19937_64;

Matrix haar_unitary(int n, Rng& rng);
// Haar-random real orthogonal matrix.
Matrix random_orthogonal(int n, Rng& rng);
// G G^dagger / Tr for an n x rank complex Ginibre G.
Matrix random_density_matrix(int n, Rng& rng, int rank = -1);
RealVector random_distribution(int n, Rng& rng);
// Row-stochastic matrix with Dirichlet(1) rows.
RealMatrix random_stochastic(int n, Rng& rng);

// (1-p) rho + p I/D.
DensityOperator depolarize(const DensityOperator& op, double p);

// Any state whose reductions can be computed without the global matrix.
class StateSource {
 public:
  virtual ~StateSource() = default;
  virtual const Window& window() const = 0;
  virtual int local_dim() const = 0;
  virtual DensityOperator marginal(const Region& r) const = 0;
};

// One 3x3 marginal per inside cluster.
MarginalSet marginal_set(const StateSource& src, MarginalSetMetadata meta = {});
// The full-window state; subject to the dense guard.
DensityOperator global_state(const StateSource& src);

class ProductSource : public StateSource {
 public:
  // One single-site density matrix per window site, canonical order.
  ProductSource(Window window, int local_dim, std::vector<Matrix> site_states);
  static ProductSource uniform(Window window, int local_dim, const Matrix& site_state);

  const Window& window() const override { return window_; }
  int local_dim() const override { return d_; }
  DensityOperator marginal(const Region& r) const override;

 private:
  Window window_;
  int d_;
  std::vector<Matrix> sites_;
};

enum class Orientation { rows, columns };
enum class UnitaryKind { none, real, complex };

std::string to_string(Orientation o);
std::string to_string(UnitaryKind k);
Orientation parse_orientation(const std::string& s);
UnitaryKind parse_unitary_kind(const std::string& s);

// A classical Markov chain along one row (or column).
struct ChainSpec {
  RealVector initial;
  std::vector<RealMatrix> transitions;  // transitions[k]: site k -> site k+1
};

struct RowMarkovSpec {
  Window window;
  int local_dim = 2;
  Orientation orientation = Orientation::rows;
  std::vector<ChainSpec> chains;  // one per row (or column)
  std::vector<Matrix> unitaries;  // per site in canonical order; empty for none
};

RowMarkovSpec random_row_markov_spec(const Window& window, int local_dim, Orientation orientation,
                                     UnitaryKind unitaries, std::uint64_t seed);
// Uniform start with identity transitions: perfectly correlated rows.
RowMarkovSpec repetition_rows_spec(const Window& window, int local_dim = 2);
// Uniform start with uniform transitions: maximally mixed product state.
RowMarkovSpec uniform_spec(const Window& window, int local_dim, Orientation orientation);

// Independent classical chains conjugated by on-site unitaries. Reductions
// are exact products of chain marginals.
class RowMarkovSource : public StateSource {
 public:
  explicit RowMarkovSource(RowMarkovSpec spec);
  const Window& window() const override { return spec_.window; }
  int local_dim() const override { return spec_.local_dim; }
  DensityOperator marginal(const Region& r) const override;
  const RowMarkovSpec& spec() const { return spec_; }

 private:
  RowMarkovSpec spec_;
};

// GHZ state on three consecutive sites of one row, |0> elsewhere.
class GhzRowSource : public StateSource {
 public:
  GhzRowSource(Window window, Vertex first_site);
  const Window& window() const override { return window_; }
  int local_dim() const override { return 2; }
  DensityOperator marginal(const Region& r) const override;

 private:
  Window window_;
  Region ghz_;
};

// Quantum Markov chain on row 0: n_a A sites, n_b B sites, n_c C sites.
// B decomposes as a direct sum of blocks bL_j (x) bR_j (plus unused space);
// A is correlated with bL_j and C with bR_j only.
struct QmcBlock {
  int left_dim = 1;
  int right_dim = 1;
};

struct QmcTriple {
  DensityOperator state;
  Region a, b, c;
};

QmcTriple gen_qmc_triple(int n_a, int n_b, int n_c, int local_dim, const std::vector<QmcBlock>& blocks,
                         std::uint64_t seed);

// Four-party Markov chain A-B-C-D, I(A:C|B) = I(B:D|C) = 0.
struct MarkovQuad {
  DensityOperator state;
  Region a, b, c, d;
};

// rho_{A bL} (x) rho_{bR cL} (x) rho_{cR D} conjugated by Haar unitaries on
// B and on C; six qubits on row 0.
MarkovQuad gen_dimer_chain(std::uint64_t seed);
// Classical chain on four sites conjugated by on-site unitaries.
MarkovQuad gen_classical_chain4(int local_dim, UnitaryKind unitaries, std::uint64_t seed);

struct MaxEntOptions {
  double tol = 1e-9;  // max trace distance between solution and constraint marginals
  int max_iterations = 100000;
  int history = 10;
  LogBase base = LogBase::two;
};

struct MaxEntSolution {
  double value = 0.0;
  DensityOperator state;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Maximizes von Neumann entropy on `region` subject to the given marginals,
// by minimizing the convex dual log Tr exp(sum_r H_r) - sum_r Tr(H_r sigma_r)
// with L-BFGS. Throws ConsistencyError when two constraints disagree on
// their overlap.
MaxEntSolution brute_force_maxent(const std::vector<DensityOperator>& constraints,
                                  const Region& region, const MaxEntOptions& opts = {});

}  // namespace snakeweaver::oracles
