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

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "snakeweaver/lattice.hpp"
#include "snakeweaver/linalg.hpp"

namespace snakeweaver {

enum class LogBase { two, e };

double from_nats(double nats, LogBase base);
LogBase parse_log_base(const std::string& s);
std::string to_string(LogBase base);

// Relative eigenvalue cutoff for entropies and pseudo-inverses.
inline constexpr double kSupportCutoff = 1e-10;
// Hermiticity and trace tolerance of stored states.
inline constexpr double kStateTol = 1e-10;
// Eigenvalues below this are treated as a bug, not rounding.
inline constexpr double kNegativityAbort = 1e-8;

// Largest operator dimension that may be materialized; default 2^14.
std::size_t dense_guard();
void set_dense_guard(std::size_t max_dim);
// d^n, throwing DimensionGuardError above dense_guard().
std::size_t guarded_dimension(int local_dim, std::size_t num_sites);
// d^n without the guard; throws on overflow.
std::size_t hilbert_dimension(int local_dim, std::size_t num_sites);

enum class Validation {
  full,     // Hermiticity, trace, spectrum (with small-negativity repair)
  preserve, // as full, but a matrix meeting the invariants is stored unchanged
  cheap,    // Hermiticity and trace only
  trusted,  // shape only
};

// Immutable density matrix on a canonically ordered region. The first site
// in canonical order is the most significant tensor factor.
class DensityOperator {
 public:
  DensityOperator(Region region, int local_dim, Matrix matrix, Validation v = Validation::full);

  static DensityOperator maximally_mixed(const Region& region, int local_dim);
  static DensityOperator pure(const Region& region, int local_dim, const CVector& psi);

  const Region& region() const { return region_; }
  int local_dim() const { return local_dim_; }
  const Matrix& matrix() const { return *matrix_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_->rows()); }

 private:
  Region region_;
  int local_dim_ = 2;
  std::shared_ptr<const Matrix> matrix_;
};

// Conjugates rows and columns into a new site order over the same sites.
Matrix reorder_matrix(const Matrix& m, const std::vector<Vertex>& from,
                      const std::vector<Vertex>& to, int local_dim);
// Partial trace of m (sites in `order`) down to `keep`, canonical output order.
Matrix partial_trace_matrix(const Matrix& m, const std::vector<Vertex>& order, const Region& keep,
                            int local_dim);
// m on `sub` tensored with identity on full \ sub, canonical order of `full`.
Matrix embed_identity(const Matrix& m, const Region& sub, const Region& full, int local_dim);
// U m U^dagger where U acts on the single site at position `pos` of `order`.
Matrix conjugate_site(const Matrix& m, std::size_t num_sites, std::size_t pos, const Matrix& u,
                      int local_dim);
// U m U^dagger with U = u[0] (x) u[1] (x) ...; one unitary per site.
Matrix conjugate_product(const Matrix& m, const std::vector<Matrix>& u, int local_dim);

DensityOperator partial_trace(const DensityOperator& op, const Region& keep);
// Tensor product of operators on disjoint regions.
DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);

double entropy_from_eigenvalues(const RealVector& w, LogBase base = LogBase::two);
double entropy(const Matrix& m, LogBase base = LogBase::two);
double entropy(const DensityOperator& op, LogBase base = LogBase::two);
// I(A:C|B) = S(AB) + S(BC) - S(B) - S(ABC).
double cmi(const DensityOperator& op, const Region& a, const Region& b, const Region& c,
           LogBase base = LogBase::two);

double trace_distance(const DensityOperator& a, const DensityOperator& b);

struct DistanceEstimate {
  double value = 0.0;
  bool upper_bound = false;  // value is 0.5 sqrt(D) ||a-b||_F rather than exact
};

// Exact for dimension <= 1024. Above that, returns the Frobenius upper bound
// when it already certifies value <= tol, and the exact value otherwise.
DistanceEstimate trace_distance_within(const DensityOperator& a, const DensityOperator& b,
                                       double tol);

Matrix sqrt_psd(const Matrix& m);
Matrix pinv_sqrt_psd(const Matrix& m);

// Entropies of reductions, from whatever source can provide them.
class EntropyProvider {
 public:
  virtual ~EntropyProvider() = default;
  virtual double entropy(const Region& r, LogBase base) const = 0;
  virtual bool available(const Region& r) const = 0;
};

// Reduces a global state; memoizes per region.
class StateEntropyProvider : public EntropyProvider {
 public:
  explicit StateEntropyProvider(DensityOperator state);
  double entropy(const Region& r, LogBase base) const override;
  bool available(const Region& r) const override;
  const DensityOperator& state() const { return state_; }

 private:
  DensityOperator state_;
  mutable std::mutex mutex_;
  mutable std::map<Region, double> nats_;
};

struct MedTerm {
  Region block;
  Region conditioning;
  double value = 0.0;  // S(block | conditioning)
};

std::vector<MedTerm> med_terms(const EntropyProvider& provider, const BlockPath& path,
                               LogBase base = LogBase::two);
// Markov entropy decomposition: sum_k S(block_k | N(block_k) & V_{k-1}).
double med(const EntropyProvider& provider, const BlockPath& path, LogBase base = LogBase::two);

}  // namespace snakeweaver
