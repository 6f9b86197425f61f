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
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "snakeweaver/lattice.hpp"
#include "snakeweaver/operator_core.hpp"
#include "snakeweaver/report.hpp"

namespace snakeweaver {

// One of the eight conditional-independence conditions I(A:C|B)=0 attached to
// a 3x3 cluster. Indices 0-3 are the base patterns, 4-7 their pi-rotations.
struct CmCondition {
  Vertex anchor;
  int index = 0;
  Region a, b, c;

  Region support() const { return a.unite(b).unite(c); }
  std::string label() const;
};

// Local-coordinate patterns (A, B, C) of the four base conditions.
struct CmPattern {
  std::vector<LocalCoord> a, b, c;
};
const std::vector<CmPattern>& c_m_base_patterns();

// The eight conditions of the 3x3 cluster anchored at `anchor`.
std::vector<CmCondition> c_m_conditions(const Vertex& anchor);
// Same, but the cluster must lie inside the window.
std::vector<CmCondition> c_m_conditions(const Window& window, const Vertex& anchor);

struct MarginalSetMetadata {
  LogBase log_base = LogBase::two;
  std::optional<std::uint64_t> seed;
  std::string generator;
};

// Fundamental 3x3 marginals over a finite window, one per inside cluster.
class MarginalSet {
 public:
  MarginalSet(Window window, int local_dim, std::map<Vertex, DensityOperator> marginals,
              MarginalSetMetadata meta = {});

  const Window& window() const { return window_; }
  int local_dim() const { return local_dim_; }
  const std::map<Vertex, DensityOperator>& marginals() const { return marginals_; }
  const DensityOperator& marginal(const Vertex& anchor) const;
  const MarginalSetMetadata& metadata() const { return meta_; }
  MarginalSet with_marginal(const Vertex& anchor, DensityOperator op) const;

  // Anchors of the stored clusters containing r, canonical order.
  std::vector<Vertex> parents(const Region& r) const;
  bool covers(const Region& r) const { return !parents(r).empty(); }

  // Reduction from the first parent; every other parent must agree within
  // tol in trace distance. Results are memoized.
  DensityOperator derived_marginal(const Region& r, double tol = 1e-8) const;
  // Reduction from the first parent only.
  DensityOperator derived_marginal_unchecked(const Region& r) const;

 private:
  Window window_;
  int local_dim_ = 2;
  std::map<Vertex, DensityOperator> marginals_;
  MarginalSetMetadata meta_;
  struct Cache {
    std::mutex mutex;
    std::map<Region, DensityOperator> derived;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

// Entropies of derived marginals, memoized.
class MarginalSetEntropyProvider : public EntropyProvider {
 public:
  explicit MarginalSetEntropyProvider(const MarginalSet& ms, double tol = 1e-8)
      : ms_(ms), tol_(tol) {}
  double entropy(const Region& r, LogBase base) const override;
  bool available(const Region& r) const override;

 private:
  const MarginalSet& ms_;
  double tol_;
  mutable std::mutex mutex_;
  mutable std::map<Region, double> nats_;
};

CheckReport check_markov_conditions(const MarginalSet& ms, double tol = 1e-8,
                                    LogBase base = LogBase::two);

// Adjacent cluster pairs by default; every overlapping pair with full_pairwise.
CheckReport check_local_consistency(const MarginalSet& ms, double tol = 1e-8,
                                    bool full_pairwise = false);

}  // namespace snakeweaver
