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

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "snakeweaver/marginal_store.hpp"
#include "snakeweaver/merge.hpp"
#include "snakeweaver/report.hpp"

namespace snakeweaver {

struct ReconstructionOptions {
  double tol_cmi = 1e-8;
  double tol_consistency = 1e-8;
  // Marginal fidelity of the reconstructed state.
  double tol_fidelity = 1e-6;
  // Agreement required between parents of a derived marginal; infinity
  // disables cross-validation (forced runs on inconsistent input).
  double tol_derived = 1e-8;
  bool compute_entropy = true;
  bool step_residuals = true;
  LogBase base = LogBase::two;
};

struct ReconstructionResult {
  DensityOperator state;
  // I(row y-1 : row y+1 | row y) of the state for each vertical merge.
  CheckReport step_cmi{"step_cmi"};
  CheckReport fidelity{"marginal_fidelity"};
  CheckReport preconditions{"preconditions"};
  std::vector<MergeDiagnostics> merges;
  double entropy = 0.0;
  bool entropy_computed = false;
};

// Level-2 snake on rows 0-1 across the window, then right-merges of the
// level-2 snakes on rows (y, y+1) for y = 1..H-2.
ReconstructionResult reconstruct_global(const MarginalSet& ms, const ReconstructionOptions& opts = {});

// I(row y : row y+2 | row y+1) of the full-width level-3 snake on each slab.
CheckReport vertical_markov_check(const MarginalSet& ms, double tol = 1e-8,
                                  LogBase base = LogBase::two);

struct FormulaTerm {
  Vertex v;
  double s22 = 0.0, s21 = 0.0, s12 = 0.0, s11 = 0.0;
  double value = 0.0;  // s22 - s21 - s12 + s11
};

struct FormulaResult {
  double value = 0.0;
  std::vector<FormulaTerm> terms;
};

// Sum over v of S(2x2@v) - S(2x1@v) - S(1x2@v) + S(1x1@v), with every cluster
// clipped to the window (sites outside are a pure product boundary).
FormulaResult max_entropy_formula_terms(const EntropyProvider& provider, const Window& window,
                                        LogBase base = LogBase::two);
double max_entropy_formula(const EntropyProvider& provider, const Window& window,
                           LogBase base = LogBase::two);
double max_entropy_formula(const MarginalSet& ms, LogBase base = LogBase::two);

// MED over the window sites row by row; each site conditions on its west and
// south neighbors.
double row_path_med(const EntropyProvider& provider, const Window& window,
                    LogBase base = LogBase::two);

struct UniquenessCertificate {
  CheckReport report{"uniqueness"};
  bool hypotheses_hold = false;
  double entropy_rho = 0.0;  // bits
  double entropy_sigma = 0.0;
  double med_value = 0.0;
  double gap_nats = 0.0;  // S((rho+sigma)/2) - (S(rho)+S(sigma))/2
  double distance = 0.0;  // trace distance
  double bound = 0.0;     // sqrt(8 gap)
  bool distance_claimed = false;
};

// Checks the hypotheses of the max-entropy uniqueness bound (equal marginals
// on every MED term, S(rho) = S(sigma) = MED) and then the distance bound.
UniquenessCertificate uniqueness_certificate(const DensityOperator& rho, const DensityOperator& sigma,
                                             const BlockPath& path, double tol = 1e-7);

// Sum of Tr(h rho_r) over local terms, from derived marginals.
double local_energy(const MarginalSet& ms, const std::vector<std::pair<Region, Matrix>>& terms);

}  // namespace snakeweaver
