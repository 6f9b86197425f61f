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

#include <string>
#include <vector>

#include "snakeweaver/operator_core.hpp"

namespace snakeweaver {

struct MergeDiagnostics {
  Region overlap;
  // Trace of the merged operator before renormalization.
  double trace_before = 1.0;
  // Weight of sigma_B outside the numerical support of rho_B.
  double dropped_weight = 0.0;
  // Factor did not overlap the accumulated support; merged by tensor product.
  bool tensor_extension = false;
};

// sigma_AB merged with rho_BC: rho_BC^{1/2} rho_B^{-1/2} sigma_AB rho_B^{-1/2} rho_BC^{1/2},
// with B = overlap of the two supports. Output is Hermitized, renormalized
// and canonically ordered.
DensityOperator right_merge(const DensityOperator& sigma, const DensityOperator& rho,
                            MergeDiagnostics* diag = nullptr);

struct MergeExpression {
  DensityOperator initial;
  std::vector<DensityOperator> factors;
};

// ((initial |> f1) |> f2) ... strictly left-associated.
DensityOperator merge_product(const MergeExpression& expr,
                              std::vector<MergeDiagnostics>* steps = nullptr);

struct RecoveryCheck {
  bool markov = false;
  double residual = 0.0;  // trace distance between rho_ABC and its Petz recovery
  double cmi = 0.0;       // I(A:C|B) in the requested base
  bool cmi_agrees = false;
};

RecoveryCheck is_markov_via_recovery(const DensityOperator& op, const Region& a, const Region& b,
                                     const Region& c, double tol, LogBase base = LogBase::two);

struct MergingLemmaOptions {
  double tol = 1e-8;
  // Record violated preconditions instead of throwing.
  bool warn_only = false;
  LogBase base = LogBase::two;
};

struct MergingLemmaResult {
  DensityOperator tau;
  double overlap_distance = 0.0;  // rho_BC vs sigma_BC
  double cmi_rho = 0.0;           // I(A:C|B) of rho
  double cmi_sigma = 0.0;         // I(B:D|C) of sigma
  std::vector<std::string> warnings;
};

// Combines rho on ABC and sigma on BCD, where B and C split their overlap,
// into tau = rho_ABC merged with sigma_CD.
MergingLemmaResult merging_lemma_combine(const DensityOperator& rho, const DensityOperator& sigma,
                                         const Region& b, const Region& c,
                                         const MergingLemmaOptions& opts = {});

}  // namespace snakeweaver
