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

#include "snakeweaver/merge.hpp"

#include <cmath>

#include "snakeweaver/errors.hpp"

namespace snakeweaver {
namespace {

Matrix kron_identity_right(const Matrix& x, Eigen::Index dc) {
  Matrix out = Matrix::Zero(x.rows() * dc, x.cols() * dc);
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      if (x(i, j) == Complex(0.0)) continue;
      for (Eigen::Index c = 0; c < dc; ++c) out(i * dc + c, j * dc + c) = x(i, j);
    }
  }
  return out;
}

std::vector<Vertex> concat(const Region& a, const Region& b) {
  std::vector<Vertex> out = a.sites();
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

DensityOperator right_merge(const DensityOperator& sigma, const DensityOperator& rho,
                            MergeDiagnostics* diag) {
  if (sigma.local_dim() != rho.local_dim()) throw RegionError("merge of different local dimensions");
  const int d = sigma.local_dim();
  const Region b = sigma.region().intersect(rho.region());
  if (b.empty()) throw RegionError("right merge needs overlapping supports");
  const Region a = sigma.region().minus(b);
  const Region c = rho.region().minus(b);
  const Region all = sigma.region().unite(rho.region());
  guarded_dimension(d, all.size());

  const auto da = static_cast<Eigen::Index>(hilbert_dimension(d, a.size()));
  const auto db = static_cast<Eigen::Index>(hilbert_dimension(d, b.size()));
  const auto dc = static_cast<Eigen::Index>(hilbert_dimension(d, c.size()));
  const Eigen::Index dbc = db * dc;

  const Matrix s_ab = reorder_matrix(sigma.matrix(), sigma.region().sites(), concat(a, b), d);
  const Matrix r_bc = reorder_matrix(rho.matrix(), rho.region().sites(), concat(b, c), d);
  const Matrix r_b = partial_trace_matrix(rho.matrix(), rho.region().sites(), b, d);

  const Matrix inv_sqrt_b = pinv_sqrt_psd(r_b);
  const Matrix support_b = inv_sqrt_b * sqrt_psd(r_b);
  const Matrix s_b = partial_trace_matrix(sigma.matrix(), sigma.region().sites(), b, d);
  const double kept = (support_b * s_b).trace().real();
  if (kept <= 1e-12) {
    throw ConsistencyError("sigma_B has no weight on the support of rho_B over " + to_string(b));
  }

  // K = rho_BC^{1/2} (rho_B^{-1/2} (x) I_C), in (B, C) order.
  const Matrix k = sqrt_psd(r_bc) * kron_identity_right(inv_sqrt_b, dc);

  // out_{a a'} = sum_c K_c S_{a a'} K_c^dagger, where K_c holds the columns of
  // K with C index c and S_{a a'} is the (a, a') block of sigma_AB.
  Matrix out = Matrix::Zero(da * dbc, da * dbc);
  Matrix kc(dbc, db);
  Matrix y(da * db, da * dbc);
  for (Eigen::Index ci = 0; ci < dc; ++ci) {
    for (Eigen::Index bi = 0; bi < db; ++bi) kc.col(bi) = k.col(bi * dc + ci);
    const Matrix kc_adj = kc.adjoint();
    for (Eigen::Index a2 = 0; a2 < da; ++a2) {
      y.middleCols(a2 * dbc, dbc).noalias() = s_ab.middleCols(a2 * db, db) * kc_adj;
    }
    for (Eigen::Index a1 = 0; a1 < da; ++a1) {
      out.middleRows(a1 * dbc, dbc).noalias() += kc * y.middleRows(a1 * db, db);
    }
  }
  y.resize(0, 0);

  std::vector<Vertex> order = concat(a, b);
  order.insert(order.end(), c.begin(), c.end());
  out = reorder_matrix(out, order, all.sites(), d);
  hermitize(out);
  const double tr = real_trace(out);
  if (!(tr > 0.0)) throw InvalidStateError("right merge produced a zero-trace operator");
  out /= tr;
  if (diag) {
    diag->overlap = b;
    diag->trace_before = tr;
    diag->dropped_weight = std::max(0.0, 1.0 - kept);
    diag->tensor_extension = false;
  }
  return DensityOperator(all, d, std::move(out), Validation::cheap);
}

DensityOperator merge_product(const MergeExpression& expr, std::vector<MergeDiagnostics>* steps) {
  DensityOperator cur = expr.initial;
  for (const auto& f : expr.factors) {
    MergeDiagnostics diag;
    if (!cur.region().intersects(f.region())) {
      cur = tensor(cur, f);
      diag.tensor_extension = true;
    } else {
      cur = right_merge(cur, f, &diag);
    }
    if (steps) steps->push_back(std::move(diag));
  }
  return cur;
}

RecoveryCheck is_markov_via_recovery(const DensityOperator& op, const Region& a, const Region& b,
                                     const Region& c, double tol, LogBase base) {
  if (a.intersects(b) || a.intersects(c) || b.intersects(c)) {
    throw RegionError("recovery check needs pairwise disjoint regions");
  }
  const DensityOperator abc = partial_trace(op, a.unite(b).unite(c));
  const DensityOperator ab = partial_trace(abc, a.unite(b));
  const DensityOperator bc = partial_trace(abc, b.unite(c));
  const DensityOperator recovered = b.empty() ? tensor(ab, bc) : right_merge(ab, bc);
  RecoveryCheck out;
  out.residual = trace_distance_within(abc, recovered, tol).value;
  out.cmi = cmi(abc, a, b, c, base);
  out.markov = out.residual <= tol;
  out.cmi_agrees = (out.cmi <= tol) == out.markov;
  return out;
}

MergingLemmaResult merging_lemma_combine(const DensityOperator& rho, const DensityOperator& sigma,
                                         const Region& b, const Region& c,
                                         const MergingLemmaOptions& opts) {
  const Region bc = b.unite(c);
  if (b.intersects(c)) throw RegionError("B and C must be disjoint");
  if (rho.region().intersect(sigma.region()) != bc) {
    throw RegionError("B and C must partition the overlap of the two supports");
  }
  const Region a = rho.region().minus(bc);
  const Region dd = sigma.region().minus(bc);
  std::vector<std::string> warnings;
  auto violated = [&](const std::string& msg) {
    if (!opts.warn_only) throw ConsistencyError(msg);
    warnings.push_back(msg);
  };
  const double overlap = trace_distance(partial_trace(rho, bc), partial_trace(sigma, bc));
  if (overlap > opts.tol) violated("inputs disagree on the overlap: " + std::to_string(overlap));
  const double cmi_rho = cmi(rho, a, b, c, opts.base);
  if (cmi_rho > opts.tol) violated("I(A:C|B) of rho is " + std::to_string(cmi_rho));
  const double cmi_sigma = cmi(sigma, b, c, dd, opts.base);
  if (cmi_sigma > opts.tol) violated("I(B:D|C) of sigma is " + std::to_string(cmi_sigma));
  DensityOperator tau = right_merge(rho, partial_trace(sigma, c.unite(dd)));
  return {std::move(tau), overlap, cmi_rho, cmi_sigma, std::move(warnings)};
}

}  // namespace snakeweaver
