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

#include "snakeweaver/reconstruct.hpp"

#include <cmath>

#include "snakeweaver/errors.hpp"
#include "snakeweaver/parallel.hpp"
#include "snakeweaver/snakes.hpp"

namespace snakeweaver {
namespace {

Region row(const Window& w, int y) { return cluster_region({w.width - 1, y}, w.width, 1); }

}  // namespace

ReconstructionResult reconstruct_global(const MarginalSet& ms, const ReconstructionOptions& opts) {
  const Window& w = ms.window();
  const int d = ms.local_dim();
  guarded_dimension(d, w.num_sites());

  CheckReport pre("preconditions");
  const CheckReport markov = check_markov_conditions(ms, opts.tol_cmi, opts.base);
  const CheckReport consistency = check_local_consistency(ms, opts.tol_consistency);
  if (!markov.passed()) {
    pre.warn("Markov conditions violated (" + std::to_string(markov.failures()) +
             " failures, max residual " + std::to_string(markov.max_residual()) + ")");
  }
  if (!consistency.passed()) {
    pre.warn("local consistency violated (" + std::to_string(consistency.failures()) +
             " failures, max residual " + std::to_string(consistency.max_residual()) + ")");
  }
  pre.append(markov);
  pre.append(consistency);

  const Vertex left{0, 0};
  const Vertex right{w.width - 1, 0};
  DensityOperator tau = build_snake(ms, {2, left, right}, opts.tol_derived);
  std::vector<MergeDiagnostics> merges;
  for (int y = 1; y + 1 < w.height; ++y) {
    MergeDiagnostics diag;
    tau = right_merge(tau, build_snake(ms, {2, left + Vertex{0, y}, right + Vertex{0, y}}, opts.tol_derived),
                      &diag);
    merges.push_back(std::move(diag));
  }

  ReconstructionResult result{tau, CheckReport{"step_cmi"}, CheckReport{"marginal_fidelity"}, std::move(pre),
                              std::move(merges), 0.0, false};

  const auto anchors = w.cluster_anchors();
  std::vector<double> fid(anchors.size());
  parallel_for(anchors.size(), [&](std::size_t i) {
    const DensityOperator& m = ms.marginal(anchors[i]);
    fid[i] = trace_distance(partial_trace(tau, m.region()), m);
  });
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    result.fidelity.add("fidelity/" + std::to_string(anchors[i].x) + "," + std::to_string(anchors[i].y),
                        {{"cluster", cluster_region(anchors[i], 3, 3)}}, fid[i], opts.tol_fidelity);
  }

  StateEntropyProvider provider(tau);
  if (opts.step_residuals) {
    for (int y = 1; y + 1 < w.height; ++y) {
      const Region a = row(w, y - 1), b = row(w, y), c = row(w, y + 1);
      const double value = provider.entropy(a.unite(b), opts.base) +
                           provider.entropy(b.unite(c), opts.base) - provider.entropy(b, opts.base) -
                           provider.entropy(a.unite(b).unite(c), opts.base);
      result.step_cmi.add("step/" + std::to_string(y), {{"A", a}, {"B", b}, {"C", c}}, value,
                          opts.tol_cmi);
    }
  }
  if (opts.compute_entropy) {
    result.entropy = provider.entropy(w.region(), opts.base);
    result.entropy_computed = true;
  }
  return result;
}

CheckReport vertical_markov_check(const MarginalSet& ms, double tol, LogBase base) {
  const Window& w = ms.window();
  if (w.height < 3) throw GeometryError("vertical Markov check needs at least three rows");
  CheckReport report("vertical_markov");
  for (int y = 0; y + 2 < w.height; ++y) {
    const DensityOperator slab = build_snake(ms, {3, {0, y}, {w.width - 1, y}});
    StateEntropyProvider p(slab);
    const Region a = row(w, y), b = row(w, y + 1), c = row(w, y + 2);
    const double value = p.entropy(a.unite(b), base) + p.entropy(b.unite(c), base) -
                         p.entropy(b, base) - p.entropy(slab.region(), base);
    report.add("vertical/" + std::to_string(y), {{"A", a}, {"B", b}, {"C", c}}, value, tol);
  }
  return report;
}

FormulaResult max_entropy_formula_terms(const EntropyProvider& provider, const Window& window,
                                        LogBase base) {
  const Region all = window.region();
  auto s = [&](const Region& r) {
    const Region clipped = r.intersect(all);
    return clipped.empty() ? 0.0 : provider.entropy(clipped, base);
  };
  FormulaResult out;
  for (int y = -1; y <= window.height - 1; ++y) {
    for (int x = 0; x <= window.width; ++x) {
      const Vertex v{x, y};
      FormulaTerm t;
      t.v = v;
      t.s22 = s(cluster_region(v, 2, 2));
      t.s21 = s(cluster_region(v, 2, 1));
      t.s12 = s(cluster_region(v, 1, 2));
      t.s11 = s(cluster_region(v, 1, 1));
      t.value = t.s22 - t.s21 - t.s12 + t.s11;
      out.value += t.value;
      out.terms.push_back(t);
    }
  }
  return out;
}

double max_entropy_formula(const EntropyProvider& provider, const Window& window, LogBase base) {
  return max_entropy_formula_terms(provider, window, base).value;
}

double max_entropy_formula(const MarginalSet& ms, LogBase base) {
  MarginalSetEntropyProvider provider(ms);
  return max_entropy_formula(provider, ms.window(), base);
}

double row_path_med(const EntropyProvider& provider, const Window& window, LogBase base) {
  return med(provider, BlockPath::row_major(window), base);
}

UniquenessCertificate uniqueness_certificate(const DensityOperator& rho, const DensityOperator& sigma,
                                             const BlockPath& path, double tol) {
  if (rho.region() != sigma.region() || rho.local_dim() != sigma.local_dim()) {
    throw RegionError("uniqueness certificate needs states on the same region");
  }
  UniquenessCertificate cert;
  CheckReport& rep = cert.report;
  for (std::size_t k = 0; k < path.size(); ++k) {
    const Region r = path.blocks()[k].unite(path.conditioning(k));
    const auto d = trace_distance_within(partial_trace(rho, r), partial_trace(sigma, r), tol);
    rep.add("uniqueness/marginal/" + std::to_string(k), {{"region", r}}, d.value, tol, d.upper_bound);
  }
  StateEntropyProvider prho(rho), psigma(sigma);
  const Region all = rho.region();
  const double s_rho = prho.entropy(all, LogBase::e);
  const double s_sigma = psigma.entropy(all, LogBase::e);
  cert.entropy_rho = from_nats(s_rho, LogBase::two);
  cert.entropy_sigma = from_nats(s_sigma, LogBase::two);
  cert.med_value = med(prho, path, LogBase::two);
  rep.add("uniqueness/entropy_rho_vs_med", {}, std::abs(cert.entropy_rho - cert.med_value), tol);
  rep.add("uniqueness/entropy_sigma_vs_med", {}, std::abs(cert.entropy_sigma - cert.med_value), tol);
  cert.hypotheses_hold = rep.passed();
  if (!cert.hypotheses_hold) {
    rep.warn("hypotheses of the uniqueness bound fail; no distance claim");
    return cert;
  }
  const Matrix mix = 0.5 * (rho.matrix() + sigma.matrix());
  cert.gap_nats = entropy(mix, LogBase::e) - 0.5 * (s_rho + s_sigma);
  cert.bound = std::sqrt(8.0 * std::max(cert.gap_nats, 0.0));
  const auto d = trace_distance_within(rho, sigma, cert.bound + tol);
  cert.distance = d.value;
  cert.distance_claimed = true;
  rep.add("uniqueness/distance", {}, cert.distance, cert.bound + tol, d.upper_bound);
  return cert;
}

double local_energy(const MarginalSet& ms, const std::vector<std::pair<Region, Matrix>>& terms) {
  double e = 0.0;
  for (const auto& [r, h] : terms) {
    const DensityOperator m = ms.derived_marginal(r);
    if (h.rows() != m.matrix().rows() || h.cols() != m.matrix().cols()) {
      throw RegionError("local term on " + to_string(r) + " has the wrong dimension");
    }
    e += (h * m.matrix()).trace().real();
  }
  return e;
}

}  // namespace snakeweaver
