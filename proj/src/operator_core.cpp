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

#include "snakeweaver/operator_core.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>

#include "snakeweaver/errors.hpp"

namespace snakeweaver {
namespace {

std::atomic<std::size_t>& guard_setting() {
  static std::atomic<std::size_t> g{std::size_t{1} << 14};
  return g;
}

std::vector<std::size_t> powers(int d, std::size_t n) {
  // powers[k] = d^(n-1-k): weight of the k-th factor.
  std::vector<std::size_t> p(n);
  std::size_t w = 1;
  for (std::size_t k = n; k-- > 0;) {
    p[k] = w;
    w *= static_cast<std::size_t>(d);
  }
  return p;
}

std::size_t position_in(const std::vector<Vertex>& order, const Vertex& v) {
  auto it = std::find(order.begin(), order.end(), v);
  if (it == order.end()) throw RegionError("site " + to_string(v) + " not in operator support");
  return static_cast<std::size_t>(it - order.begin());
}

// For each full index: its index in the kept factors and in the traced ones.
struct Split {
  std::vector<std::size_t> kept;
  std::vector<std::size_t> traced;
  std::size_t kept_dim = 1;
  std::size_t traced_dim = 1;
};

Split split_indices(const std::vector<Vertex>& order, const Region& keep, int d) {
  const std::size_t n = order.size();
  std::vector<std::size_t> keep_pos;
  for (const auto& v : keep) keep_pos.push_back(position_in(order, v));
  std::vector<bool> is_kept(n, false);
  for (auto p : keep_pos) is_kept[p] = true;
  std::vector<std::size_t> traced_pos;
  for (std::size_t p = 0; p < n; ++p) {
    if (!is_kept[p]) traced_pos.push_back(p);
  }
  const auto full_w = powers(d, n);
  const auto keep_w = powers(d, keep_pos.size());
  const auto trace_w = powers(d, traced_pos.size());
  Split s;
  s.kept_dim = hilbert_dimension(d, keep_pos.size());
  s.traced_dim = hilbert_dimension(d, traced_pos.size());
  const std::size_t dim = s.kept_dim * s.traced_dim;
  s.kept.assign(dim, 0);
  s.traced.assign(dim, 0);
  for (std::size_t i = 0; i < dim; ++i) {
    std::size_t k = 0, t = 0;
    for (std::size_t j = 0; j < keep_pos.size(); ++j) {
      k += ((i / full_w[keep_pos[j]]) % d) * keep_w[j];
    }
    for (std::size_t j = 0; j < traced_pos.size(); ++j) {
      t += ((i / full_w[traced_pos[j]]) % d) * trace_w[j];
    }
    s.kept[i] = k;
    s.traced[i] = t;
  }
  return s;
}

// slots[t * kept_dim + k] = full index with traced part t and kept part k.
std::vector<std::size_t> slots(const Split& s) {
  std::vector<std::size_t> out(s.kept.size());
  for (std::size_t i = 0; i < s.kept.size(); ++i) out[s.traced[i] * s.kept_dim + s.kept[i]] = i;
  return out;
}

}  // namespace

double from_nats(double nats, LogBase base) {
  return base == LogBase::two ? nats / std::log(2.0) : nats;
}

LogBase parse_log_base(const std::string& s) {
  if (s == "2" || s == "bits") return LogBase::two;
  if (s == "e" || s == "nats") return LogBase::e;
  throw FormatError("unknown log base '" + s + "' (expected 2 or e)");
}

std::string to_string(LogBase base) { return base == LogBase::two ? "2" : "e"; }

std::size_t dense_guard() { return guard_setting().load(); }

void set_dense_guard(std::size_t max_dim) { guard_setting().store(max_dim); }

std::size_t hilbert_dimension(int local_dim, std::size_t num_sites) {
  std::size_t dim = 1;
  for (std::size_t i = 0; i < num_sites; ++i) {
    if (dim > std::numeric_limits<std::size_t>::max() / static_cast<std::size_t>(local_dim)) {
      throw DimensionGuardError("Hilbert space dimension overflows");
    }
    dim *= static_cast<std::size_t>(local_dim);
  }
  return dim;
}

std::size_t guarded_dimension(int local_dim, std::size_t num_sites) {
  std::size_t dim = 0;
  try {
    dim = hilbert_dimension(local_dim, num_sites);
  } catch (const DimensionGuardError&) {
    dim = std::numeric_limits<std::size_t>::max();
  }
  if (dim > dense_guard()) {
    throw DimensionGuardError("dense operator on " + std::to_string(num_sites) + " sites of dimension " +
                              std::to_string(local_dim) + " exceeds the dense guard of " +
                              std::to_string(dense_guard()));
  }
  return dim;
}

DensityOperator::DensityOperator(Region region, int local_dim, Matrix matrix, Validation v)
    : region_(std::move(region)), local_dim_(local_dim) {
  if (local_dim < 2) throw InvalidStateError("local dimension must be at least 2");
  const std::size_t dim = guarded_dimension(local_dim, region_.size());
  if (matrix.rows() != matrix.cols() || static_cast<std::size_t>(matrix.rows()) != dim) {
    throw InvalidStateError("matrix of size " + std::to_string(matrix.rows()) + "x" +
                            std::to_string(matrix.cols()) + " does not match dimension " +
                            std::to_string(dim) + " of region " + to_string(region_));
  }
  if (v != Validation::trusted) {
    const double defect = hermiticity_defect(matrix);
    if (defect > kStateTol) {
      throw InvalidStateError("matrix is not Hermitian (defect " + std::to_string(defect) + ")");
    }
    hermitize(matrix);
    const double tr = real_trace(matrix);
    if (std::abs(tr - 1.0) > kStateTol) {
      throw InvalidStateError("trace " + std::to_string(tr) + " differs from 1");
    }
    if (v != Validation::preserve) matrix /= tr;
  }
  if (v == Validation::full || v == Validation::preserve) {
    RealVector w = eigvalsh(matrix);
    const double lo = w.size() ? w[0] : 0.0;
    if (lo < -kNegativityAbort) {
      throw InvalidStateError("eigenvalue " + std::to_string(lo) + " is below the repair threshold");
    }
    if (lo < (v == Validation::preserve ? -kStateTol : 0.0)) {
      auto es = eigh(matrix);
      matrix = hermitian_function(es, [](double x) { return std::max(x, 0.0); });
      hermitize(matrix);
      matrix /= real_trace(matrix);
    }
  }
  matrix_ = std::make_shared<const Matrix>(std::move(matrix));
}

DensityOperator DensityOperator::maximally_mixed(const Region& region, int local_dim) {
  const auto dim = static_cast<Eigen::Index>(guarded_dimension(local_dim, region.size()));
  return DensityOperator(region, local_dim, Matrix::Identity(dim, dim) / static_cast<double>(dim),
                         Validation::trusted);
}

DensityOperator DensityOperator::pure(const Region& region, int local_dim, const CVector& psi) {
  CVector v = psi / psi.norm();
  return DensityOperator(region, local_dim, v * v.adjoint(), Validation::cheap);
}

Matrix reorder_matrix(const Matrix& m, const std::vector<Vertex>& from,
                      const std::vector<Vertex>& to, int local_dim) {
  if (from == to) return m;
  if (from.size() != to.size()) throw RegionError("reorder between different site sets");
  const std::size_t n = from.size();
  const auto w = powers(local_dim, n);
  std::vector<std::size_t> src_pos(n);
  for (std::size_t p = 0; p < n; ++p) src_pos[p] = position_in(from, to[p]);
  const std::size_t dim = static_cast<std::size_t>(m.rows());
  std::vector<Eigen::Index> perm(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    std::size_t src = 0;
    for (std::size_t p = 0; p < n; ++p) src += ((j / w[p]) % local_dim) * w[src_pos[p]];
    perm[j] = static_cast<Eigen::Index>(src);
  }
  Matrix out(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) out(i, j) = m(perm[i], perm[j]);
  }
  return out;
}

Matrix partial_trace_matrix(const Matrix& m, const std::vector<Vertex>& order, const Region& keep,
                            int local_dim) {
  if (keep.size() == order.size()) return reorder_matrix(m, order, keep.sites(), local_dim);
  const Split s = split_indices(order, keep, local_dim);
  const auto slot = slots(s);
  const auto kd = static_cast<Eigen::Index>(s.kept_dim);
  Matrix out = Matrix::Zero(kd, kd);
  for (std::size_t t = 0; t < s.traced_dim; ++t) {
    const std::size_t* idx = slot.data() + t * s.kept_dim;
    for (Eigen::Index b = 0; b < kd; ++b) {
      for (Eigen::Index a = 0; a < kd; ++a) out(a, b) += m(idx[a], idx[b]);
    }
  }
  return out;
}

Matrix embed_identity(const Matrix& m, const Region& sub, const Region& full, int local_dim) {
  if (!full.contains(sub)) throw RegionError("embedding region is not a subset");
  const Split s = split_indices(full.sites(), sub, local_dim);
  const auto slot = slots(s);
  const auto dim = static_cast<Eigen::Index>(s.kept.size());
  Matrix out = Matrix::Zero(dim, dim);
  for (std::size_t t = 0; t < s.traced_dim; ++t) {
    const std::size_t* idx = slot.data() + t * s.kept_dim;
    for (std::size_t b = 0; b < s.kept_dim; ++b) {
      for (std::size_t a = 0; a < s.kept_dim; ++a) out(idx[a], idx[b]) = m(a, b);
    }
  }
  return out;
}

namespace {

// Replaces every column c of m by (u[0] (x) u[1] (x) ...) c, site by site
// while the column is in cache.
void left_multiply_product(Matrix& m, const std::vector<const Matrix*>& u, int local_dim) {
  const auto d = static_cast<Eigen::Index>(local_dim);
  const Eigen::Index dim = m.rows();
  const std::size_t n = u.size();
  std::vector<Complex> in(d), acc(d);
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    Complex* col = m.col(j).data();
    Eigen::Index stride = dim;
    for (std::size_t k = 0; k < n; ++k) {
      stride /= d;
      if (!u[k]) continue;
      const Matrix& uk = *u[k];
      for (Eigen::Index off = 0; off < dim; off += d * stride) {
        for (Eigen::Index lo = 0; lo < stride; ++lo) {
          for (Eigen::Index b = 0; b < d; ++b) in[b] = col[off + b * stride + lo];
          for (Eigen::Index a = 0; a < d; ++a) {
            Complex s = 0.0;
            for (Eigen::Index b = 0; b < d; ++b) s += uk(a, b) * in[b];
            acc[a] = s;
          }
          for (Eigen::Index a = 0; a < d; ++a) col[off + a * stride + lo] = acc[a];
        }
      }
    }
  }
}

Matrix conjugate_with(const Matrix& m, const std::vector<const Matrix*>& u, int local_dim) {
  // U m U^dagger = (U (U m)^dagger)^dagger
  Matrix half = m;
  left_multiply_product(half, u, local_dim);
  Matrix adj = half.adjoint();
  half.resize(0, 0);
  left_multiply_product(adj, u, local_dim);
  return adj.adjoint();
}

}  // namespace

Matrix conjugate_site(const Matrix& m, std::size_t num_sites, std::size_t pos, const Matrix& u,
                      int local_dim) {
  std::vector<const Matrix*> us(num_sites, nullptr);
  us[pos] = &u;
  return conjugate_with(m, us, local_dim);
}

Matrix conjugate_product(const Matrix& m, const std::vector<Matrix>& u, int local_dim) {
  std::vector<const Matrix*> us;
  for (const auto& x : u) us.push_back(&x);
  return conjugate_with(m, us, local_dim);
}

DensityOperator partial_trace(const DensityOperator& op, const Region& keep) {
  if (!op.region().contains(keep)) {
    throw RegionError("partial trace target " + to_string(keep) + " is not inside " +
                      to_string(op.region()));
  }
  if (keep == op.region()) return op;
  return DensityOperator(keep, op.local_dim(),
                         partial_trace_matrix(op.matrix(), op.region().sites(), keep, op.local_dim()),
                         Validation::trusted);
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  if (a.region().intersects(b.region())) throw RegionError("tensor factors overlap");
  if (a.local_dim() != b.local_dim()) throw RegionError("tensor factors differ in local dimension");
  const Region all = a.region().unite(b.region());
  guarded_dimension(a.local_dim(), all.size());
  const Matrix& ma = a.matrix();
  const Matrix& mb = b.matrix();
  const Eigen::Index da = ma.rows(), db = mb.rows();
  Matrix k(da * db, da * db);
  for (Eigen::Index j = 0; j < da; ++j) {
    for (Eigen::Index i = 0; i < da; ++i) k.block(i * db, j * db, db, db) = ma(i, j) * mb;
  }
  std::vector<Vertex> order = a.region().sites();
  order.insert(order.end(), b.region().begin(), b.region().end());
  return DensityOperator(all, a.local_dim(), reorder_matrix(k, order, all.sites(), a.local_dim()),
                         Validation::trusted);
}

double entropy_from_eigenvalues(const RealVector& w, LogBase base) {
  if (w.size() == 0) return 0.0;
  const double cutoff = kSupportCutoff * w.maxCoeff();
  double s = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w[i] > cutoff) s -= w[i] * std::log(w[i]);
  }
  return from_nats(std::max(s, 0.0), base);
}

double entropy(const Matrix& m, LogBase base) { return entropy_from_eigenvalues(eigvalsh(m), base); }

double entropy(const DensityOperator& op, LogBase base) { return entropy(op.matrix(), base); }

double cmi(const DensityOperator& op, const Region& a, const Region& b, const Region& c,
           LogBase base) {
  if (a.intersects(b) || a.intersects(c) || b.intersects(c)) {
    throw RegionError("conditional mutual information needs pairwise disjoint regions");
  }
  const Region abc = a.unite(b).unite(c);
  const DensityOperator r = partial_trace(op, abc);
  auto s = [&](const Region& x) { return x.empty() ? 0.0 : entropy(partial_trace(r, x), base); };
  return s(a.unite(b)) + s(b.unite(c)) - s(b) - s(abc);
}

double trace_distance(const DensityOperator& a, const DensityOperator& b) {
  if (a.region() != b.region() || a.local_dim() != b.local_dim()) {
    throw RegionError("trace distance between operators on different regions");
  }
  return 0.5 * trace_norm_hermitian(a.matrix() - b.matrix());
}

DistanceEstimate trace_distance_within(const DensityOperator& a, const DensityOperator& b,
                                       double tol) {
  if (a.region() != b.region() || a.local_dim() != b.local_dim()) {
    throw RegionError("trace distance between operators on different regions");
  }
  if (a.dim() > 1024) {
    const double bound =
        0.5 * std::sqrt(static_cast<double>(a.dim())) * (a.matrix() - b.matrix()).norm();
    if (bound <= tol) return {bound, true};
  }
  return {trace_distance(a, b), false};
}

Matrix sqrt_psd(const Matrix& m) {
  auto es = eigh(m);
  if (es.values.size() && es.values[0] < -kNegativityAbort) {
    throw InvalidStateError("square root of a matrix with eigenvalue " +
                            std::to_string(es.values[0]));
  }
  return hermitian_function(es, [](double x) { return x > 0.0 ? std::sqrt(x) : 0.0; });
}

Matrix pinv_sqrt_psd(const Matrix& m) {
  auto es = eigh(m);
  if (es.values.size() && es.values[0] < -kNegativityAbort) {
    throw InvalidStateError("inverse square root of a matrix with eigenvalue " +
                            std::to_string(es.values[0]));
  }
  const double cutoff = es.values.size() ? kSupportCutoff * es.values.maxCoeff() : 0.0;
  return hermitian_function(es, [cutoff](double x) { return x > cutoff ? 1.0 / std::sqrt(x) : 0.0; });
}

StateEntropyProvider::StateEntropyProvider(DensityOperator state) : state_(std::move(state)) {}

bool StateEntropyProvider::available(const Region& r) const { return state_.region().contains(r); }

double StateEntropyProvider::entropy(const Region& r, LogBase base) const {
  if (r.empty()) return 0.0;
  if (!available(r)) throw RegionError("region " + to_string(r) + " outside the state");
  {
    std::lock_guard<std::mutex> lock(mutex_);
    if (auto it = nats_.find(r); it != nats_.end()) return from_nats(it->second, base);
  }
  const double s = snakeweaver::entropy(partial_trace(state_, r), LogBase::e);
  std::lock_guard<std::mutex> lock(mutex_);
  nats_.emplace(r, s);
  return from_nats(s, base);
}

std::vector<MedTerm> med_terms(const EntropyProvider& provider, const BlockPath& path,
                               LogBase base) {
  std::vector<MedTerm> out;
  for (std::size_t k = 0; k < path.size(); ++k) {
    MedTerm t;
    t.block = path.blocks()[k];
    t.conditioning = path.conditioning(k);
    t.value = provider.entropy(t.block.unite(t.conditioning), base) -
              provider.entropy(t.conditioning, base);
    out.push_back(std::move(t));
  }
  return out;
}

double med(const EntropyProvider& provider, const BlockPath& path, LogBase base) {
  double total = 0.0;
  for (const auto& t : med_terms(provider, path, base)) total += t.value;
  return total;
}

}  // namespace snakeweaver
