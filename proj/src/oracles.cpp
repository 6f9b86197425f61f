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

#include "snakeweaver/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "snakeweaver/errors.hpp"
#include "snakeweaver/parallel.hpp"

namespace snakeweaver::oracles {
namespace {

Matrix ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix g(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) g(i, j) = Complex(n(rng), n(rng)) / std::sqrt(2.0);
  }
  return g;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return k;
}

std::size_t site_index(const Window& w, const Vertex& v) {
  return static_cast<std::size_t>(v.y) * w.width + v.x;
}

void require_inside(const Window& w, const Region& r) {
  if (!w.contains(r)) throw RegionError("region " + to_string(r) + " leaves the window");
}

}  // namespace

Matrix haar_unitary(int n, Rng& rng) {
  const Matrix z = ginibre(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (int k = 0; k < n; ++k) {
    const Complex rk = r(k, k);
    q.col(k) *= std::abs(rk) > 0 ? rk / std::abs(rk) : Complex(1.0);
  }
  return q;
}

Matrix random_orthogonal(int n, Rng& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  RealMatrix z(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) z(i, j) = nd(rng);
  }
  Eigen::HouseholderQR<RealMatrix> qr(z);
  RealMatrix q = qr.householderQ();
  const RealMatrix r = qr.matrixQR();
  for (int k = 0; k < n; ++k) {
    if (r(k, k) < 0) q.col(k) *= -1.0;
  }
  return q.cast<Complex>();
}

Matrix random_density_matrix(int n, Rng& rng, int rank) {
  const Matrix g = ginibre(n, rank < 0 ? n : rank, rng);
  Matrix rho = g * g.adjoint();
  hermitize(rho);
  return rho / real_trace(rho);
}

RealVector random_distribution(int n, Rng& rng) {
  std::exponential_distribution<double> e(1.0);
  RealVector p(n);
  for (int i = 0; i < n; ++i) p[i] = e(rng);
  return p / p.sum();
}

RealMatrix random_stochastic(int n, Rng& rng) {
  RealMatrix t(n, n);
  for (int i = 0; i < n; ++i) t.row(i) = random_distribution(n, rng).transpose();
  return t;
}

DensityOperator depolarize(const DensityOperator& op, double p) {
  const auto dim = static_cast<Eigen::Index>(op.dim());
  Matrix m = (1.0 - p) * op.matrix() + p * Matrix::Identity(dim, dim) / static_cast<double>(dim);
  return DensityOperator(op.region(), op.local_dim(), std::move(m), Validation::cheap);
}

MarginalSet marginal_set(const StateSource& src, MarginalSetMetadata meta) {
  const auto anchors = src.window().cluster_anchors();
  std::vector<std::optional<DensityOperator>> ops(anchors.size());
  parallel_for(anchors.size(), [&](std::size_t i) { ops[i] = src.marginal(cluster_region(anchors[i], 3, 3)); });
  std::map<Vertex, DensityOperator> m;
  for (std::size_t i = 0; i < anchors.size(); ++i) m.emplace(anchors[i], std::move(*ops[i]));
  return MarginalSet(src.window(), src.local_dim(), std::move(m), std::move(meta));
}

DensityOperator global_state(const StateSource& src) {
  guarded_dimension(src.local_dim(), src.window().num_sites());
  return src.marginal(src.window().region());
}

ProductSource::ProductSource(Window window, int local_dim, std::vector<Matrix> site_states)
    : window_(window), d_(local_dim), sites_(std::move(site_states)) {
  if (sites_.size() != window_.num_sites()) throw RegionError("one site state per window site expected");
  for (const auto& s : sites_) {
    if (s.rows() != d_ || s.cols() != d_) throw InvalidStateError("site state has the wrong dimension");
  }
}

ProductSource ProductSource::uniform(Window window, int local_dim, const Matrix& site_state) {
  return ProductSource(window, local_dim, std::vector<Matrix>(window.num_sites(), site_state));
}

DensityOperator ProductSource::marginal(const Region& r) const {
  require_inside(window_, r);
  guarded_dimension(d_, r.size());
  Matrix m = Matrix::Identity(1, 1);
  for (const auto& v : r) m = kron(m, sites_[site_index(window_, v)]);
  return DensityOperator(r, d_, std::move(m), Validation::cheap);
}

std::string to_string(Orientation o) { return o == Orientation::rows ? "rows" : "columns"; }

std::string to_string(UnitaryKind k) {
  switch (k) {
    case UnitaryKind::none: return "none";
    case UnitaryKind::real: return "real";
    case UnitaryKind::complex: return "complex";
  }
  return "none";
}

Orientation parse_orientation(const std::string& s) {
  if (s == "rows") return Orientation::rows;
  if (s == "columns") return Orientation::columns;
  throw FormatError("unknown orientation '" + s + "'");
}

UnitaryKind parse_unitary_kind(const std::string& s) {
  if (s == "none") return UnitaryKind::none;
  if (s == "real") return UnitaryKind::real;
  if (s == "complex") return UnitaryKind::complex;
  throw FormatError("unknown unitary kind '" + s + "'");
}

RowMarkovSpec random_row_markov_spec(const Window& window, int local_dim, Orientation orientation,
                                     UnitaryKind unitaries, std::uint64_t seed) {
  Rng rng(seed);
  RowMarkovSpec spec;
  spec.window = window;
  spec.local_dim = local_dim;
  spec.orientation = orientation;
  const int chains = orientation == Orientation::rows ? window.height : window.width;
  const int length = orientation == Orientation::rows ? window.width : window.height;
  for (int c = 0; c < chains; ++c) {
    ChainSpec ch;
    ch.initial = random_distribution(local_dim, rng);
    for (int k = 0; k + 1 < length; ++k) ch.transitions.push_back(random_stochastic(local_dim, rng));
    spec.chains.push_back(std::move(ch));
  }
  if (unitaries != UnitaryKind::none) {
    for (std::size_t s = 0; s < window.num_sites(); ++s) {
      spec.unitaries.push_back(unitaries == UnitaryKind::real ? random_orthogonal(local_dim, rng)
                                                              : haar_unitary(local_dim, rng));
    }
  }
  return spec;
}

RowMarkovSpec repetition_rows_spec(const Window& window, int local_dim) {
  RowMarkovSpec spec;
  spec.window = window;
  spec.local_dim = local_dim;
  for (int y = 0; y < window.height; ++y) {
    ChainSpec ch;
    ch.initial = RealVector::Constant(local_dim, 1.0 / local_dim);
    for (int k = 0; k + 1 < window.width; ++k) ch.transitions.push_back(RealMatrix::Identity(local_dim, local_dim));
    spec.chains.push_back(std::move(ch));
  }
  return spec;
}

RowMarkovSpec uniform_spec(const Window& window, int local_dim, Orientation orientation) {
  RowMarkovSpec spec = repetition_rows_spec(window, local_dim);
  spec.orientation = orientation;
  spec.chains.clear();
  const int chains = orientation == Orientation::rows ? window.height : window.width;
  const int length = orientation == Orientation::rows ? window.width : window.height;
  for (int c = 0; c < chains; ++c) {
    ChainSpec ch;
    ch.initial = RealVector::Constant(local_dim, 1.0 / local_dim);
    for (int k = 0; k + 1 < length; ++k) {
      ch.transitions.push_back(RealMatrix::Constant(local_dim, local_dim, 1.0 / local_dim));
    }
    spec.chains.push_back(std::move(ch));
  }
  return spec;
}

RowMarkovSource::RowMarkovSource(RowMarkovSpec spec) : spec_(std::move(spec)) {
  const bool rows = spec_.orientation == Orientation::rows;
  const int chains = rows ? spec_.window.height : spec_.window.width;
  const int length = rows ? spec_.window.width : spec_.window.height;
  if (static_cast<int>(spec_.chains.size()) != chains) throw FormatError("one chain per row or column expected");
  for (const auto& ch : spec_.chains) {
    if (ch.initial.size() != spec_.local_dim || static_cast<int>(ch.transitions.size()) != length - 1) {
      throw FormatError("chain specification has the wrong shape");
    }
  }
  if (!spec_.unitaries.empty() && spec_.unitaries.size() != spec_.window.num_sites()) {
    throw FormatError("one on-site unitary per window site expected");
  }
}

DensityOperator RowMarkovSource::marginal(const Region& r) const {
  require_inside(spec_.window, r);
  const int d = spec_.local_dim;
  const auto dim = static_cast<Eigen::Index>(guarded_dimension(d, r.size()));
  const bool rows = spec_.orientation == Orientation::rows;
  const int num_chains = static_cast<int>(spec_.chains.size());

  // Per chain: the canonical positions of r's sites on it and their joint law.
  std::vector<std::vector<std::size_t>> members(num_chains);
  for (std::size_t k = 0; k < r.size(); ++k) members[rows ? r[k].y : r[k].x].push_back(k);
  std::vector<RealVector> law(num_chains);
  for (int c = 0; c < num_chains; ++c) {
    if (members[c].empty()) continue;
    const ChainSpec& ch = spec_.chains[c];
    auto pos = [&](std::size_t k) { return rows ? r[k].x : r[k].y; };
    RealVector pi = ch.initial;
    for (int s = 0; s < pos(members[c][0]); ++s) pi = (pi.transpose() * ch.transitions[s]).transpose();
    RealVector v = pi;
    for (std::size_t m = 1; m < members[c].size(); ++m) {
      RealMatrix step = RealMatrix::Identity(d, d);
      for (int s = pos(members[c][m - 1]); s < pos(members[c][m]); ++s) step = step * ch.transitions[s];
      RealVector next(v.size() * d);
      for (Eigen::Index prev = 0; prev < v.size(); ++prev) {
        for (int x = 0; x < d; ++x) next[prev * d + x] = v[prev] * step(prev % d, x);
      }
      v = std::move(next);
    }
    law[c] = std::move(v);
  }

  Matrix m = Matrix::Zero(dim, dim);
  std::vector<std::size_t> chain_of(r.size());
  for (std::size_t k = 0; k < r.size(); ++k) chain_of[k] = rows ? r[k].y : r[k].x;
  std::vector<std::size_t> idx(num_chains);
  for (Eigen::Index i = 0; i < dim; ++i) {
    std::fill(idx.begin(), idx.end(), 0);
    Eigen::Index rest = i;
    std::size_t weight = static_cast<std::size_t>(dim);
    for (std::size_t k = 0; k < r.size(); ++k) {
      weight /= d;
      const std::size_t digit = static_cast<std::size_t>(rest) / weight;
      rest %= static_cast<Eigen::Index>(weight);
      idx[chain_of[k]] = idx[chain_of[k]] * d + digit;
    }
    double p = 1.0;
    for (int c = 0; c < num_chains; ++c) {
      if (!members[c].empty()) p *= law[c][static_cast<Eigen::Index>(idx[c])];
    }
    m(i, i) = p;
  }
  if (!spec_.unitaries.empty()) {
    std::vector<Matrix> us;
    for (const auto& v : r) us.push_back(spec_.unitaries[site_index(spec_.window, v)]);
    m = conjugate_product(m, us, d);
    hermitize(m);
  }
  return DensityOperator(r, d, std::move(m), Validation::trusted);
}

GhzRowSource::GhzRowSource(Window window, Vertex first_site)
    : window_(window), ghz_{first_site, first_site + kEx, first_site + kEx + kEx} {
  require_inside(window_, ghz_);
}

DensityOperator GhzRowSource::marginal(const Region& r) const {
  require_inside(window_, r);
  const Region in = r.intersect(ghz_);
  const Region out = r.minus(ghz_);
  std::optional<DensityOperator> op;
  if (!in.empty()) {
    CVector psi = CVector::Zero(8);
    psi[0] = psi[7] = 1.0 / std::sqrt(2.0);
    op = partial_trace(DensityOperator::pure(ghz_, 2, psi), in);
  }
  if (!out.empty()) {
    CVector zero = CVector::Zero(static_cast<Eigen::Index>(guarded_dimension(2, out.size())));
    zero[0] = 1.0;
    DensityOperator z = DensityOperator::pure(out, 2, zero);
    op = op ? tensor(*op, z) : z;
  }
  if (!op) throw RegionError("empty region");
  return *op;
}

QmcTriple gen_qmc_triple(int n_a, int n_b, int n_c, int local_dim, const std::vector<QmcBlock>& blocks,
                         std::uint64_t seed) {
  if (n_a < 1 || n_b < 1 || n_c < 1) throw GeometryError("each party needs at least one site");
  const auto da = static_cast<Eigen::Index>(hilbert_dimension(local_dim, n_a));
  const auto db = static_cast<Eigen::Index>(hilbert_dimension(local_dim, n_b));
  const auto dc = static_cast<Eigen::Index>(hilbert_dimension(local_dim, n_c));
  Eigen::Index used = 0;
  for (const auto& b : blocks) {
    if (b.left_dim < 1 || b.right_dim < 1) throw GeometryError("block dimensions must be positive");
    used += static_cast<Eigen::Index>(b.left_dim) * b.right_dim;
  }
  if (blocks.empty() || used > db) {
    throw GeometryError("block structure needs " + std::to_string(used) + " dimensions of B but B has " +
                        std::to_string(db));
  }
  Rng rng(seed);
  const RealVector p = random_distribution(static_cast<int>(blocks.size()), rng);
  const Eigen::Index dim = da * db * dc;
  Matrix m = Matrix::Zero(dim, dim);
  auto at = [&](Eigen::Index a, Eigen::Index b, Eigen::Index c) { return (a * db + b) * dc + c; };
  Eigen::Index offset = 0;
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    const int l = blocks[j].left_dim, rr = blocks[j].right_dim;
    const Matrix al = random_density_matrix(static_cast<int>(da) * l, rng);
    const Matrix rc = random_density_matrix(rr * static_cast<int>(dc), rng);
    for (Eigen::Index a1 = 0; a1 < da; ++a1)
      for (int l1 = 0; l1 < l; ++l1)
        for (Eigen::Index a2 = 0; a2 < da; ++a2)
          for (int l2 = 0; l2 < l; ++l2) {
            const Complex x = p[static_cast<Eigen::Index>(j)] * al(a1 * l + l1, a2 * l + l2);
            for (int r1 = 0; r1 < rr; ++r1)
              for (Eigen::Index c1 = 0; c1 < dc; ++c1)
                for (int r2 = 0; r2 < rr; ++r2)
                  for (Eigen::Index c2 = 0; c2 < dc; ++c2) {
                    m(at(a1, offset + l1 * rr + r1, c1), at(a2, offset + l2 * rr + r2, c2)) =
                        x * rc(r1 * dc + c1, r2 * dc + c2);
                  }
          }
    offset += static_cast<Eigen::Index>(l) * rr;
  }
  const Matrix v = kron(kron(Matrix::Identity(da, da), haar_unitary(static_cast<int>(db), rng)),
                        Matrix::Identity(dc, dc));
  m = v * m * v.adjoint();
  hermitize(m);
  std::vector<Vertex> sites;
  for (int x = 0; x < n_a + n_b + n_c; ++x) sites.push_back({x, 0});
  const Region all(sites);
  QmcTriple out{DensityOperator(all, local_dim, std::move(m), Validation::cheap), {}, {}, {}};
  out.a = cluster_region({n_a - 1, 0}, n_a, 1);
  out.b = cluster_region({n_a + n_b - 1, 0}, n_b, 1);
  out.c = cluster_region({n_a + n_b + n_c - 1, 0}, n_c, 1);
  return out;
}

MarkovQuad gen_dimer_chain(std::uint64_t seed) {
  Rng rng(seed);
  const Matrix pair1 = random_density_matrix(4, rng);
  const Matrix pair2 = random_density_matrix(4, rng);
  const Matrix pair3 = random_density_matrix(4, rng);
  Matrix m = kron(kron(pair1, pair2), pair3);
  const Matrix u = kron(kron(kron(Matrix::Identity(2, 2), haar_unitary(4, rng)), haar_unitary(4, rng)),
                        Matrix::Identity(2, 2));
  m = u * m * u.adjoint();
  hermitize(m);
  const Region all = cluster_region({5, 0}, 6, 1);
  return {DensityOperator(all, 2, std::move(m), Validation::cheap), Region{{0, 0}},
          Region{{1, 0}, {2, 0}}, Region{{3, 0}, {4, 0}}, Region{{5, 0}}};
}

MarkovQuad gen_classical_chain4(int local_dim, UnitaryKind unitaries, std::uint64_t seed) {
  const Window w(4, 1);
  RowMarkovSource src(random_row_markov_spec(w, local_dim, Orientation::rows, unitaries, seed));
  return {global_state(src), Region{{0, 0}}, Region{{1, 0}}, Region{{2, 0}}, Region{{3, 0}}};
}

namespace {

// Hermitian parameterization: diagonal reals, then (re, im) of the strict
// upper triangle.
Matrix unpack(const RealVector& x, Eigen::Index offset, Eigen::Index m) {
  Matrix h(m, m);
  Eigen::Index k = offset;
  for (Eigen::Index i = 0; i < m; ++i) h(i, i) = x[k++];
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i + 1; j < m; ++j) {
      h(i, j) = Complex(x[k], x[k + 1]);
      h(j, i) = std::conj(h(i, j));
      k += 2;
    }
  }
  return h;
}

void pack_gradient(const Matrix& g, RealVector& out, Eigen::Index offset) {
  const Eigen::Index m = g.rows();
  Eigen::Index k = offset;
  for (Eigen::Index i = 0; i < m; ++i) out[k++] = g(i, i).real();
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i + 1; j < m; ++j) {
      out[k++] = 2.0 * g(i, j).real();
      out[k++] = 2.0 * g(i, j).imag();
    }
  }
}

struct DualPoint {
  double f = 0.0;
  RealVector grad;
  double residual = 0.0;
  Matrix rho;
  double entropy_nats = 0.0;
};

}  // namespace

MaxEntSolution brute_force_maxent(const std::vector<DensityOperator>& constraints, const Region& region,
                                  const MaxEntOptions& opts) {
  if (constraints.empty()) throw RegionError("at least one constraint is required");
  const int d = constraints.front().local_dim();
  const auto dim = static_cast<Eigen::Index>(hilbert_dimension(d, region.size()));
  if (dim > (Eigen::Index{1} << 12)) throw DimensionGuardError("brute-force solver is limited to dimension 4096");
  for (const auto& c : constraints) {
    if (!region.contains(c.region())) throw RegionError("constraint " + to_string(c.region()) + " outside region");
    if (c.local_dim() != d) throw RegionError("constraints differ in local dimension");
  }
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    for (std::size_t j = i + 1; j < constraints.size(); ++j) {
      const Region o = constraints[i].region().intersect(constraints[j].region());
      if (o.empty()) continue;
      const double dist = trace_distance(partial_trace(constraints[i], o), partial_trace(constraints[j], o));
      if (dist > 1e-6) {
        throw ConsistencyError("constraints on " + to_string(constraints[i].region()) + " and " +
                               to_string(constraints[j].region()) + " are infeasible (overlap distance " +
                               std::to_string(dist) + ")");
      }
    }
  }

  std::vector<Eigen::Index> offsets, sizes;
  Eigen::Index n_params = 0;
  for (const auto& c : constraints) {
    const auto m = static_cast<Eigen::Index>(c.dim());
    offsets.push_back(n_params);
    sizes.push_back(m);
    n_params += m * m;
  }

  auto evaluate = [&](const RealVector& x) {
    DualPoint pt;
    Matrix k = Matrix::Zero(dim, dim);
    double linear = 0.0;
    for (std::size_t r = 0; r < constraints.size(); ++r) {
      const Matrix h = unpack(x, offsets[r], sizes[r]);
      linear += (h * constraints[r].matrix()).trace().real();
      k += embed_identity(h, constraints[r].region(), region, d);
    }
    const EigenSystem es = eigh(k);
    const double top = es.values.maxCoeff();
    RealVector w = (es.values.array() - top).exp();
    const double z = w.sum();
    const RealVector p = w / z;
    pt.f = top + std::log(z) - linear;
    pt.entropy_nats = entropy_from_eigenvalues(p, LogBase::e);
    Matrix scaled = es.vectors;
    for (Eigen::Index i = 0; i < dim; ++i) scaled.col(i) *= p[i];
    pt.rho = scaled * es.vectors.adjoint();
    hermitize(pt.rho);
    pt.grad.resize(n_params);
    for (std::size_t r = 0; r < constraints.size(); ++r) {
      const Matrix g = partial_trace_matrix(pt.rho, region.sites(), constraints[r].region(), d) -
                       constraints[r].matrix();
      pack_gradient(g, pt.grad, offsets[r]);
      pt.residual = std::max(pt.residual, 0.5 * trace_norm_hermitian(g));
    }
    return pt;
  };

  RealVector x = RealVector::Zero(n_params);
  DualPoint cur = evaluate(x);
  std::deque<std::pair<RealVector, RealVector>> memory;
  int it = 0;
  for (; it < opts.max_iterations && cur.residual > opts.tol; ++it) {
    RealVector q = cur.grad;
    std::vector<double> alpha(memory.size());
    for (std::size_t i = memory.size(); i-- > 0;) {
      const auto& [s, y] = memory[i];
      alpha[i] = s.dot(q) / y.dot(s);
      q -= alpha[i] * y;
    }
    if (!memory.empty()) {
      const auto& [s, y] = memory.back();
      q *= s.dot(y) / y.dot(y);
    }
    for (std::size_t i = 0; i < memory.size(); ++i) {
      const auto& [s, y] = memory[i];
      const double beta = y.dot(q) / y.dot(s);
      q += (alpha[i] - beta) * s;
    }
    RealVector dir = -q;
    double slope = cur.grad.dot(dir);
    if (!(slope < 0.0)) {
      memory.clear();
      dir = -cur.grad;
      slope = cur.grad.dot(dir);
    }
    double step = 1.0;
    bool accepted = false;
    DualPoint next;
    for (int bt = 0; bt < 60; ++bt) {
      next = evaluate(x + step * dir);
      // Near the optimum the decrease drops below the rounding of f; fall back
      // to requiring a smaller gradient.
      const double noise = 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(cur.f));
      const bool armijo = next.f <= cur.f + 1e-4 * step * slope;
      const bool flat = std::abs(next.f - cur.f) <= noise && next.grad.norm() < cur.grad.norm();
      if (std::isfinite(next.f) && (armijo || flat)) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (memory.empty()) break;
      memory.clear();
      continue;
    }
    const RealVector s = step * dir;
    const RealVector y = next.grad - cur.grad;
    x += s;
    if (s.dot(y) > 1e-18) {
      memory.emplace_back(s, y);
      if (static_cast<int>(memory.size()) > opts.history) memory.pop_front();
    }
    cur = std::move(next);
  }
  MaxEntSolution out{from_nats(cur.entropy_nats, opts.base),
                     DensityOperator(region, d, cur.rho, Validation::cheap), cur.residual, it,
                     cur.residual <= opts.tol};
  return out;
}

}  // namespace snakeweaver::oracles
