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

#include "snakeweaver/linalg.hpp"

#define LAPACK_COMPLEX_CPP
#include <lapacke.h>

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "snakeweaver/errors.hpp"

namespace snakeweaver {
namespace {

// Below this size the one-stage drivers are as fast and better tested.
constexpr Eigen::Index kTwoStageMin = 256;

void check_info(lapack_int info, const char* routine) {
  if (info != 0) {
    throw Error(std::string(routine) + " failed with info=" + std::to_string(info));
  }
}

RealVector dense_real_values(RealMatrix a) {
  const lapack_int n = static_cast<lapack_int>(a.rows());
  RealVector w(n);
  lapack_int info;
  if (n >= kTwoStageMin) {
    info = LAPACKE_dsyevd_2stage(LAPACK_COL_MAJOR, 'N', 'L', n, a.data(), n, w.data());
  } else {
    info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'L', n, a.data(), n, w.data());
  }
  check_info(info, "dsyevd");
  return w;
}

RealVector dense_complex_values(Matrix a) {
  const lapack_int n = static_cast<lapack_int>(a.rows());
  RealVector w(n);
  auto* data = reinterpret_cast<lapack_complex_double*>(a.data());
  lapack_int info;
  if (n >= kTwoStageMin) {
    info = LAPACKE_zheevd_2stage(LAPACK_COL_MAJOR, 'N', 'L', n, data, n, w.data());
  } else {
    info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'N', 'L', n, data, n, w.data());
  }
  check_info(info, "zheevd");
  return w;
}

EigenSystem dense_real_system(RealMatrix a) {
  const lapack_int n = static_cast<lapack_int>(a.rows());
  RealVector w(n);
  check_info(LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, a.data(), n, w.data()), "dsyevd");
  return {std::move(w), a.cast<Complex>()};
}

EigenSystem dense_complex_system(Matrix a) {
  const lapack_int n = static_cast<lapack_int>(a.rows());
  RealVector w(n);
  auto* data = reinterpret_cast<lapack_complex_double*>(a.data());
  check_info(LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n, data, n, w.data()), "zheevd");
  return {std::move(w), std::move(a)};
}

// Connected components of the nonzero pattern of the lower triangle.
std::vector<std::vector<Eigen::Index>> components(const Matrix& m) {
  const Eigen::Index n = m.rows();
  std::vector<Eigen::Index> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Eigen::Index i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j + 1; i < n; ++i) {
      if (m(i, j) != Complex(0.0, 0.0)) {
        auto a = find(i), b = find(j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  std::vector<std::vector<Eigen::Index>> out;
  std::vector<Eigen::Index> slot(n, -1);
  for (Eigen::Index i = 0; i < n; ++i) {
    auto r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<Eigen::Index>(out.size());
      out.emplace_back();
    }
    out[slot[r]].push_back(i);
  }
  return out;
}

Matrix submatrix(const Matrix& m, const std::vector<Eigen::Index>& idx) {
  const auto k = static_cast<Eigen::Index>(idx.size());
  Matrix s(k, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    for (Eigen::Index i = 0; i < k; ++i) s(i, j) = m(idx[i], idx[j]);
  }
  return s;
}

RealVector block_values(const Matrix& m) {
  if (m.rows() == 1) return RealVector::Constant(1, m(0, 0).real());
  if (is_real(m)) return dense_real_values(m.real());
  return dense_complex_values(m);
}

EigenSystem block_system(const Matrix& m) {
  if (m.rows() == 1) return {RealVector::Constant(1, m(0, 0).real()), Matrix::Identity(1, 1)};
  if (is_real(m)) return dense_real_system(m.real());
  return dense_complex_system(m);
}

}  // namespace

bool is_real(const Matrix& m) {
  const Complex* p = m.data();
  const Eigen::Index n = m.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (p[i].imag() != 0.0) return false;
  }
  return true;
}

RealVector eigvalsh(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error("eigvalsh: matrix is not square");
  if (m.rows() == 0) return RealVector(0);
  auto comps = components(m);
  if (comps.size() == 1) return block_values(m);
  RealVector out(m.rows());
  Eigen::Index pos = 0;
  for (const auto& c : comps) {
    RealVector w = block_values(submatrix(m, c));
    out.segment(pos, w.size()) = w;
    pos += w.size();
  }
  std::sort(out.data(), out.data() + out.size());
  return out;
}

EigenSystem eigh(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error("eigh: matrix is not square");
  const Eigen::Index n = m.rows();
  if (n == 0) return {RealVector(0), Matrix(0, 0)};
  auto comps = components(m);
  if (comps.size() == 1) return block_system(m);
  std::vector<std::pair<double, std::pair<std::size_t, Eigen::Index>>> order;
  std::vector<EigenSystem> parts;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    parts.push_back(block_system(submatrix(m, comps[c])));
    for (Eigen::Index k = 0; k < parts.back().values.size(); ++k) {
      order.push_back({parts.back().values[k], {c, k}});
    }
  }
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  EigenSystem out{RealVector(n), Matrix::Zero(n, n)};
  for (Eigen::Index col = 0; col < n; ++col) {
    const auto [c, k] = order[col].second;
    out.values[col] = order[col].first;
    const auto& idx = comps[c];
    for (std::size_t i = 0; i < idx.size(); ++i) {
      out.vectors(idx[i], col) = parts[c].vectors(static_cast<Eigen::Index>(i), k);
    }
  }
  return out;
}

Matrix hermitian_function(const EigenSystem& es, const std::function<double(double)>& f) {
  const Eigen::Index n = es.values.size();
  Matrix scaled = es.vectors;
  for (Eigen::Index k = 0; k < n; ++k) scaled.col(k) *= f(es.values[k]);
  return scaled * es.vectors.adjoint();
}

double hermiticity_defect(const Matrix& m) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = j; i < m.rows(); ++i) {
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
    }
  }
  return worst;
}

void hermitize(Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    m(j, j) = Complex(m(j, j).real(), 0.0);
    for (Eigen::Index i = j + 1; i < m.rows(); ++i) {
      Complex avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m(i, j) = avg;
      m(j, i) = std::conj(avg);
    }
  }
}

double real_trace(const Matrix& m) { return m.trace().real(); }

double trace_norm_hermitian(const Matrix& m) { return eigvalsh(m).cwiseAbs().sum(); }

}  // namespace snakeweaver
