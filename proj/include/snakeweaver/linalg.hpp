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

#include <complex>
#include <cstddef>
#include <functional>

#include <Eigen/Dense>

namespace snakeweaver {

using Complex = std::complex<double>;
using Matrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
using CVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

struct EigenSystem {
  RealVector values;  // ascending
  Matrix vectors;     // columns
};

// Eigenvalues of a Hermitian matrix (lower triangle is read), ascending.
// Exactly block-diagonal structure (up to permutation) and purely real input
// are detected and use cheaper LAPACK drivers.
RealVector eigvalsh(const Matrix& m);
EigenSystem eigh(const Matrix& m);

// V f(diag) V^dagger.
Matrix hermitian_function(const EigenSystem& es, const std::function<double(double)>& f);

bool is_real(const Matrix& m);
double hermiticity_defect(const Matrix& m);
// Replaces m by (m + m^dagger) / 2 in place.
void hermitize(Matrix& m);
double real_trace(const Matrix& m);

// Schatten 1-norm of a Hermitian matrix.
double trace_norm_hermitian(const Matrix& m);

}  // namespace snakeweaver
