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

// Explicit (RNG-free) fixtures shared with tests/oracle/freeze_values.py.

#include <cmath>

#include "snakeweaver/oracles.hpp"

namespace snakeweaver::testing {

// 4x3 window, one binary Markov chain per row, real rotation by
// 0.3 + 0.1 k on the site with canonical index k.
inline oracles::RowMarkovSpec explicit_row_markov_spec() {
  oracles::RowMarkovSpec spec;
  spec.window = Window(4, 3);
  spec.local_dim = 2;
  for (int y = 0; y < 3; ++y) {
    oracles::ChainSpec ch;
    ch.initial = RealVector(2);
    ch.initial << 0.3 + 0.1 * y, 0.7 - 0.1 * y;
    for (int k = 0; k < 3; ++k) {
      const double a = 0.15 + 0.1 * k + 0.05 * y;
      const double b = 0.6 - 0.1 * k + 0.07 * y;
      RealMatrix t(2, 2);
      t << 1 - a, a, b, 1 - b;
      ch.transitions.push_back(t);
    }
    spec.chains.push_back(ch);
  }
  for (int k = 0; k < 12; ++k) {
    const double t = 0.3 + 0.1 * k;
    Matrix u(2, 2);
    u << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
    spec.unitaries.push_back(u);
  }
  return spec;
}

// Frozen oracle values for the fixture above (bits).
inline constexpr double kFixtureGlobalEntropy = 11.010644286324094;
inline constexpr double kFixtureFormula = 11.010644286324096;
inline constexpr double kFixtureRowPathMed = 11.010644286324098;
inline constexpr double kFixtureRows01Entropy = 7.261674634492851;
inline constexpr double kFixtureRow1Entropy = 3.6988680972735866;
inline constexpr double kFixtureDepolarizedResidual = 0.00038549267606248825;

inline DensityOperator ghz3() {
  CVector psi = CVector::Zero(8);
  psi[0] = psi[7] = 1.0 / std::sqrt(2.0);
  return DensityOperator::pure(Region{{0, 0}, {1, 0}, {2, 0}}, 2, psi);
}

inline Matrix diag(std::initializer_list<double> values) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(values.size()), static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double v : values) m(i, i) = v, ++i;
  return m;
}

inline Matrix ket0() { return diag({1.0, 0.0}); }

}  // namespace snakeweaver::testing
