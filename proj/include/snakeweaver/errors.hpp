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

#include <stdexcept>
#include <string>

namespace snakeweaver {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid lattice geometry: bad cluster sizes, snake anchors, overlapping regions.
class GeometryError : public Error {
 public:
  using Error::Error;
};

// A region is not contained where it must be, or a required marginal is missing.
class RegionError : public Error {
 public:
  using Error::Error;
};

// Refusal to materialize a dense operator above the configured dimension limit.
class DimensionGuardError : public Error {
 public:
  using Error::Error;
};

// Matrix fails the density-operator invariants beyond the repair thresholds.
class InvalidStateError : public Error {
 public:
  using Error::Error;
};

// Malformed or unsupported serialized input.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Marginals disagree on an overlap, or a stated precondition does not hold.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

// Iterative solver stopped without meeting its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace snakeweaver
