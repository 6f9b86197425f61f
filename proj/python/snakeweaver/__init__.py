# Copyright 2026 The snakeweaver Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Reconstruction of 2D quantum Markov states from 3x3 cluster marginals.

Sites are ``(x, y)`` tuples; matrices are complex numpy arrays. Check reports
are returned as dictionaries with the same schema the command-line tool writes.
"""

import json
from typing import NamedTuple, Optional

from ._core import (
    ConsistencyError,
    ConvergenceError,
    DensityOperator,
    DimensionGuardError,
    FormatError,
    GeometryError,
    InvalidStateError,
    MarginalSet,
    RegionError,
    __version__,
    build_snake,
    cmi,
    dense_guard,
    depolarize,
    entropy,
    ghz_row,
    max_entropy_formula,
    partial_trace,
    read_marginal_file,
    recovery_check,
    right_merge,
    row_markov,
    set_dense_guard,
    tensor,
    trace_distance,
    write_marginal_file,
)
from . import _core


class Reconstruction(NamedTuple):
    state: DensityOperator
    preconditions: dict
    fidelity: dict
    step_cmi: dict
    entropy: Optional[float]


def check_markov_conditions(marginals: MarginalSet, tol: float = 1e-8, base: str = "2") -> dict:
    return json.loads(_core._check_markov_conditions(marginals, tol, base))


def check_local_consistency(marginals: MarginalSet, tol: float = 1e-8, full_pairwise: bool = False) -> dict:
    return json.loads(_core._check_local_consistency(marginals, tol, full_pairwise))


def reconstruct(
    marginals: MarginalSet,
    tol_cmi: float = 1e-8,
    tol_consistency: float = 1e-8,
    compute_entropy: bool = True,
) -> Reconstruction:
    state, pre, fid, step, ent = _core._reconstruct(marginals, tol_cmi, tol_consistency, compute_entropy)
    return Reconstruction(state, json.loads(pre), json.loads(fid), json.loads(step), ent)


def derive_snake_target(anchor=(2, 2), depth: int = 8) -> Optional[list]:
    steps = _core._derive_snake_target(anchor, depth)
    return None if steps is None else json.loads(steps)


__all__ = [
    "ConsistencyError",
    "ConvergenceError",
    "DensityOperator",
    "DimensionGuardError",
    "FormatError",
    "GeometryError",
    "InvalidStateError",
    "MarginalSet",
    "Reconstruction",
    "RegionError",
    "__version__",
    "build_snake",
    "check_local_consistency",
    "check_markov_conditions",
    "cmi",
    "dense_guard",
    "depolarize",
    "derive_snake_target",
    "entropy",
    "ghz_row",
    "max_entropy_formula",
    "partial_trace",
    "read_marginal_file",
    "reconstruct",
    "recovery_check",
    "right_merge",
    "row_markov",
    "set_dense_guard",
    "tensor",
    "trace_distance",
    "write_marginal_file",
]
