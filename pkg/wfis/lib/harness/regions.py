#  Copyright 2026 The Wright-Fisher Indirect Selection CLI Authors
#
#  Licensed under the Apache License, Version 2.0 (the "License");
#  you may not use this file except in compliance with the License.
#  You may obtain a copy of the License at
#
#  http://www.apache.org/licenses/LICENSE-2.0
#
#  Unless required by applicable law or agreed to in writing, software
#  distributed under the License is distributed on an "AS IS" BASIS,
#  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
#  See the License for the specific language governing permissions and
#  limitations under the License.

import math

from dataclasses import dataclass
from typing import Literal

import numpy as np

from wfis.lib.limit.limit_analytic import LimitPoint, eval_limit
from wfis.utils.error import DomainError

RegionKind = Literal["omega_y0", "omega_s"]

_SLACK = 1e-12


@dataclass(frozen=True)
class Region:
    """Subset of Ω on which the discrete quantities converge uniformly

    omega_y0 is {(x, y, z) ∈ Ω : y ≥ y0}; omega_s is {(x, y, z) ∈ Ω :
    z ≤ s(x + y) and x − z ≥ (1 − s)/(2 + 2s)}.
    """

    kind: RegionKind
    parameter: float

    def __post_init__(self):
        if self.kind == "omega_y0" and not self.parameter > 0:
            raise DomainError(f"Ω(y0) requires y0 > 0 (y0 = {self.parameter})")

        if self.kind == "omega_s" and not (0 < self.parameter < 1):
            raise DomainError(f"Ω(s) requires 0 < s < 1 (s = {self.parameter})")

    def __str__(self) -> str:
        return f"Ω(y0={self.parameter})" if self.kind == "omega_y0" else f"Ω(s={self.parameter})"

    def contains(self, x, y, z) -> np.ndarray:
        """Tests membership of the given points (scalars or arrays)"""

        x, y, z = (np.asarray(value, dtype=np.float64) for value in (x, y, z))
        in_omega = (x >= 0) & (y >= 0) & (z >= 0) & (x + y + z <= 1 + _SLACK)

        if self.kind == "omega_y0":
            return in_omega & (y >= self.parameter - _SLACK)

        s = self.parameter

        return in_omega & (z <= s * (x + y) + _SLACK) & (x - z >= (1 - s) / (2 + 2 * s) - _SLACK)


def lattice_layer(region: Region, n: int, f: int, stride: int = 1, min_w: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """Returns the lattice points (w, b) of layer f of Ω_N in the region

    Only points with b ≥ 1 are returned (T is undefined for y = 0).

    Parameters
    ----------
    region
        region of Ω
    n
        discretization scale N
    f
        layer
    stride
        spacing of the visited w and b values
    min_w
        smallest visited w

    Returns
    -------
    tuple[np.ndarray, np.ndarray]
        w and b coordinates of the points
    """

    values = np.arange(0, n - f + 1, stride)
    w, b = np.meshgrid(values, values, indexing="ij")
    mask = (w + b <= n - f) & (b >= 1) & (w >= min_w) & region.contains(w / n, b / n, np.full(w.shape, f / n))

    return w[mask], b[mask]


@dataclass(frozen=True)
class RegionBoundsCheck:
    points: int
    t_bound: float
    t_violations: int
    denominator_bound: float | None
    denominator_violations: int

    @property
    def passed(self) -> bool:
        return (self.t_violations == 0) and (self.denominator_violations == 0)


def check_region_bounds(region: Region, n: int) -> RegionBoundsCheck:
    """Checks the bounds on T that hold on the region at every lattice point
    of Ω_N in it

    On Ω(y0), T ≤ 1/y0; on Ω(s), T ≤ log(1/(1 − s)) and
    x·e^(−T) + y ≥ (1 − s)²/(2 + 2s).
    """

    xs, ys, zs = [], [], []

    for f in range(n + 1):
        w, b = lattice_layer(region, n, f)
        xs.append(w / n)
        ys.append(b / n)
        zs.append(np.full(w.shape, f / n))

    x, y, z = np.concatenate(xs), np.concatenate(ys), np.concatenate(zs)
    evaluation = eval_limit(LimitPoint(x, y, z))
    t = np.asarray(evaluation.T)

    if region.kind == "omega_y0":
        t_bound = 1 / region.parameter
        denominator_bound = None
        denominator_violations = 0
    else:
        s = region.parameter
        t_bound = -math.log1p(-s)
        denominator_bound = (1 - s) ** 2 / (2 + 2 * s)
        denominator_violations = int(np.count_nonzero(x * np.exp(-t) + y < denominator_bound - _SLACK))

    return RegionBoundsCheck(
        points=int(x.size),
        t_bound=t_bound,
        t_violations=int(np.count_nonzero(t > t_bound + _SLACK)),
        denominator_bound=denominator_bound,
        denominator_violations=denominator_violations,
    )
