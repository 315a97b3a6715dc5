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

import logging
import math

from enum import StrEnum
from typing import Final

import numpy as np

from pydantic import BaseModel
from sortedcontainers import SortedDict

from wfis.lib.harness.regions import Region, lattice_layer
from wfis.lib.limit.limit_analytic import LimitPoint, eval_limit
from wfis.lib.random.jobs import run_jobs
from wfis.lib.season.season_exact import iterate_layers
from wfis.lib.season.season_types import QKind
from wfis.utils.error import InfeasibleSweepError

logger = logging.getLogger(__name__)

DEFAULT_NS: Final[list[int]] = [50, 100, 200, 400]

# relative size of a tolerated increase of the supremum error between
# consecutive values of N
_INVERSION_TOLERANCE = 0.05


class RateTarget(StrEnum):
    Q_VS_U = "q_vs_u"
    DXQ_VS_UX = "dxq_vs_ux"
    DYQ_VS_UY = "dyq_vs_uy"
    QTILDE_VS_U2 = "qtilde_vs_u2"
    FITNESS_GAP = "fitness_gap"
    TRUNCATION = "truncation"
    PW_VS_V = "pw_vs_v"
    PB_VS_V = "pb_vs_v"

    @property
    def kind(self) -> QKind:
        return QKind.Q_TILDE if self is RateTarget.QTILDE_VS_U2 else QKind.Q

    @property
    def min_w(self) -> int:
        """Smallest w at which the target is defined"""

        return 1 if self in (RateTarget.FITNESS_GAP, RateTarget.TRUNCATION, RateTarget.PW_VS_V) else 0

    @property
    def slope_band(self) -> tuple[float, float]:
        match self:
            case RateTarget.Q_VS_U:
                return (-1.3, -0.8)
            case RateTarget.TRUNCATION:
                return (-2.3, -1.7)
            case _:
                return (-1.3, -0.7)


class RateRow(BaseModel):
    n: int
    sup_error: float
    argmax: tuple[int, int, int] | None
    points: int
    stride: int


class RateTableReport(BaseModel):
    target: RateTarget
    region: str
    rows: list[RateRow]
    fitted_slope: float | None
    fit_r2: float | None
    fitted_constant: float | None
    # slopes between consecutive values of N
    local_slopes: list[float]
    slope_band: tuple[float, float]
    nonincreasing: bool
    passed: bool


class RateTable:
    """Supremum errors of a rate target indexed by N"""

    def __init__(self, target: RateTarget, region: Region):
        self._region = region
        self._rows: SortedDict[int, RateRow] = SortedDict()
        self._target = target

    def add_row(self, row: RateRow):
        self._rows[row.n] = row

    @property
    def region(self) -> Region:
        return self._region

    @property
    def rows(self) -> list[RateRow]:
        return list(self._rows.values())

    @property
    def target(self) -> RateTarget:
        return self._target

    def fit(self) -> tuple[float, float, float] | None:
        """Fits log(sup_error) = log(C) + slope·log(N) by least squares

        Returns
        -------
        tuple[float, float, float] | None
            slope, coefficient of determination and constant C, or None if
            fewer than two rows have a positive error
        """

        rows = [row for row in self._rows.values() if row.sup_error > 0]

        if len(rows) < 2:
            return None

        log_n = np.log([row.n for row in rows])
        log_error = np.log([row.sup_error for row in rows])
        slope, intercept = np.polyfit(log_n, log_error, 1)
        residuals = log_error - (slope * log_n + intercept)
        total = np.sum((log_error - np.mean(log_error)) ** 2)
        r2 = 1.0 - float(np.sum(residuals**2)) / float(total) if total > 0 else 1.0

        return float(slope), r2, math.exp(intercept)

    def local_slopes(self) -> list[float]:
        """Returns log(e₂/e₁)/log(N₂/N₁) for consecutive rows with positive errors"""

        rows = [row for row in self._rows.values() if row.sup_error > 0]

        return [
            math.log(following.sup_error / previous.sup_error) / math.log(following.n / previous.n)
            for previous, following in zip(rows, rows[1:])
        ]

    def is_nonincreasing(self) -> bool:
        """Checks that the supremum error does not grow with N, tolerating a
        single inversion of less than 5%"""

        errors = [row.sup_error for row in self._rows.values()]
        inversions = [(previous, following) for previous, following in zip(errors, errors[1:]) if following > previous]

        if len(inversions) == 0:
            return True

        previous, following = inversions[0]

        return (len(inversions) == 1) and (following <= previous * (1 + _INVERSION_TOLERANCE))

    def report(self) -> RateTableReport:
        fit = self.fit()
        band = self._target.slope_band
        nonincreasing = self.is_nonincreasing()
        slope, r2, constant = fit if fit is not None else (None, None, None)

        return RateTableReport(
            target=self._target,
            region=str(self._region),
            rows=self.rows,
            fitted_slope=slope,
            fit_r2=r2,
            fitted_constant=constant,
            local_slopes=self.local_slopes(),
            slope_band=band,
            nonincreasing=nonincreasing,
            passed=(slope is not None) and (band[0] <= slope <= band[1]) and nonincreasing,
        )


def _layer_errors(target: RateTarget, n: int, f: int, w: np.ndarray, b: np.ndarray, layer: np.ndarray) -> np.ndarray:
    """Returns the errors of the target at the lattice points (w, b) of layer f"""

    evaluation = eval_limit(LimitPoint(w / n, b / n, np.full(w.shape, f / n)))

    match target:
        case RateTarget.Q_VS_U:
            return np.abs(layer[w, b] - evaluation.u)
        case RateTarget.DXQ_VS_UX:
            return np.abs(n * (layer[w + 1, b] - layer[w, b]) - evaluation.grad_u[0])
        case RateTarget.DYQ_VS_UY:
            return np.abs(n * (layer[w, b + 1] - layer[w, b]) - evaluation.grad_u[1])
        case RateTarget.QTILDE_VS_U2:
            return np.abs(layer[w, b] - np.asarray(evaluation.u) ** 2)
        case RateTarget.FITNESS_GAP:
            # p_b − p_w = q(w − 1, b, f) − q(w, b − 1, f)
            gap = layer[w - 1, b] - layer[w, b - 1]
            return n * np.abs(gap - (np.asarray(evaluation.grad_v[0]) - np.asarray(evaluation.grad_v[1])) / n)
        case RateTarget.PW_VS_V:
            return np.abs(1.0 - layer[w - 1, b] - evaluation.v)
        case RateTarget.PB_VS_V:
            return np.abs(1.0 - layer[w, b - 1] - evaluation.v)

    raise AssertionError(target)


def _truncation_errors(n: int, f: int, w: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Returns the local truncation error of u^N in the recurrence of q"""

    if f == 0:
        return np.zeros(w.shape)

    def u_at(w_values: np.ndarray, f_value: int) -> np.ndarray:
        return np.asarray(eval_limit(LimitPoint(w_values / n, b / n, np.full(w.shape, f_value / n))).u)

    denominator = w + b + 1

    return np.abs(u_at(w, f) - w / denominator * u_at(w - 1, f - 1) - b / denominator * u_at(w, f - 1))


def _sweep_cell(job: tuple[Region, int, RateTarget, int]) -> RateRow:
    region, n, target, stride = job
    sup_error = 0.0
    argmax: tuple[int, int, int] | None = None
    points = 0

    def visit(f: int, layer: np.ndarray | None):
        nonlocal argmax, points, sup_error

        if (f > n) or (f % stride != 0):
            return

        w, b = lattice_layer(region, n, f, stride, target.min_w)

        if w.size == 0:
            return

        if target is RateTarget.TRUNCATION:
            errors = _truncation_errors(n, f, w, b)
        else:
            assert layer is not None
            errors = _layer_errors(target, n, f, w, b, layer)

        points += int(w.size)
        index = int(np.argmax(errors))

        if (argmax is None) or (errors[index] > sup_error):
            sup_error = float(errors[index])
            argmax = (int(w[index]), int(b[index]), f)

    if target is RateTarget.TRUNCATION:
        for f in range(n + 1):
            visit(f, None)
    else:
        # one additional row and column covers the shifted indices w + 1, b + 1
        for f, layer in iterate_layers(n + 1, target.kind):
            visit(f, layer)

    if points == 0:
        raise InfeasibleSweepError(f"Region {region} contains no lattice point of Ω_{n} for target {target.value}")

    logger.info(f"Sweep cell finished (target={target.value}, N={n}, points={points}, sup_error={sup_error:.6e})")

    return RateRow(n=n, sup_error=sup_error, argmax=argmax, points=points, stride=stride)


def lattice_stride(n: int, lattice_limit: int) -> int:
    return 1 if n <= lattice_limit else math.ceil(n / lattice_limit)


def rate_sweep_q(
    region: Region,
    ns: list[int],
    target: RateTarget,
    jobs: int = 1,
    lattice_limit: int = 400,
    dp_limit: int = 4000,
) -> RateTable:
    """Computes the supremum over the region of the error between a discrete
    quantity and its limit for each N and fits the rate of convergence

    Parameters
    ----------
    region
        region of Ω
    ns
        discretization scales N
    target
        compared quantities
    jobs
        maximum number of worker processes (one job per N)
    lattice_limit
        largest N for which every lattice point is visited; above it, w, b
        and f are visited with a stride of ⌈N/lattice_limit⌉
    dp_limit
        largest N for which the table of q is built

    Returns
    -------
    RateTable
        supremum errors and fitted slope
    """

    if len(ns) == 0:
        raise InfeasibleSweepError("No value of N given")

    if (too_large := [n for n in ns if n > dp_limit]) != []:
        raise InfeasibleSweepError(f"N = {too_large[0]} exceeds the limit of the dynamic programme ({dp_limit})")

    if (invalid := [n for n in ns if n < 1]) != []:
        raise InfeasibleSweepError(f"N must be positive ({invalid[0]})")

    cells: list[tuple[Region, int, RateTarget, int]] = []

    for n in sorted(set(ns)):
        stride = lattice_stride(n, lattice_limit)

        if stride > 1:
            logger.warning(f"N = {n} exceeds the lattice limit {lattice_limit}; visiting every {stride}th point")

        cells.append((region, n, target, stride))

    table = RateTable(target, region)

    for row in run_jobs(_sweep_cell, cells, jobs, description=f"Sweep {target.value}"):
        table.add_row(row)

    return table
