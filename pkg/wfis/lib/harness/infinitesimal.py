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

"""Infinitesimal mean and variance of the one-step chain

The chain started at x moves by X₁ − x in one generation. Its infinitesimal
variance aⁿ(x) = n·Var(X₁), mean bⁿ(x) = n·(E[X₁] − x) and third absolute
moment cⁿ(x) = n·E|X₁ − x|³ are estimated by Monte Carlo and compared with
the coefficients of the limiting diffusion; the exact second moments of a
season are compared with their limits through two linear combinations.
"""

import logging
import math

import numpy as np

from pydantic import BaseModel, computed_field

from wfis.lib.chain.wf_chain import BetaDenominator, ChainConfig, chain_step_batch
from wfis.lib.limit.limit_analytic import diffusion_coeffs, eval_vs
from wfis.lib.random.jobs import run_jobs
from wfis.lib.random.rng_stream import DEFAULT_BLOCK_SIZE, RngStream, split_into_blocks
from wfis.lib.season.season_exact import moment_identities
from wfis.lib.season.season_types import EstimateWithError, UrnState
from wfis.utils.error import DomainError

logger = logging.getLogger(__name__)

# number of standard errors tolerated on top of the fitted envelope
_STANDARD_ERRORS = 4.0


class InfinitesimalRow(BaseModel):
    n: int
    x: float
    a_formula: float
    b_formula: float
    a_estimate: EstimateWithError
    b_estimate: EstimateWithError
    c_estimate: EstimateWithError
    a_error: float
    b_error: float
    shift_formula: float | None = None
    shift_estimate: EstimateWithError | None = None
    shift_error: float | None = None


class Envelope(BaseModel):
    """Bound |error| ≤ 4·SE + constant/√n

    The constant is 0 for checks without a fitted 1/√n term.
    """

    constant: float
    violations: list[tuple[int, float]]

    @computed_field
    @property
    def passed(self) -> bool:
        return len(self.violations) == 0


class InfinitesimalReport(BaseModel):
    s: float
    beta: float
    effective_beta: float
    beta_denominator: BetaDenominator
    validated: bool
    rows: list[InfinitesimalRow]
    variance_envelope: Envelope
    drift_envelope: Envelope
    shift_check: Envelope | None

    @computed_field
    @property
    def passed(self) -> bool:
        return (
            self.variance_envelope.passed
            and self.drift_envelope.passed
            and ((self.shift_check is None) or self.shift_check.passed)
        )


class MomentIdentityRow(BaseModel):
    n: int
    x: float
    w: int
    b: int
    f: int
    drift_combination: float
    drift_limit: float
    drift_error: float
    variance_combination: float
    variance_limit: float
    variance_error: float


class MomentIdentityReport(BaseModel):
    s: float
    rows: list[MomentIdentityRow]
    # frequencies at which an error does not shrink from the smallest to the largest n
    not_shrinking: list[float]

    @computed_field
    @property
    def passed(self) -> bool:
        return len(self.not_shrinking) == 0


def snap_to_grid(x: float, n: int) -> float:
    """Returns the grid point of {0, 1/n, …, 1} closest to x"""

    if not (0 <= x <= 1):
        raise DomainError(f"Frequency must lie in [0, 1] ({x})")

    return round(x * n) / n


def _step_block(job: tuple[ChainConfig, float, int, RngStream, bool]) -> tuple[np.ndarray, np.ndarray | None]:
    cfg, x, reps, rng, paired = job
    result = chain_step_batch(x, cfg, reps, rng.generator(), inverse_transform=True)

    if not paired:
        return result, None

    # the same stream reproduces the same seasons and uniforms without selection
    neutral = cfg.model_copy(update={"beta": 0.0})

    return result, chain_step_batch(x, neutral, reps, rng.generator(), inverse_transform=True)


def _fit_envelope(errors: list[tuple[int, float, float]]) -> Envelope:
    """Fits the constant of the envelope on the smallest n and lists the
    (n, x) cells exceeding it

    Parameters
    ----------
    errors
        (n, error, standard error) per cell
    """

    smallest_n = min(n for n, _, _ in errors)
    constant = max(
        (
            max(0.0, error - _STANDARD_ERRORS * std_error) * math.sqrt(n)
            for n, error, std_error in errors
            if n == smallest_n
        ),
        default=0.0,
    )
    violations = [
        (n, error)
        for n, error, std_error in errors
        if error > _STANDARD_ERRORS * std_error + constant / math.sqrt(n) + 1e-12
    ]

    return Envelope(constant=constant, violations=violations)


def _standard_error_check(errors: list[tuple[int, float, float]]) -> Envelope:
    """Lists the (n, error) cells with error > 4·SE"""

    violations = [(n, error) for n, error, std_error in errors if error > _STANDARD_ERRORS * std_error + 1e-12]

    return Envelope(constant=0.0, violations=violations)


def infinitesimal_check(
    n_list: list[int],
    x_grid: list[float],
    s: float,
    beta: float,
    reps: int,
    seed: int,
    jobs: int = 1,
    beta_denominator: BetaDenominator = "n",
) -> InfinitesimalReport:
    """Estimates the infinitesimal coefficients of the chain on a grid of
    population sizes and frequencies

    Each (n, x) cell draws from its own stream of the seed. Frequencies are
    moved to the nearest grid point of {0, 1/n, …, 1}. For β ≠ 0 a run
    without selection reuses the same random numbers (paired runs), so the
    drift shift β·x(1−x) is estimated with a small standard error. The
    envelopes of a and b carry a constant fitted on the smallest n; the
    shift must match within 4 standard errors in every cell.

    Parameters
    ----------
    n_list
        population sizes
    x_grid
        initial frequencies
    s
        sex ratio
    beta
        selection coefficient
    reps
        number of one-step replicas per cell
    seed
        seed of the random streams
    jobs
        maximum number of worker processes
    beta_denominator
        whether β is divided by n or by N = (1 + s)·n in the chain

    Returns
    -------
    InfinitesimalReport
        estimates per cell and envelope checks
    """

    if len(n_list) == 0 or len(x_grid) == 0:
        raise DomainError("At least one population size and one frequency are required")

    if reps < 2:
        raise DomainError(f"At least two replicas are required ({reps})")

    validated = s < 1

    if not validated:
        logger.warning(f"Infinitesimal coefficients for s = {s} ≥ 1 are not validated near x = 1")

    paired = beta != 0
    rng = RngStream(seed=seed)
    cells: list[tuple[ChainConfig, float]] = []
    block_jobs: list[tuple[ChainConfig, float, int, RngStream, bool]] = []
    block_cells: list[int] = []

    for n_index, n in enumerate(n_list):
        for x_index, x in enumerate(x_grid):
            x_n = snap_to_grid(x, n)
            cfg = ChainConfig(n=n, s=s, beta=beta, x0=x_n, beta_denominator=beta_denominator)
            cell_rng = rng.for_cell(n_index, x_index)
            cells.append((cfg, x_n))

            if x_n in (0.0, 1.0):
                continue

            for block_index, block_reps in enumerate(split_into_blocks(reps, DEFAULT_BLOCK_SIZE)):
                block_jobs.append((cfg, x_n, block_reps, cell_rng.block(block_index), paired))
                block_cells.append(len(cells) - 1)

    results = run_jobs(_step_block, block_jobs, jobs, "One-step replicas")
    effective_beta = cells[0][0].effective_beta
    rows: list[InfinitesimalRow] = []

    for cell_index, (cfg, x_n) in enumerate(cells):
        cell_results = [result for result, index in zip(results, block_cells) if index == cell_index]
        rows.append(_infinitesimal_row(cfg, x_n, cell_results, paired, reps))

    variance_errors = [(row.n, row.a_error, row.a_estimate.std_error) for row in rows]
    drift_errors = [(row.n, row.b_error, row.b_estimate.std_error) for row in rows]
    shift_check = None

    if paired:
        shift_errors = [
            (row.n, row.shift_error, row.shift_estimate.std_error)
            for row in rows
            if (row.shift_error is not None) and (row.shift_estimate is not None)
        ]
        shift_check = _standard_error_check(shift_errors) if len(shift_errors) != 0 else None

    return InfinitesimalReport(
        s=s,
        beta=beta,
        effective_beta=effective_beta,
        beta_denominator=beta_denominator,
        validated=validated,
        rows=rows,
        variance_envelope=_fit_envelope(variance_errors),
        drift_envelope=_fit_envelope(drift_errors),
        shift_check=shift_check,
    )


def _infinitesimal_row(
    cfg: ChainConfig, x: float, results: list[tuple[np.ndarray, np.ndarray | None]], paired: bool, reps: int
) -> InfinitesimalRow:
    n = cfg.n
    coefficients = diffusion_coeffs(cfg.s, x, cfg.effective_beta)
    a_formula, b_formula = float(coefficients.a), float(coefficients.b)
    shift_formula = cfg.effective_beta * x * (1 - x) if paired else None

    if len(results) == 0:
        # absorbing boundary: X₁ = x
        zero = EstimateWithError(value=0.0, std_error=0.0, n_samples=reps)

        return InfinitesimalRow(
            n=n,
            x=x,
            a_formula=a_formula,
            b_formula=b_formula,
            a_estimate=zero,
            b_estimate=zero,
            c_estimate=zero,
            a_error=abs(a_formula),
            b_error=abs(b_formula),
            shift_formula=shift_formula,
            shift_estimate=zero if paired else None,
            shift_error=abs(shift_formula) if shift_formula is not None else None,
        )

    samples = np.concatenate([result for result, _ in results])
    increments = samples - x
    variance = EstimateWithError.variance_from_samples(samples)
    a_estimate = EstimateWithError(value=n * variance.value, std_error=n * variance.std_error, n_samples=samples.size)
    b_estimate = EstimateWithError.from_samples(n * increments)
    c_estimate = EstimateWithError.from_samples(n * np.abs(increments) ** 3)
    shift_estimate = None
    shift_error = None

    if paired:
        neutral = np.concatenate([result for _, result in results if result is not None])
        shift_estimate = EstimateWithError.from_samples(n * (samples - neutral))
        assert shift_formula is not None
        shift_error = abs(shift_estimate.value - shift_formula)

    logger.debug(f"Estimated infinitesimal coefficients at n={n}, x={x}")

    return InfinitesimalRow(
        n=n,
        x=x,
        a_formula=a_formula,
        b_formula=b_formula,
        a_estimate=a_estimate,
        b_estimate=b_estimate,
        c_estimate=c_estimate,
        a_error=abs(a_estimate.value - a_formula),
        b_error=abs(b_estimate.value - b_formula),
        shift_formula=shift_formula,
        shift_estimate=shift_estimate,
        shift_error=shift_error,
    )


def moment_identity_check(n_list: list[int], x_grid: list[float], s: float) -> MomentIdentityReport:
    """Compares the exact second moments of a season with their limits

    For w = x·n white males, b = (1 − x)·n black males and f = ⌊s·n⌋ draws,

        (−b·Var X̃ + (w−b)·Cov + w·Var Ỹ)/(wb) → v_s′(x)(v_s(x) − 1)
        (b²·Var X̃ − 2wb·Cov + w²·Var Ỹ)/(wbn) → v_s(x)(1 − v_s(x))

    with errors of order 1/n. Frequencies 0 and 1 are skipped.

    Parameters
    ----------
    n_list
        population sizes
    x_grid
        frequencies in (0, 1)
    s
        sex ratio

    Returns
    -------
    MomentIdentityReport
        normalised combinations, their limits and errors per (n, x)
    """

    rows: list[MomentIdentityRow] = []

    for n in sorted(set(n_list)):
        draws = ChainConfig(n=n, s=s, beta=0.0, x0=0.0).draws

        for x in x_grid:
            x_n = snap_to_grid(x, n)
            w = round(x_n * n)
            b = n - w

            if (w == 0) or (b == 0):
                continue

            drift_combination, variance_combination = moment_identities(UrnState(w, b, draws))
            drift_combination /= w * b
            variance_combination /= w * b * n
            evaluation = eval_vs(s, x_n)
            v, v_prime = float(evaluation.v_s), float(evaluation.v_s_prime)
            drift_limit = v_prime * (v - 1)
            variance_limit = v * (1 - v)

            rows.append(
                MomentIdentityRow(
                    n=n,
                    x=x_n,
                    w=w,
                    b=b,
                    f=draws,
                    drift_combination=drift_combination,
                    drift_limit=drift_limit,
                    drift_error=abs(drift_combination - drift_limit),
                    variance_combination=variance_combination,
                    variance_limit=variance_limit,
                    variance_error=abs(variance_combination - variance_limit),
                )
            )

        logger.info(f"Checked moment identities at n={n}")

    not_shrinking: list[float] = []

    for x in x_grid:
        x_rows = [row for row in rows if abs(row.x - x) <= 1 / row.n]

        if len(x_rows) < 2:
            continue

        first, last = x_rows[0], x_rows[-1]

        if (last.drift_error > first.drift_error) or (last.variance_error > first.variance_error):
            not_shrinking.append(x)

    return MomentIdentityReport(s=s, rows=rows, not_shrinking=not_shrinking)
