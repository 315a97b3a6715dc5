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

from dataclasses import dataclass
from typing import Literal, Self

import numpy as np

from pydantic import BaseModel, Field, model_validator

from wfis.lib.limit.limit_analytic import DiffusionCoeffs, classical_diffusion_coeffs, diffusion_coeffs
from wfis.lib.random.jobs import run_jobs
from wfis.lib.random.rng_stream import DEFAULT_BLOCK_SIZE, RngStream, split_into_blocks
from wfis.lib.season.season_types import EstimateWithError

logger = logging.getLogger(__name__)

SdeModel = Literal["indirect", "classical"]

DEFAULT_DT = 1e-3
DEFAULT_T_END = 1.0


class SdeConfig(BaseModel):
    s: float = Field(default=0.5, gt=0)
    beta: float = Field(default=0.0, allow_inf_nan=False)
    x0: float = Field(ge=0, le=1)
    dt: float = Field(default=DEFAULT_DT, gt=0)
    t_end: float = Field(default=DEFAULT_T_END, ge=0)
    seed: int = Field(default=0, ge=0)
    model: SdeModel = "indirect"

    @model_validator(mode="after")
    def check_step(self) -> Self:
        if (self.t_end > 0) and (self.dt > self.t_end):
            raise ValueError(f"dt = {self.dt} exceeds t_end = {self.t_end}")

        return self

    @property
    def steps(self) -> int:
        return math.ceil(self.t_end / self.dt - 1e-9)

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.steps + 1) * self.dt

    @property
    def validated(self) -> bool:
        """Whether boundary statistics of this configuration are backed by
        the convergence results (not the case for s ≥ 1)"""

        return (self.model == "classical") or (self.s < 1)


@dataclass(frozen=True)
class SdePath:
    times: np.ndarray
    values: np.ndarray
    absorbed_at: tuple[float, float] | None


class PathMomentRow(BaseModel):
    t: float
    mean: EstimateWithError
    variance: EstimateWithError


def coefficients(cfg: SdeConfig, x: np.ndarray) -> DiffusionCoeffs:
    """Returns the coefficients of the configured model at x"""

    if cfg.model == "indirect":
        return diffusion_coeffs(cfg.s, x, cfg.beta)

    return classical_diffusion_coeffs(x, cfg.beta)


def em_simulate_batch(cfg: SdeConfig, reps: int, generator: np.random.Generator) -> np.ndarray:
    """Integrates reps independent paths with the Euler-Maruyama scheme

    X_{k+1} = clamp(X_k + b(X_k)·dt + sqrt(a(X_k)·dt)·G_k, 0, 1); paths that
    reach 0 or 1 stay there (both coefficients vanish at the boundary).

    Returns
    -------
    np.ndarray
        array of shape (steps + 1, reps)
    """

    values = np.empty((cfg.steps + 1, reps))
    values[0] = cfg.x0
    sqrt_dt = math.sqrt(cfg.dt)

    for step in range(1, cfg.steps + 1):
        current = values[step - 1]
        values[step] = current

        # one normal per path and step, drawn for absorbed paths too, keeps
        # the stream layout independent of absorption
        noise = generator.standard_normal(reps)
        running = (current > 0) & (current < 1)

        if not running.any():
            continue

        x = current[running]
        coeffs = coefficients(cfg, x)
        diffusion = np.sqrt(np.maximum(np.asarray(coeffs.a), 0.0)) * sqrt_dt
        values[step, running] = np.clip(x + np.asarray(coeffs.b) * cfg.dt + diffusion * noise[running], 0.0, 1.0)

    return values


def em_simulate(cfg: SdeConfig) -> SdePath:
    """Integrates a single path seeded by cfg.seed"""

    if not cfg.validated:
        logger.warning(f"Boundary behaviour for s = {cfg.s} ≥ 1 is not validated")

    values = em_simulate_batch(cfg, 1, RngStream(seed=cfg.seed).generator())[:, 0]
    times = cfg.times
    boundary_hits = np.flatnonzero((values == 0) | (values == 1))
    absorbed_at = (
        (float(times[boundary_hits[0]]), float(values[boundary_hits[0]])) if boundary_hits.size > 0 else None
    )

    return SdePath(times=times, values=values, absorbed_at=absorbed_at)


def _grid_indices(cfg: SdeConfig, t_grid: list[float]) -> list[int]:
    return [min(cfg.steps, max(0, round(t / cfg.dt))) for t in t_grid]


def _sde_block(job: tuple[SdeConfig, int, RngStream, list[int]]) -> np.ndarray:
    cfg, reps, rng, indices = job

    return em_simulate_batch(cfg, reps, rng.generator())[indices]


def simulate_values(
    cfg: SdeConfig, reps: int, t_grid: list[float], jobs: int = 1, stream_id: int = 0
) -> np.ndarray:
    """Returns the values of reps independent paths at the grid times

    Paths are simulated in fixed-size blocks, block i drawing from stream i
    within stream stream_id of cfg.seed.

    Returns
    -------
    np.ndarray
        array of shape (len(t_grid), reps)
    """

    if not cfg.validated:
        logger.warning(f"Boundary statistics for s = {cfg.s} ≥ 1 are not validated")

    indices = _grid_indices(cfg, t_grid)
    rng = RngStream(seed=cfg.seed, stream_id=stream_id)
    block_jobs = [
        (cfg, block_reps, rng.block(index), indices)
        for index, block_reps in enumerate(split_into_blocks(reps, DEFAULT_BLOCK_SIZE))
    ]

    return np.concatenate(run_jobs(_sde_block, block_jobs, jobs, "Diffusion paths"), axis=1)


def path_moments(cfg: SdeConfig, reps: int, t_grid: list[float], jobs: int = 1) -> list[PathMomentRow]:
    """Estimates the mean and variance of X_t at the grid times"""

    values = simulate_values(cfg, reps, t_grid, jobs)

    return [
        PathMomentRow(
            t=float(t),
            mean=EstimateWithError.from_samples(row),
            variance=EstimateWithError.variance_from_samples(row),
        )
        for t, row in zip(t_grid, values)
    ]
