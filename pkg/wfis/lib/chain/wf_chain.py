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

"""Wright-Fisher chains

One generation of the indirect-selection chain runs a season with
w = x·n white and b = (1 − x)·n black males and f = ⌊s·n⌋ draws, weights
the marked white males by 1 + β·d, and resamples n males from the egg pool:

    Z̃ = (1 + β·d)·X̃ / ((1 + β·d)·X̃ + Ỹ),   X₁ = Binomial(n, Z̃)/n

with d = 1/n (default) or d = 1/N, N = (1 + s)·n. The classical chain
resamples Binomial(n, (1 + β/n)·x / (1 − x + (1 + β/n)·x))/n.
"""

import logging
import math

from dataclasses import dataclass
from typing import Literal, Self

import numpy as np

from pydantic import BaseModel, Field, model_validator
from scipy.stats import binom

from wfis.lib.random.jobs import run_jobs
from wfis.lib.random.rng_stream import DEFAULT_BLOCK_SIZE, RngStream, split_into_blocks
from wfis.lib.season.season_mc import simulate_seasons
from wfis.utils.error import DegenerateStepError, DomainError

logger = logging.getLogger(__name__)

BetaDenominator = Literal["n", "N"]

_GRID_SLACK = 1e-9


class ChainConfig(BaseModel):
    n: int = Field(ge=1, description="number of males")
    s: float = Field(gt=0, description="sex ratio (females per male)")
    beta: float = Field(allow_inf_nan=False, description="selection coefficient")
    x0: float = Field(ge=0, le=1, description="initial white frequency")
    generations: int = Field(default=0, ge=0)
    seed: int = Field(default=0, ge=0)
    beta_denominator: BetaDenominator = "n"

    @model_validator(mode="after")
    def check_grid(self) -> Self:
        if abs(self.x0 * self.n - round(self.x0 * self.n)) > _GRID_SLACK * self.n:
            raise ValueError(f"x0 = {self.x0} is not on the grid {{0, 1/n, …, 1}} for n = {self.n}")

        if self.selection_weight <= 0:
            raise ValueError(f"1 + β·d must be positive (β = {self.beta}, d = 1/{self.population_scale})")

        return self

    @property
    def draws(self) -> int:
        """Number of females f = ⌊s·n⌋"""

        return math.floor(self.s * self.n + _GRID_SLACK)

    @property
    def effective_beta(self) -> float:
        """Selection coefficient of the limiting diffusion (β, or β/(1+s)
        if β is divided by N)"""

        return self.beta if self.beta_denominator == "n" else self.beta / (1 + self.s)

    @property
    def population_scale(self) -> float:
        return self.n if self.beta_denominator == "n" else (1 + self.s) * self.n

    @property
    def selection_weight(self) -> float:
        return 1 + self.beta / self.population_scale


@dataclass(frozen=True)
class Trajectory:
    """Frequencies of generations 0, …, generations

    absorbed_at is (generation, boundary) for the first generation at which
    the frequency is 0 or 1; the remainder of the trajectory is constant.
    """

    states: list[float]
    absorbed_at: tuple[int, float] | None

    @classmethod
    def from_states(cls, states: np.ndarray) -> Self:
        boundary_hits = np.flatnonzero((states == 0) | (states == 1))
        absorbed_at = (
            (int(boundary_hits[0]), float(states[boundary_hits[0]])) if boundary_hits.size > 0 else None
        )

        return cls(states=[float(state) for state in states], absorbed_at=absorbed_at)


def _on_grid_counts(x: float | np.ndarray, n: int) -> np.ndarray:
    counts = np.rint(np.asarray(x, dtype=np.float64) * n).astype(np.int64)

    if np.any(np.abs(np.asarray(x) * n - counts) > _GRID_SLACK * n) or np.any(counts < 0) or np.any(counts > n):
        raise DomainError(f"Frequency not on the grid {{0, 1/n, …, 1}} for n = {n}: {x}")

    return counts


def _sample_binomial(
    n: int, p: np.ndarray, generator: np.random.Generator, inverse_transform: bool
) -> np.ndarray:
    if not inverse_transform:
        return generator.binomial(n, p)

    # quantile transform of one uniform per replica; runs sharing the
    # uniforms are monotonically coupled in p
    counts = binom.ppf(generator.random(p.shape), n, p)

    return np.clip(np.nan_to_num(counts, nan=0.0), 0, n).astype(np.int64)


def chain_step_batch(
    x: float | np.ndarray,
    cfg: ChainConfig,
    reps: int,
    generator: np.random.Generator,
    inverse_transform: bool = False,
) -> np.ndarray:
    """Performs one generation of the indirect-selection chain for many
    replicas

    Parameters
    ----------
    x
        current frequencies on the grid (scalar or one value per replica)
    cfg
        chain configuration (n, s, β, β denominator)
    reps
        number of replicas
    generator
        NumPy random generator
    inverse_transform
        whether the binomial resampling uses the quantile transform of a
        single uniform (for paired runs with common random numbers)

    Returns
    -------
    np.ndarray
        next frequencies

    Raises
    ------
    DegenerateStepError
        if ⌊s·n⌋ = 0 or a season marks no ball
    """

    if cfg.draws == 0:
        raise DegenerateStepError(f"No draws per season (⌊s·n⌋ = 0 for s = {cfg.s}, n = {cfg.n})")

    w = np.broadcast_to(_on_grid_counts(x, cfg.n), (reps,))
    batch = simulate_seasons(w, cfg.n - w, cfg.draws, reps, generator)
    marked = batch.x_counts + batch.y_counts

    if np.any(marked < 1):
        raise DegenerateStepError("A season with at least one draw marked no ball (X̃ = Ỹ = 0)")

    weighted = cfg.selection_weight * batch.x_counts
    z = weighted / (weighted + batch.y_counts)
    result = _sample_binomial(cfg.n, z, generator, inverse_transform) / cfg.n

    assert np.all(result[w == 0] == 0) and np.all(result[w == cfg.n] == 1)

    return result


def chain_step(x: float, cfg: ChainConfig, generator: np.random.Generator) -> float:
    """Performs one generation of the indirect-selection chain"""

    return float(chain_step_batch(x, cfg, 1, generator)[0])


def classical_step_mean(x: float | np.ndarray, n: int, beta: float) -> float | np.ndarray:
    """Returns the exact one-step mean (1 + β/n)·x / (1 − x + (1 + β/n)·x)
    of the classical chain"""

    weighted = (1 + beta / n) * np.asarray(x, dtype=np.float64)
    result = weighted / (1 - np.asarray(x) + weighted)

    return float(result) if np.ndim(x) == 0 else result


def classical_step_batch(
    x: float | np.ndarray,
    n: int,
    beta: float,
    reps: int,
    generator: np.random.Generator,
    inverse_transform: bool = False,
) -> np.ndarray:
    """Performs one generation of the classical Wright-Fisher chain with
    selection for many replicas"""

    if 1 + beta / n <= 0:
        raise DomainError(f"1 + β/n must be positive (β = {beta}, n = {n})")

    _on_grid_counts(x, n)
    p = np.broadcast_to(np.asarray(classical_step_mean(x, n, beta), dtype=np.float64), (reps,))

    return _sample_binomial(n, p, generator, inverse_transform) / n


def classical_wf_step(x: float, n: int, beta: float, generator: np.random.Generator) -> float:
    return float(classical_step_batch(x, n, beta, 1, generator)[0])


def run_chain(cfg: ChainConfig) -> Trajectory:
    """Iterates the indirect-selection chain from x0 for cfg.generations
    generations or until absorption (the remaining states are then filled
    with the absorbing value)"""

    generator = RngStream(seed=cfg.seed).generator()
    states = np.full(cfg.generations + 1, cfg.x0)

    for generation in range(1, cfg.generations + 1):
        previous = states[generation - 1]

        if previous in (0.0, 1.0):
            states[generation:] = previous

            break

        states[generation] = chain_step(previous, cfg, generator)

    return Trajectory.from_states(states)


def _chain_block(job: tuple[ChainConfig, str, int, RngStream]) -> np.ndarray:
    cfg, model, reps, rng = job
    generator = rng.generator()
    paths = np.empty((reps, cfg.generations + 1))
    paths[:, 0] = cfg.x0

    for generation in range(1, cfg.generations + 1):
        current = paths[:, generation - 1]
        running = (current > 0) & (current < 1)
        paths[:, generation] = current

        if not running.any():
            paths[:, generation:] = current[:, np.newaxis]

            break

        if model == "indirect":
            paths[running, generation] = chain_step_batch(current[running], cfg, int(running.sum()), generator)
        else:
            paths[running, generation] = classical_step_batch(
                current[running], cfg.n, cfg.beta, int(running.sum()), generator
            )

    return paths


def run_chain_paths(
    cfg: ChainConfig, reps: int, jobs: int = 1, model: Literal["indirect", "classical"] = "indirect"
) -> np.ndarray:
    """Simulates reps independent trajectories in fixed-size blocks

    Block i draws from stream i of cfg.seed, so results do not depend on
    the number of workers. The classical model uses β/n as selection.

    Returns
    -------
    np.ndarray
        array of shape (reps, generations + 1)
    """

    rng = RngStream(seed=cfg.seed)
    block_jobs = [
        (cfg, model, block_reps, rng.block(index))
        for index, block_reps in enumerate(split_into_blocks(reps, DEFAULT_BLOCK_SIZE))
    ]

    logger.debug(f"Simulating {reps} {model} chain(s) over {cfg.generations} generation(s)")

    return np.concatenate(run_jobs(_chain_block, block_jobs, jobs, "Chains"), axis=0)


def run_chains(cfg: ChainConfig, reps: int, jobs: int = 1) -> list[Trajectory]:
    return [Trajectory.from_states(path) for path in run_chain_paths(cfg, reps, jobs)]
