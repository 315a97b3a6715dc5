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

"""Seeded Monte-Carlo simulation of reproductive seasons

A season is a sequence of f draws from an urn holding w white and b black
balls: a drawn white ball is marked and removed, a drawn black ball is
marked and put back.
"""

import logging
import math

from dataclasses import dataclass

import numpy as np

from pydantic import BaseModel, computed_field

from wfis.lib.random.jobs import run_jobs
from wfis.lib.random.rng_stream import DEFAULT_BLOCK_SIZE, RngStream, split_into_blocks
from wfis.lib.season.season_exact import exact_q, season_moments_exact
from wfis.lib.season.season_types import EstimateWithError, SeasonOutcome, UrnState
from wfis.utils.error import DomainError, WfisException

logger = logging.getLogger(__name__)

_NUMBER_BUFFER_SIZE = 256


@dataclass(frozen=True)
class SeasonBatch:
    """Outcomes of many independent seasons

    white_marked and black_marked record whether the designated white ball
    and the designated black ball were marked; they are only present for
    batches simulated with tracking.
    """

    x_counts: np.ndarray
    y_counts: np.ndarray
    white_marked: np.ndarray | None = None
    black_marked: np.ndarray | None = None

    @classmethod
    def concatenate(cls, batches: list["SeasonBatch"]) -> "SeasonBatch":
        tracked = all(batch.white_marked is not None for batch in batches)

        return cls(
            x_counts=np.concatenate([batch.x_counts for batch in batches]),
            y_counts=np.concatenate([batch.y_counts for batch in batches]),
            white_marked=np.concatenate([batch.white_marked for batch in batches]) if tracked else None,
            black_marked=np.concatenate([batch.black_marked for batch in batches]) if tracked else None,
        )


class CouplingReport(BaseModel):
    w: int
    b: int
    f: int
    runs: int
    neither: int
    urn1_only: int
    urn2_only: int
    both: int
    red_drawn_urn1: EstimateWithError
    expected_red_drawn_urn1: float


class TailRow(BaseModel):
    variable: str
    n: int
    threshold: float
    empirical: float
    bound: float
    std_error: float
    violated: bool


class TailReport(BaseModel):
    w: int
    b: int
    f: int
    reps: int
    rows: list[TailRow]

    @computed_field
    @property
    def passed(self) -> bool:
        return not any(row.violated for row in self.rows)


class ThirdMomentRow(BaseModel):
    variable: str
    n: int
    empirical: EstimateWithError
    bound: float
    violated: bool


class ThirdMomentReport(BaseModel):
    w: int
    b: int
    f: int
    reps: int
    rows: list[ThirdMomentRow]

    @computed_field
    @property
    def passed(self) -> bool:
        return not any(row.violated for row in self.rows)


def simulate_season(state: UrnState, rng: RngStream) -> SeasonOutcome:
    """Simulates one season draw by draw

    The urn is an integer-indexed multiset; balls 0, …, w−1 are white. A
    drawn white ball is swap-removed.

    Parameters
    ----------
    state
        urn counts (w, b, f)
    rng
        random stream

    Returns
    -------
    SeasonOutcome
        numbers of marked white and black balls

    Raises
    ------
    DomainError
        if the urn is empty and draws are pending
    """

    w, b, f = state.w, state.b, state.f

    if (w + b == 0) and (f > 0):
        raise DomainError("An empty urn cannot be drawn from (w = b = 0, f > 0)")

    generator = rng.generator()
    urn = list(range(w + b))
    size = w + b
    x_count = 0
    marked_blacks: set[int] = set()

    for _ in range(f):
        if size == 0:
            break

        position = int(generator.integers(0, size))
        ball = urn[position]

        if ball < w:
            x_count += 1
            urn[position] = urn[size - 1]
            size -= 1
        else:
            marked_blacks.add(ball)

    return SeasonOutcome(x_count=x_count, y_count=len(marked_blacks))


def simulate_seasons(
    w: int | np.ndarray, b: int | np.ndarray, f: int, reps: int, generator: np.random.Generator, track: bool = False
) -> SeasonBatch:
    """Simulates independent seasons for many replicas at once

    Balls of a color are exchangeable, so each replica only keeps the number
    of remaining white balls and of marked black balls. A draw is an integer
    k uniform on [0, remaining whites + b): k below the number of remaining
    whites draws a white ball, the next b − (marked blacks) values draw an
    unmarked black ball and the rest a marked one. Index 0 of each range
    stands for the designated ball while it is still unmarked.

    Parameters
    ----------
    w
        number of white balls (scalar or one value per replica)
    b
        number of black balls (scalar or one value per replica)
    f
        number of draws
    reps
        number of replicas
    generator
        NumPy random generator
    track
        whether the designated white and black balls are tracked

    Returns
    -------
    SeasonBatch
        per-replica outcomes
    """

    whites = np.broadcast_to(np.asarray(w, dtype=np.int64), (reps,))
    blacks = np.broadcast_to(np.asarray(b, dtype=np.int64), (reps,))
    whites_left = whites.copy()
    marked_blacks = np.zeros(reps, dtype=np.int64)
    white_marked = np.zeros(reps, dtype=bool) if track else None
    black_marked = np.zeros(reps, dtype=bool) if track else None

    for _ in range(f):
        size = whites_left + blacks
        active = size > 0
        k = generator.integers(0, np.maximum(size, 1))
        white_drawn = active & (k < whites_left)
        k_black = k - whites_left
        black_newly_marked = active & ~white_drawn & (k_black < blacks - marked_blacks)

        if white_marked is not None and black_marked is not None:
            white_marked |= white_drawn & (k == 0)
            black_marked |= black_newly_marked & (k_black == 0)

        whites_left -= white_drawn
        marked_blacks += black_newly_marked

    return SeasonBatch(
        x_counts=whites - whites_left, y_counts=marked_blacks, white_marked=white_marked, black_marked=black_marked
    )


def _simulate_season_block(job: tuple[UrnState, int, RngStream, bool]) -> SeasonBatch:
    state, reps, rng, track = job

    return simulate_seasons(state.w, state.b, state.f, reps, rng.generator(), track=track)


def simulate_season_blocks(
    state: UrnState, reps: int, rng: RngStream, jobs: int = 1, track: bool = False
) -> SeasonBatch:
    """Simulates reps seasons in fixed-size blocks, block i drawing from
    stream i, and fans the blocks out over jobs worker processes"""

    if (state.w + state.b == 0) and (state.f > 0):
        raise DomainError("An empty urn cannot be drawn from (w = b = 0, f > 0)")

    block_jobs = [
        (state, block_reps, rng.block(index), track)
        for index, block_reps in enumerate(split_into_blocks(reps, DEFAULT_BLOCK_SIZE))
    ]

    return SeasonBatch.concatenate(run_jobs(_simulate_season_block, block_jobs, jobs, "Seasons"))


class _NumberStream:
    """Shared sequence of i.i.d. uniform ball numbers read by both urns of
    the coupling"""

    def __init__(self, generator: np.random.Generator, total: int):
        self._buffer = np.empty(0, dtype=np.int64)
        self._generator = generator
        self._position = 0
        self._total = total

    def next(self) -> int:
        if self._position == self._buffer.size:
            self._buffer = self._generator.integers(0, self._total, size=_NUMBER_BUFFER_SIZE)
            self._position = 0

        value = int(self._buffer[self._position])
        self._position += 1

        return value


def _check_coupling_state(state: UrnState):
    if (state.w < 1) or (state.b < 1):
        raise DomainError(f"The coupled urns require w ≥ 1 and b ≥ 1 (w={state.w}, b={state.b})")


def simulate_coupled_urns(state: UrnState, rng: RngStream) -> tuple[bool, bool]:
    """Runs the two coupled urns driven by one shared number sequence

    Both urns hold balls numbered 0, …, w+b−1 where the last ball is red.
    In urn 1 balls 0, …, w−1 are white; urn 2 is identical except that ball
    w−1 is black. Every step each running urn chooses the first number of
    the shared sequence whose ball it still holds (both urns choose the same
    ball if both hold it). A chosen red ball stops its urn and a chosen white
    ball is removed. The run ends when both red balls are chosen or after f
    steps.

    Parameters
    ----------
    state
        urn counts (w, b, f) with w ≥ 1 and b ≥ 1
    rng
        random stream

    Returns
    -------
    tuple[bool, bool]
        whether the red ball was drawn in urn 1 and in urn 2
    """

    _check_coupling_state(state)

    total = state.w + state.b
    red = total - 1
    white_counts = (state.w, state.w - 1)
    present = [[True] * total, [True] * total]
    stopped = [False, False]
    numbers = _NumberStream(rng.generator(), total)

    for _ in range(state.f):
        if all(stopped):
            break

        choices: list[int | None] = [None if not stopped[urn] else -1 for urn in (0, 1)]

        while (choices[0] is None) or (choices[1] is None):
            k = numbers.next()

            for urn in (0, 1):
                if (choices[urn] is None) and present[urn][k]:
                    choices[urn] = k

        for urn in (0, 1):
            choice = choices[urn]

            if stopped[urn] or (choice is None):
                continue

            if choice == red:
                stopped[urn] = True
            elif choice < white_counts[urn]:
                present[urn][choice] = False

    return stopped[0], stopped[1]


def coupled_urns_batch(state: UrnState, runs: int, generator: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Runs the coupled urns for many independent runs at once

    Each run reads its own number sequence; one number is read per run and
    iteration until every running urn has chosen a ball.

    Returns
    -------
    tuple[np.ndarray, np.ndarray]
        per-run flags telling whether the red ball was drawn in urn 1 and in
        urn 2
    """

    _check_coupling_state(state)

    total = state.w + state.b
    red = total - 1
    rows = np.arange(runs)
    white_counts = (state.w, state.w - 1)
    present = [np.ones((runs, total), dtype=bool), np.ones((runs, total), dtype=bool)]
    stopped = [np.zeros(runs, dtype=bool), np.zeros(runs, dtype=bool)]

    for _ in range(state.f):
        if (stopped[0] & stopped[1]).all():
            break

        choices = [np.where(stopped[urn], -2, -1) for urn in (0, 1)]

        while ((choices[0] == -1) | (choices[1] == -1)).any():
            k = generator.integers(0, total, size=runs)

            for urn in (0, 1):
                take = (choices[urn] == -1) & present[urn][rows, k]
                choices[urn][take] = k[take]

        for urn in (0, 1):
            running = choices[urn] >= 0
            stopped[urn] |= running & (choices[urn] == red)
            removed = running & (choices[urn] < white_counts[urn])
            present[urn][rows[removed], choices[urn][removed]] = False

    return stopped[0], stopped[1]


def _coupling_block(job: tuple[UrnState, int, RngStream]) -> tuple[int, int, int, int]:
    state, runs, rng = job
    red_drawn_urn1, red_drawn_urn2 = coupled_urns_batch(state, runs, rng.generator())

    return (
        int(np.count_nonzero(~red_drawn_urn1 & ~red_drawn_urn2)),
        int(np.count_nonzero(red_drawn_urn1 & ~red_drawn_urn2)),
        int(np.count_nonzero(~red_drawn_urn1 & red_drawn_urn2)),
        int(np.count_nonzero(red_drawn_urn1 & red_drawn_urn2)),
    )


def coupling_run(state: UrnState, runs: int, seed: int, jobs: int = 1) -> CouplingReport:
    """Runs the coupled urns runs times and counts the four outcome pairs

    Raises
    ------
    WfisException
        if the red ball is ever drawn in urn 2 but not in urn 1
    """

    _check_coupling_state(state)

    rng = RngStream(seed=seed)
    block_jobs = [
        (state, block_runs, rng.block(index)) for index, block_runs in enumerate(split_into_blocks(runs))
    ]

    counts = np.sum(np.array(run_jobs(_coupling_block, block_jobs, jobs, "Coupled urns"), dtype=np.int64), axis=0)
    neither, urn1_only, urn2_only, both = (int(count) for count in counts)

    if urn2_only != 0:
        raise WfisException(
            f"Coupling invariant violated: red ball drawn in urn 2 but not in urn 1 in {urn2_only} of {runs} runs"
        )

    frequency = (urn1_only + both) / runs
    std_error = math.sqrt(frequency * (1.0 - frequency) / (runs - 1)) if runs > 1 else 0.0

    logger.info(f"Coupled urns at {state}: {urn1_only} run(s) separate the urns, none in the forbidden direction")

    return CouplingReport(
        w=state.w,
        b=state.b,
        f=state.f,
        runs=runs,
        neither=neither,
        urn1_only=urn1_only,
        urn2_only=urn2_only,
        both=both,
        red_drawn_urn1=EstimateWithError(value=frequency, std_error=std_error, n_samples=runs),
        expected_red_drawn_urn1=1.0 - exact_q(state.shifted(db=-1)),
    )


def estimate_probs(
    state: UrnState, reps: int, seed: int, jobs: int = 1
) -> tuple[EstimateWithError, EstimateWithError]:
    """Estimates p_w and p_b by tracking one designated white and one
    designated black ball across reps independent seasons"""

    if (state.w < 1) or (state.b < 1):
        raise DomainError(f"Estimating p_w and p_b requires w ≥ 1 and b ≥ 1 (w={state.w}, b={state.b})")

    batch = simulate_season_blocks(state, reps, RngStream(seed=seed), jobs, track=True)

    assert batch.white_marked is not None
    assert batch.black_marked is not None

    return (
        EstimateWithError.from_samples(batch.white_marked.astype(np.float64)),
        EstimateWithError.from_samples(batch.black_marked.astype(np.float64)),
    )


def _centered_counts(state: UrnState, batch: SeasonBatch) -> list[tuple[str, int, np.ndarray]]:
    moments = season_moments_exact(state)

    return [
        (variable, n, counts - mean)
        for variable, n, counts, mean in (
            ("x", state.w, batch.x_counts, moments.mean_x),
            ("y", state.b, batch.y_counts, moments.mean_y),
        )
        if n > 0
    ]


def tail_check(state: UrnState, reps: int, thresholds: list[float], seed: int, jobs: int = 1) -> TailReport:
    """Compares empirical tails P(|X̃ − E X̃| ≥ D) and P(|Ỹ − E Ỹ| ≥ D) with
    the bound exp(−D²/(4n)), n being the number of indicators summed

    A row is flagged as violated if the empirical frequency exceeds the
    bound by more than three binomial standard errors.
    """

    batch = simulate_season_blocks(state, reps, RngStream(seed=seed), jobs)
    rows: list[TailRow] = []

    for variable, n, deviations in _centered_counts(state, batch):
        for threshold in thresholds:
            empirical = float(np.mean(np.abs(deviations) >= threshold))
            bound = math.exp(-(threshold**2) / (4 * n))
            std_error = math.sqrt(bound * (1.0 - bound) / reps)

            rows.append(
                TailRow(
                    variable=variable,
                    n=n,
                    threshold=threshold,
                    empirical=empirical,
                    bound=bound,
                    std_error=std_error,
                    violated=empirical > bound + 3 * std_error,
                )
            )

    return TailReport(w=state.w, b=state.b, f=state.f, reps=reps, rows=rows)


def third_moment_bound(n: int) -> float:
    return 12 * math.e * n**1.5


def third_moment_check(state: UrnState, reps: int, seed: int, jobs: int = 1) -> ThirdMomentReport:
    """Compares the empirical third absolute central moments of X̃ and Ỹ
    with the bound 12·e·n^(3/2)"""

    batch = simulate_season_blocks(state, reps, RngStream(seed=seed), jobs)
    rows: list[ThirdMomentRow] = []

    for variable, n, deviations in _centered_counts(state, batch):
        empirical = EstimateWithError.from_samples(np.abs(deviations) ** 3)
        bound = third_moment_bound(n)

        rows.append(
            ThirdMomentRow(
                variable=variable,
                n=n,
                empirical=empirical,
                bound=bound,
                violated=empirical.value > bound + 3 * empirical.std_error,
            )
        )

    return ThirdMomentReport(w=state.w, b=state.b, f=state.f, reps=reps, rows=rows)
