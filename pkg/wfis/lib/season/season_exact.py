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

"""Exact evaluation of single-season probabilities

q(w, b, f) is the probability that an extra (red) ball is not drawn during f
draws from an urn holding w white balls (removed when drawn), b black balls
(replaced when drawn) and the red ball. It satisfies

    q(w, b, f) = w/(w+b+1)·q(w−1, b, f−1) + b/(w+b+1)·q(w, b, f−1)

with q(·, ·, 0) = 1 and q(−1, ·, ·) = 0. q̃ is defined likewise with two red
balls (denominator w+b+2).
"""

import logging

from dataclasses import dataclass, field
from typing import Callable, Iterator

import numpy as np

from wfis.lib.season.season_types import PairProbs, QKind, SeasonMoments, UrnState
from wfis.utils.error import DomainError, OutOfRangeError

logger = logging.getLogger(__name__)

LayerVisitor = Callable[[int, np.ndarray], None]


def _evaluate(kind: QKind, state: UrnState) -> float:
    # b is constant along the recurrence, so a single row over w' = 0..w is
    # rolled over the f layers
    row = np.ones(state.w + 1)
    weights = np.arange(state.w + 1, dtype=np.float64)
    denominators = weights + (state.b + kind.extra_balls)
    white_weights = weights / denominators
    black_weights = state.b / denominators

    for _ in range(state.f):
        shifted = np.empty_like(row)
        shifted[0] = 0.0
        shifted[1:] = row[:-1]
        row = white_weights * shifted + black_weights * row

    return float(row[state.w])


def exact_q(state: UrnState) -> float:
    """Returns the probability that a single red ball is not drawn

    Parameters
    ----------
    state
        urn counts (w, b, f)

    Returns
    -------
    float
        q(w, b, f) in [0, 1]
    """

    return _evaluate(QKind.Q, state)


def exact_q_tilde(state: UrnState) -> float:
    """Returns the probability that neither of two red balls is drawn"""

    return _evaluate(QKind.Q_TILDE, state)


def repro_probs(state: UrnState) -> tuple[float | None, float | None]:
    """Returns the probabilities (p_w, p_b) that a given white and a given
    black ball are drawn at least once

    A component is None if the urn holds no ball of the corresponding color.

    Parameters
    ----------
    state
        urn counts (w, b, f)

    Returns
    -------
    tuple[float | None, float | None]
        p_w = 1 − q(w−1, b, f) and p_b = 1 − q(w, b−1, f)
    """

    p_w = 1.0 - exact_q(state.shifted(dw=-1)) if state.w >= 1 else None
    p_b = 1.0 - exact_q(state.shifted(db=-1)) if state.b >= 1 else None

    return p_w, p_b


def repro_prob(color: str, state: UrnState) -> float:
    """Returns p_w (color "w") or p_b (color "b")

    Raises
    ------
    DomainError
        if the urn holds no ball of the requested color
    """

    p_w, p_b = repro_probs(state)
    result = {"w": p_w, "b": p_b}[color]

    if result is None:
        raise DomainError(f"p_{color} requires at least one ball of that color (w={state.w}, b={state.b})")

    return result


def pair_probs(state: UrnState) -> PairProbs:
    """Returns the probabilities that two given distinct balls are both
    drawn

    Uses P(A ∩ B) = P(A) + P(B) − 1 + P(neither), where the last term is a
    q̃ value of the urn in which both given balls act as red balls.

    Parameters
    ----------
    state
        urn counts (w, b, f)

    Returns
    -------
    PairProbs
        p_ww, p_wb and p_bb; components requiring more balls of a color than
        the urn holds are None
    """

    p_w, p_b = repro_probs(state)
    p_ww = exact_q_tilde(state.shifted(dw=-2)) - 1.0 + 2.0 * p_w if (p_w is not None) and (state.w >= 2) else None
    p_wb = (
        exact_q_tilde(state.shifted(dw=-1, db=-1)) - 1.0 + p_w + p_b
        if (p_w is not None) and (p_b is not None)
        else None
    )
    p_bb = exact_q_tilde(state.shifted(db=-2)) - 1.0 + 2.0 * p_b if (p_b is not None) and (state.b >= 2) else None

    return PairProbs(p_ww=_clip(p_ww), p_wb=_clip(p_wb), p_bb=_clip(p_bb))


def pair_prob(kind: str, state: UrnState) -> float:
    """Returns one component ("ww", "wb" or "bb") of pair_probs

    Raises
    ------
    DomainError
        if the urn does not hold enough balls for the requested pair
    """

    result = getattr(pair_probs(state), f"p_{kind}")

    if result is None:
        raise DomainError(f"p_{kind} is undefined for (w, b) = ({state.w}, {state.b})")

    return result


def season_moments_exact(state: UrnState) -> SeasonMoments:
    """Returns exact means, variances and the covariance of the numbers of
    marked white and black balls

    Var X̃ = w·p_w + w(w−1)·p_ww − w²·p_w²; the pair term vanishes for w < 2
    and likewise for Ỹ.
    """

    p_w, p_b = repro_probs(state)
    pairs = pair_probs(state)
    w, b = state.w, state.b

    mean_x = w * p_w if p_w is not None else 0.0
    mean_y = b * p_b if p_b is not None else 0.0
    var_x = mean_x + w * (w - 1) * (pairs.p_ww or 0.0) - mean_x**2
    var_y = mean_y + b * (b - 1) * (pairs.p_bb or 0.0) - mean_y**2
    cov_xy = w * b * (pairs.p_wb - p_w * p_b) if pairs.p_wb is not None else 0.0

    return SeasonMoments(
        mean_x=mean_x, mean_y=mean_y, var_x=max(var_x, 0.0), var_y=max(var_y, 0.0), cov_xy=cov_xy
    )


def moment_identities(state: UrnState) -> tuple[float, float]:
    """Returns the two linear combinations of the exact second moments that
    drive the infinitesimal mean and variance of the chain

    Returns
    -------
    tuple[float, float]
        −b·Var X̃ + (w−b)·Cov + w·Var Ỹ and b²·Var X̃ − 2wb·Cov + w²·Var Ỹ
    """

    moments = season_moments_exact(state)
    w, b = state.w, state.b

    return (
        -b * moments.var_x + (w - b) * moments.cov_xy + w * moments.var_y,
        b * b * moments.var_x - 2 * w * b * moments.cov_xy + w * w * moments.var_y,
    )


def _clip(value: float | None) -> float | None:
    # rounding may push exact zeros/ones slightly outside [0, 1]
    return None if value is None else min(max(value, 0.0), 1.0)


@dataclass
class QTable:
    """Table of q or q̃ values

    Layer f is a square array indexed by (w, b) with 0 ≤ w, b ≤ max_n − f.
    Only the current and the previous layer are retained unless the table
    was built with keep_layers.
    """

    kind: QKind
    max_n: int
    f_current: int
    values: np.ndarray
    previous: np.ndarray | None = None
    layers: list[np.ndarray] | None = field(default=None, repr=False)

    @property
    def max_b(self) -> int:
        return self.max_n - self.f_current

    @property
    def max_w(self) -> int:
        return self.max_n - self.f_current

    def covers(self, w: int, b: int, f: int) -> bool:
        if not ((0 <= f <= self.max_n) and (0 <= w <= self.max_n - f) and (0 <= b <= self.max_n - f)):
            return False

        if (self.layers is not None) or (f == self.f_current):
            return True

        return (f == self.f_current - 1) and (self.previous is not None)

    def layer(self, f: int) -> np.ndarray:
        if self.layers is not None:
            return self.layers[f]

        if f == self.f_current:
            return self.values

        assert self.previous is not None

        return self.previous

    def value(self, w: int, b: int, f: int) -> float:
        """Returns the stored value at (w, b, f)

        Raises
        ------
        OutOfRangeError
            if the table does not cover (w, b, f)
        """

        if not self.covers(w, b, f):
            raise OutOfRangeError(w, b, f, self.max_n)

        return float(self.layer(f)[w, b])


def iterate_layers(max_n: int, kind: QKind = QKind.Q) -> Iterator[tuple[int, np.ndarray]]:
    """Yields the layers f = 0, …, max_n of q or q̃

    Layer f is a (max_n − f + 1) × (max_n − f + 1) array indexed by (w, b).
    The recurrence never increases w or b, so every entry of a layer is an
    exact value of the function (not only those with w + b + f ≤ max_n).

    Parameters
    ----------
    max_n
        largest value of f (and of w, b in layer 0)
    kind
        function to tabulate
    """

    if max_n < 0:
        raise DomainError(f"Table size must be nonnegative ({max_n})")

    w_grid, b_grid = np.meshgrid(
        np.arange(max_n + 1, dtype=np.float64), np.arange(max_n + 1, dtype=np.float64), indexing="ij"
    )

    denominators = w_grid + b_grid + kind.extra_balls
    white_weights = w_grid / denominators
    black_weights = b_grid / denominators

    layer = np.ones((max_n + 1, max_n + 1))

    yield 0, layer

    for f in range(1, max_n + 1):
        size = max_n - f + 1
        following = black_weights[:size, :size] * layer[:size, :size]
        following[1:, :] += white_weights[1:size, :size] * layer[: size - 1, :size]
        layer = following

        yield f, layer


def build_q_table(
    max_n: int, kind: QKind = QKind.Q, keep_layers: bool = False, visitor: LayerVisitor | None = None
) -> QTable:
    """Builds the table of q or q̃ up to f = max_n

    Parameters
    ----------
    max_n
        table size
    kind
        function to tabulate
    keep_layers
        whether all layers are retained (memory grows like max_n³)
    visitor
        function called with (f, layer) after each layer is computed

    Returns
    -------
    QTable
        table holding the last two layers (or all layers)
    """

    layers: list[np.ndarray] | None = [] if keep_layers else None
    previous: np.ndarray | None = None
    current: np.ndarray | None = None

    for f, layer in iterate_layers(max_n, kind):
        if visitor is not None:
            visitor(f, layer)

        if layers is not None:
            layers.append(layer)

        previous, current = current, layer

        if (f % 500 == 0) and (f != 0):
            logger.debug(f"Computed layer f={f} of {kind.value} table (max_n={max_n})")

    assert current is not None

    logger.debug(f"Built {kind.value} table (max_n={max_n}, keep_layers={keep_layers})")

    return QTable(kind=kind, max_n=max_n, f_current=max_n, values=current, previous=previous, layers=layers)


def finite_diffs(table: QTable, state: UrnState) -> tuple[float, float]:
    """Returns the one-step differences (δx q, δy q) at the given state

    δx q(w, b, f) = q(w+1, b, f) − q(w, b, f) and δy q(w, b, f) =
    q(w, b+1, f) − q(w, b, f).

    Raises
    ------
    OutOfRangeError
        if the table does not cover (w+1, b+1, f)
    """

    w, b, f = state.w, state.b, state.f

    for shifted_w, shifted_b in ((w + 1, b), (w, b + 1)):
        if not table.covers(shifted_w, shifted_b, f):
            raise OutOfRangeError(shifted_w, shifted_b, f, table.max_n)

    value = table.value(w, b, f)

    return table.value(w + 1, b, f) - value, table.value(w, b + 1, f) - value


def layer_rows(max_n: int, f: int, layer: np.ndarray) -> Iterator[tuple[int, int, int, float]]:
    """Yields (w, b, f, value) for the lattice points w + b ≤ max_n − f of one layer"""

    for w in range(max_n - f + 1):
        for b, value in enumerate(layer[w, : max_n - f - w + 1].tolist()):
            yield w, b, f, value


def q_table_rows(table: QTable) -> Iterator[tuple[int, int, int, float]]:
    """Yields (w, b, f, value) for every lattice point w + b + f ≤ max_n of a
    table built with keep_layers"""

    if table.layers is None:
        raise DomainError("Rows can only be listed for tables built with all layers")

    for f, layer in enumerate(table.layers):
        yield from layer_rows(table.max_n, f, layer)

