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

"""Exhaustive enumeration of all ordered draw sequences with exact rational
arithmetic, used to verify the dynamic-programming evaluation on small urns"""

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from wfis.lib.season.season_exact import exact_q, exact_q_tilde, pair_probs, repro_probs, season_moments_exact
from wfis.lib.season.season_types import UrnState
from wfis.utils.error import OracleBoundError

DEFAULT_ORACLE_BOUND = 10

# probability of every (x_count, y_count) outcome
Distribution = dict[tuple[int, int], Fraction]


@dataclass(frozen=True)
class OracleResult:
    """Exact season law and red-ball survival probabilities of one urn

    Designated balls are white balls 0 and 1 and black balls 0 and 1;
    probabilities involving more designated balls of a color than the urn
    holds are None.
    """

    state: UrnState
    distribution: Distribution
    q: Fraction
    q_tilde: Fraction
    p_w: Fraction | None
    p_b: Fraction | None
    p_ww: Fraction | None
    p_wb: Fraction | None
    p_bb: Fraction | None

    @property
    def mean_x(self) -> Fraction:
        return sum((probability * x for (x, _), probability in self.distribution.items()), Fraction(0))

    @property
    def mean_y(self) -> Fraction:
        return sum((probability * y for (_, y), probability in self.distribution.items()), Fraction(0))

    @property
    def var_x(self) -> Fraction:
        return self._moment(lambda x, y: x * x) - self.mean_x**2

    @property
    def var_y(self) -> Fraction:
        return self._moment(lambda x, y: y * y) - self.mean_y**2

    @property
    def cov_xy(self) -> Fraction:
        return self._moment(lambda x, y: x * y) - self.mean_x * self.mean_y

    def _moment(self, function) -> Fraction:
        return sum(
            (probability * function(x, y) for (x, y), probability in self.distribution.items()),
            Fraction(0),
        )


def _red_survival(w: int, b: int, reds: int, f: int) -> Fraction:
    """Probability that none of the red balls is drawn

    Red balls behave like black balls until one of them is drawn, so the
    reds are added to the urn as the designated black balls and the
    probability is read off the enumerated law.
    """

    reds_marked = {f"b{i}" for i in range(reds)}
    law = _enumerate_season(w, b + reds, f)

    return sum(
        (probability for (_, _, designated), probability in law.items() if designated.isdisjoint(reds_marked)),
        Fraction(0),
    )


def _enumerate_season(w: int, b: int, f: int) -> dict[tuple[int, int, frozenset[str]], Fraction]:
    """Enumerates all ordered draw sequences of a season

    Returns the law of (x_count, y_count, set of marked designated balls)
    where designated balls are "w0", "w1", "b0" and "b1".
    """

    law: dict[tuple[int, int, frozenset[str]], Fraction] = defaultdict(Fraction)

    def visit(
        whites: tuple[int, ...], marked_blacks: frozenset[int], x_count: int, draws_left: int, weight: Fraction
    ):
        size = len(whites) + b

        if (draws_left == 0) or (size == 0):
            designated = {f"w{i}" for i in range(min(w, 2)) if i not in whites}
            designated |= {f"b{i}" for i in marked_blacks if i < 2}
            law[(x_count, len(marked_blacks), frozenset(designated))] += weight

            return

        for position in range(len(whites)):
            visit(
                whites[:position] + whites[position + 1 :],
                marked_blacks,
                x_count + 1,
                draws_left - 1,
                weight / size,
            )

        for black in range(b):
            visit(whites, marked_blacks | {black}, x_count, draws_left - 1, weight / size)

    visit(tuple(range(w)), frozenset(), 0, f, Fraction(1))

    return law


def enumerate_oracle(state: UrnState, bound: int = DEFAULT_ORACLE_BOUND) -> OracleResult:
    """Computes the exact season law and derived probabilities by
    exhaustive enumeration

    Parameters
    ----------
    state
        urn counts (w, b, f)
    bound
        largest accepted value of w + b + f

    Returns
    -------
    OracleResult
        exact distribution of (X̃, Ỹ), q, q̃, p_w, p_b and pair probabilities

    Raises
    ------
    OracleBoundError
        if w + b + f exceeds the bound
    """

    if state.size > bound:
        raise OracleBoundError(state.size, bound)

    law = _enumerate_season(state.w, state.b, state.f)
    distribution: Distribution = defaultdict(Fraction)

    for (x_count, y_count, _), probability in law.items():
        distribution[(x_count, y_count)] += probability

    def marked(*balls: str) -> Fraction:
        return sum(
            (probability for (_, _, designated), probability in law.items() if designated.issuperset(balls)),
            Fraction(0),
        )

    return OracleResult(
        state=state,
        distribution=dict(distribution),
        q=_red_survival(state.w, state.b, 1, state.f),
        q_tilde=_red_survival(state.w, state.b, 2, state.f),
        p_w=marked("w0") if state.w >= 1 else None,
        p_b=marked("b0") if state.b >= 1 else None,
        p_ww=marked("w0", "w1") if state.w >= 2 else None,
        p_wb=marked("w0", "b0") if (state.w >= 1) and (state.b >= 1) else None,
        p_bb=marked("b0", "b1") if state.b >= 2 else None,
    )


@dataclass(frozen=True)
class OracleMismatch:
    state: UrnState
    quantity: str
    dp_value: float | None
    oracle_value: float | None


def _differs(dp_value: float | None, oracle_value: Fraction | None, tolerance: float) -> bool:
    if (dp_value is None) or (oracle_value is None):
        return (dp_value is None) != (oracle_value is None)

    return abs(dp_value - float(oracle_value)) > tolerance


def compare_with_oracle(max_n: int, tolerance: float = 1e-12) -> list[OracleMismatch]:
    """Compares the dynamic-programming values with the enumeration at every
    state with w + b + f ≤ max_n

    Returns
    -------
    list[OracleMismatch]
        quantities differing by more than the tolerance (empty if all agree)
    """

    if max_n > DEFAULT_ORACLE_BOUND:
        raise OracleBoundError(max_n, DEFAULT_ORACLE_BOUND)

    mismatches: list[OracleMismatch] = []

    for size in range(max_n + 1):
        for w in range(size + 1):
            for b in range(size - w + 1):
                state = UrnState(w, b, size - w - b)
                oracle = enumerate_oracle(state)
                p_w, p_b = repro_probs(state)
                pairs = pair_probs(state)
                moments = season_moments_exact(state)

                comparisons: list[tuple[str, float | None, Fraction | None]] = [
                    ("q", exact_q(state), oracle.q),
                    ("qtilde", exact_q_tilde(state), oracle.q_tilde),
                    ("p_w", p_w, oracle.p_w),
                    ("p_b", p_b, oracle.p_b),
                    ("p_ww", pairs.p_ww, oracle.p_ww),
                    ("p_wb", pairs.p_wb, oracle.p_wb),
                    ("p_bb", pairs.p_bb, oracle.p_bb),
                    ("mean_x", moments.mean_x, oracle.mean_x),
                    ("mean_y", moments.mean_y, oracle.mean_y),
                    ("var_x", moments.var_x, oracle.var_x),
                    ("var_y", moments.var_y, oracle.var_y),
                    ("cov_xy", moments.cov_xy, oracle.cov_xy),
                ]

                mismatches.extend(
                    OracleMismatch(
                        state, quantity, dp_value, float(oracle_value) if oracle_value is not None else None
                    )
                    for quantity, dp_value, oracle_value in comparisons
                    if _differs(dp_value, oracle_value, tolerance)
                )

    return mismatches
