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
from enum import StrEnum
from typing import Self

import numpy as np

from pydantic import BaseModel

from wfis.utils.error import DomainError


class QKind(StrEnum):
    """Function tabulated by the season recurrence

    q is the probability that one extra (red) ball survives f draws, q̃ the
    probability that two extra balls both survive.
    """

    Q = "q"
    Q_TILDE = "qtilde"

    @property
    def extra_balls(self) -> int:
        return 1 if self is QKind.Q else 2


@dataclass(frozen=True)
class UrnState:
    """Counts of white balls (removed when drawn), black balls (replaced
    when drawn) and remaining draws"""

    w: int
    b: int
    f: int

    def __post_init__(self):
        if min(self.w, self.b, self.f) < 0:
            raise DomainError(f"Urn counts must be nonnegative (w={self.w}, b={self.b}, f={self.f})")

    @property
    def size(self) -> int:
        """Discretization scale N = w + b + f"""

        return self.w + self.b + self.f

    def shifted(self, dw: int = 0, db: int = 0, df: int = 0) -> "UrnState":
        return UrnState(self.w + dw, self.b + db, self.f + df)


@dataclass(frozen=True)
class PairProbs:
    """Probabilities that two given distinct balls are both drawn

    A component is None if the urn does not hold enough balls of the
    corresponding colors.
    """

    p_ww: float | None
    p_wb: float | None
    p_bb: float | None


@dataclass(frozen=True)
class SeasonMoments:
    mean_x: float
    mean_y: float
    var_x: float
    var_y: float
    cov_xy: float


@dataclass(frozen=True)
class SeasonOutcome:
    """Numbers of marked white (X̃) and marked black (Ỹ) balls after one
    season"""

    x_count: int
    y_count: int


class EstimateWithError(BaseModel):
    value: float
    std_error: float
    n_samples: int

    @classmethod
    def from_samples(cls, samples: np.ndarray) -> Self:
        """Creates an estimate of the mean of the given samples

        The standard error is the sample standard deviation divided by the
        square root of the number of samples (0 for a single sample).
        """

        n_samples = int(samples.size)
        std_error = float(np.std(samples, ddof=1)) / math.sqrt(n_samples) if n_samples > 1 else 0.0

        return cls(value=float(np.mean(samples)), std_error=std_error, n_samples=n_samples)

    @classmethod
    def variance_from_samples(cls, samples: np.ndarray) -> Self:
        """Creates an estimate of the variance of the given samples

        The standard error is sqrt((m₄ − s⁴)/n) with m₄ the fourth central
        moment.
        """

        n_samples = int(samples.size)
        deviations = samples - np.mean(samples)
        variance = float(np.var(samples, ddof=1)) if n_samples > 1 else 0.0
        fourth_moment = float(np.mean(deviations**4)) if n_samples > 0 else 0.0
        std_error = math.sqrt(max(fourth_moment - variance**2, 0.0) / n_samples) if n_samples > 1 else 0.0

        return cls(value=variance, std_error=std_error, n_samples=n_samples)
