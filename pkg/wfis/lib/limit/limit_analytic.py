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

"""Analytic large-population limits

T(x, y, z) is the unique root of φ(t) = x(1 − e^(−t)) + y·t − z, u = e^(−T)
is the limiting probability that a given male does not reproduce and
v = 1 − u the probability that he does. Along the chain's coordinates
v_s(x) = v(x/(1+s), (1−x)/(1+s), s/(1+s)) determines the coefficients of
the limiting diffusion.

Every function accepts scalars or NumPy arrays and returns floats for
scalar input.
"""

import logging
import math

from dataclasses import dataclass
from typing import Any, Final

import numpy as np

from scipy.integrate import solve_ivp

from wfis.utils.error import DomainError

logger = logging.getLogger(__name__)

ArrayLike = float | np.ndarray

DEFAULT_TOLERANCE: Final[float] = 1e-13
MAX_NEWTON_ITERATIONS: Final[int] = 200

# above this frequency the (s − v)/(1 − x) factor of v_s′ is evaluated by an
# alternative expression
NEAR_ONE_THRESHOLD: Final[float] = 1.0 - 1e-6
NEAR_ONE_STEP: Final[float] = 1e-5

_SIMPLEX_SLACK = 1e-12


@dataclass(frozen=True)
class LimitPoint:
    """Point (x, y, z) of Ω = {x, y, z ≥ 0, x + y + z ≤ 1}"""

    x: ArrayLike
    y: ArrayLike
    z: ArrayLike

    def __post_init__(self):
        x, y, z = self.arrays()

        if np.any(x < 0) or np.any(y < 0) or np.any(z < 0) or np.any(x + y + z > 1 + _SIMPLEX_SLACK):
            raise DomainError(f"Point outside Ω: (x, y, z) = ({self.x}, {self.y}, {self.z})")

    def arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        x, y, z = np.broadcast_arrays(
            np.asarray(self.x, dtype=np.float64),
            np.asarray(self.y, dtype=np.float64),
            np.asarray(self.z, dtype=np.float64),
        )

        return x, y, z

    @property
    def is_scalar(self) -> bool:
        return all(np.ndim(value) == 0 for value in (self.x, self.y, self.z))


Gradient = tuple[ArrayLike, ArrayLike, ArrayLike]


@dataclass(frozen=True)
class LimitEval:
    """Solved T with u, v and their partial derivatives (∂x, ∂y, ∂z)"""

    T: ArrayLike
    u: ArrayLike
    v: ArrayLike
    grad_T: Gradient
    grad_u: Gradient
    grad_v: Gradient


@dataclass(frozen=True)
class VsEval:
    s: float
    x: ArrayLike
    v_s: ArrayLike
    v_s_prime: ArrayLike
    v_s_second: ArrayLike


@dataclass(frozen=True)
class DiffusionCoeffs:
    """Infinitesimal variance a and drift b"""

    a: ArrayLike
    b: ArrayLike


def _output(value: np.ndarray, scalar: bool) -> ArrayLike:
    return float(value) if scalar else value


def phi(t: ArrayLike, point: LimitPoint) -> ArrayLike:
    """Returns φ(t) = x(1 − e^(−t)) + y·t − z"""

    x, y, z = point.arrays()

    return _output(x * -np.expm1(-np.asarray(t)) + y * t - z, point.is_scalar and np.ndim(t) == 0)


def _solve_t(x: np.ndarray, y: np.ndarray, z: np.ndarray, tol: float) -> np.ndarray:
    # φ is increasing and concave and φ(z/(x+y)) ≤ 0, so Newton iterates
    # started there increase monotonically towards the root; the bracket
    # [0, z/y] catches steps spoiled by rounding
    lower = np.zeros_like(z)
    upper = z / y
    t = z / (x + y)

    for _ in range(MAX_NEWTON_ITERATIONS):
        residual = x * -np.expm1(-t) + y * t - z
        done = np.abs(residual) <= tol

        if done.all():
            break

        lower = np.where(residual < 0, t, lower)
        upper = np.where(residual > 0, t, upper)
        candidate = t - residual / (x * np.exp(-t) + y)
        outside = (candidate < lower) | (candidate > upper)
        candidate = np.where(outside, 0.5 * (lower + upper), candidate)
        stalled = candidate == t
        t = np.where(done, t, candidate)

        if (done | stalled).all():
            break
    else:
        logger.warning(f"Newton iteration for T did not converge within {MAX_NEWTON_ITERATIONS} iterations")

    return t


def solve_T(point: LimitPoint, tol: float = DEFAULT_TOLERANCE) -> ArrayLike:
    """Solves x(1 − e^(−t)) + y·t = z for t

    Parameters
    ----------
    point
        point of Ω with y > 0
    tol
        tolerance on the residual |φ(T)|

    Returns
    -------
    float | np.ndarray
        the unique root T ∈ [0, z/y]

    Raises
    ------
    DomainError
        if y ≤ 0
    """

    x, y, z = point.arrays()

    if np.any(y <= 0):
        raise DomainError(f"T is only defined for y > 0 (y = {point.y})")

    return _output(_solve_t(x, y, z, tol), point.is_scalar)


def eval_limit(point: LimitPoint) -> LimitEval:
    """Evaluates T, u = e^(−T), v = 1 − u and their partial derivatives

    ∂xT = (e^(−T) − 1)/(x·e^(−T) + y), ∂yT = −T/(x·e^(−T) + y) and
    ∂zT = 1/(x·e^(−T) + y); ∇u = −u·∇T and ∇v = −∇u.
    """

    x, y, z = point.arrays()

    if np.any(y <= 0):
        raise DomainError(f"T is only defined for y > 0 (y = {point.y})")

    t = _solve_t(x, y, z, DEFAULT_TOLERANCE)
    u = np.exp(-t)
    v = -np.expm1(-t)
    denominator = x * u + y
    grad_t = (-v / denominator, -t / denominator, 1.0 / denominator)
    scalar = point.is_scalar

    def gradient(values: tuple[np.ndarray, ...], factor: np.ndarray) -> Gradient:
        return (
            _output(factor * values[0], scalar),
            _output(factor * values[1], scalar),
            _output(factor * values[2], scalar),
        )

    return LimitEval(
        T=_output(t, scalar),
        u=_output(u, scalar),
        v=_output(v, scalar),
        grad_T=gradient(grad_t, np.ones_like(t)),
        grad_u=gradient(grad_t, -u),
        grad_v=gradient(grad_t, u),
    )


def eval_u(point: LimitPoint) -> ArrayLike:
    return _output(np.exp(-np.asarray(solve_T(point))), point.is_scalar)


def eval_u_tilde(point: LimitPoint) -> ArrayLike:
    """Returns the limit ũ = u² of q̃ (two red balls survive independently in
    the limit)"""

    u = np.exp(-np.asarray(solve_T(point)))

    return _output(u * u, point.is_scalar)


def u_by_characteristics(point: LimitPoint) -> ArrayLike:
    """Computes u by integrating the characteristics of the transport
    equation satisfied by u

    Along dx/dt = −x, dy/dt = 0, dz/dt = −(x + y) the function u is
    multiplied by e^(−t), and u = 1 on z = 0; u is therefore e^(−t*) where
    t* is the time at which the characteristic started at (x, y, z)
    reaches z = 0.
    """

    x, y, z = point.arrays()

    if np.any(y <= 0):
        raise DomainError(f"u is only defined for y > 0 (y = {point.y})")

    def hit_z_zero(t: float, state: np.ndarray) -> float:
        return state[2]

    hit_z_zero.terminal = True  # type: ignore[attr-defined]
    hit_z_zero.direction = -1  # type: ignore[attr-defined]

    def characteristic(t: float, state: np.ndarray) -> list[float]:
        return [-state[0], 0.0, -(state[0] + state[1])]

    def integrate(x0: float, y0: float, z0: float) -> float:
        if z0 == 0:
            return 1.0

        solution = solve_ivp(
            characteristic,
            (0.0, z0 / y0 + 1.0),
            [x0, y0, z0],
            method="DOP853",
            events=hit_z_zero,
            rtol=1e-12,
            atol=1e-14,
        )

        return math.exp(-float(solution.t_events[0][0]))

    values = np.vectorize(integrate, otypes=[np.float64])(x, y, z)

    return _output(values, point.is_scalar)


def _check_vs_arguments(s: float, x: np.ndarray):
    if not s > 0:
        raise DomainError(f"The sex ratio s must be positive (s = {s})")

    if np.any(x < 0) or np.any(x > 1):
        raise DomainError(f"The frequency x must lie in [0, 1] (x = {x})")


def _vs_value(s: float, x: np.ndarray) -> np.ndarray:
    v = np.full_like(x, min(s, 1.0))
    interior = x < 1

    if interior.any():
        xi = x[interior]
        t = _solve_t(xi / (1 + s), (1 - xi) / (1 + s), np.full_like(xi, s / (1 + s)), DEFAULT_TOLERANCE)
        v[interior] = -np.expm1(-t)

    return v


def _vs_prime_regular(s: float, x: np.ndarray, v: np.ndarray) -> np.ndarray:
    return (1 - v) / (1 - x * v) * (s - v) / (1 - x)


def _vs_second_regular(s: float, x: np.ndarray, v: np.ndarray, v_prime: np.ndarray) -> np.ndarray:
    return v_prime * (-2 * x * v * v + 3 * v - s) / (1 - x * v) ** 2


def _vs_fields(s: float, x: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    v = _vs_value(s, x)
    near_one = x > NEAR_ONE_THRESHOLD
    regular = ~near_one

    v_prime = np.empty_like(x)
    v_second = np.empty_like(x)
    v_prime[regular] = _vs_prime_regular(s, x[regular], v[regular])
    v_second[regular] = _vs_second_regular(s, x[regular], v[regular], v_prime[regular])

    if near_one.any():
        xn, vn = x[near_one], v[near_one]

        if s < 1:
            # (s − v)/(1 − x) = −v − log(1 − v) along the curve, which removes the 0/0 at x = 1
            v_prime[near_one] = (-vn - np.log1p(-vn)) * (1 - vn) / (1 - xn * vn)
            v_second[near_one] = _vs_second_regular(s, xn, vn, v_prime[near_one])
        else:
            # one-sided second-order differences; non-validated regime
            h = NEAR_ONE_STEP
            x1, x2 = xn - h, xn - 2 * h
            v1, v2 = _vs_value(s, x1), _vs_value(s, x2)
            v_prime[near_one] = (3 * vn - 4 * v1 + v2) / (2 * h)
            p1, p2 = _vs_prime_regular(s, x1, v1), _vs_prime_regular(s, x2, v2)
            v_second[near_one] = (3 * v_prime[near_one] - 4 * p1 + p2) / (2 * h)

    return v, v_prime, v_second


def eval_vs(s: float, x: ArrayLike) -> VsEval:
    """Evaluates v_s, v_s′ and v_s″ at the given frequencies

    v_s(1) = min(s, 1) by continuity; v_s′ = (1 − v)/(1 − xv)·(s − v)/(1 − x)
    and v_s″ = v_s′·(−2xv² + 3v − s)/(1 − xv)².

    Parameters
    ----------
    s
        sex ratio (number of females per male), s > 0
    x
        white frequencies in [0, 1]

    Raises
    ------
    DomainError
        if s ≤ 0 or x ∉ [0, 1]
    """

    xa = np.atleast_1d(np.asarray(x, dtype=np.float64))
    _check_vs_arguments(s, xa)

    if s >= 1 and np.any(xa > NEAR_ONE_THRESHOLD):
        logger.debug(f"v_s derivatives near x = 1 for s = {s} ≥ 1 are not validated")

    v, v_prime, v_second = _vs_fields(s, xa)
    scalar = np.ndim(x) == 0

    def shaped(values: np.ndarray) -> ArrayLike:
        return float(values[0]) if scalar else values.reshape(np.shape(x))

    return VsEval(s=s, x=x, v_s=shaped(v), v_s_prime=shaped(v_prime), v_s_second=shaped(v_second))


def diffusion_coeffs(s: float, x: ArrayLike, beta: float) -> DiffusionCoeffs:
    """Returns the coefficients a(x) = x(1−x)/v_s(x) and
    b(x) = x(1−x)·(β − v_s′(x)/v_s(x)²) of the limiting diffusion"""

    evaluation = eval_vs(s, x)
    xa = np.asarray(x, dtype=np.float64)
    v = np.asarray(evaluation.v_s)
    v_prime = np.asarray(evaluation.v_s_prime)
    variance_factor = xa * (1 - xa)
    boundary = variance_factor == 0

    with np.errstate(invalid="ignore"):
        a = np.where(boundary, 0.0, variance_factor / v)
        b = np.where(boundary, 0.0, variance_factor * (beta - v_prime / (v * v)))

    scalar = np.ndim(x) == 0

    return DiffusionCoeffs(a=_output(a, scalar), b=_output(b, scalar))


def classical_diffusion_coeffs(x: ArrayLike, beta: float) -> DiffusionCoeffs:
    """Returns the coefficients a(x) = x(1−x) and b(x) = βx(1−x) of the
    classical Wright-Fisher diffusion with selection"""

    xa = np.asarray(x, dtype=np.float64)
    variance_factor = xa * (1 - xa)
    scalar = np.ndim(x) == 0

    return DiffusionCoeffs(a=_output(variance_factor, scalar), b=_output(beta * variance_factor, scalar))


def effective_selection(s: float, x: ArrayLike, beta: float) -> ArrayLike:
    """Returns β(x) = β·v_s(x) − v_s′(x)/v_s(x)

    The classical diffusion with selection β(x), run at speed 1/v_s(x),
    has the same scale function as the limiting diffusion.
    """

    evaluation = eval_vs(s, x)
    v = np.asarray(evaluation.v_s)
    result = beta * v - np.asarray(evaluation.v_s_prime) / v

    return _output(result, np.ndim(x) == 0)


@dataclass(frozen=True)
class VsBounds:
    """Two-sided bounds satisfied by v_s, v_s′ and v_s″

    Derivative bounds are only available for s < 1.
    """

    v_lower: float
    v_upper: float
    prime_lower: float | None
    prime_upper: float | None
    second_lower: float | None
    second_upper: float | None


def vs_bounds(s: float) -> VsBounds:
    if not s > 0:
        raise DomainError(f"The sex ratio s must be positive (s = {s})")

    v_lower, v_upper = -math.expm1(-s), min(s, 1.0)

    if s >= 1:
        return VsBounds(v_lower, v_upper, None, None, None, None)

    gap = math.exp(-s) + s - 1
    log_term = -s - math.log1p(-s)

    return VsBounds(
        v_lower=v_lower,
        v_upper=v_upper,
        prime_lower=(1 - s) * gap,
        prime_upper=math.exp(-s) * log_term / (1 - s),
        second_lower=s * (1 - s) ** 2 * gap,
        second_upper=2 * s * math.exp(-s) * log_term / (1 - s) ** 3,
    )


@dataclass(frozen=True)
class VsBoundsCheck:
    s: float
    points: int
    v_violations: int
    prime_violations: int
    prime_nonpositive: int
    second_upper_violations: int
    second_lower_violations: int

    @property
    def passed(self) -> bool:
        # a failed v″ lower bound alone is reported but does not fail the check
        return (self.v_violations + self.prime_violations + self.prime_nonpositive + self.second_upper_violations) == 0


def check_vs_bounds(s: float, x: ArrayLike, slack: float = 1e-12) -> VsBoundsCheck:
    """Counts violations of the bounds of vs_bounds on the given frequencies

    Positivity of v_s′ is checked on [0, 1).
    """

    xa = np.atleast_1d(np.asarray(x, dtype=np.float64))
    evaluation = eval_vs(s, xa)
    bounds = vs_bounds(s)
    v = np.asarray(evaluation.v_s)
    v_prime = np.asarray(evaluation.v_s_prime)
    v_second = np.asarray(evaluation.v_s_second)

    def count(mask: Any) -> int:
        return int(np.count_nonzero(mask))

    v_violations = count((v < bounds.v_lower - slack) | (v > bounds.v_upper + slack))
    prime_violations = 0
    second_upper_violations = 0
    second_lower_violations = 0

    if bounds.prime_lower is not None and bounds.prime_upper is not None:
        scale = max(bounds.prime_upper, 1.0)
        prime_violations = count(
            (v_prime < bounds.prime_lower - slack * scale) | (v_prime > bounds.prime_upper + slack * scale)
        )

    if bounds.second_lower is not None and bounds.second_upper is not None:
        scale = max(bounds.second_upper, 1.0)
        second_upper_violations = count(v_second > bounds.second_upper + slack * scale)
        second_lower_violations = count(v_second < bounds.second_lower - slack * scale)

        if second_lower_violations > 0:
            logger.warning(f"Lower bound of v_s″ fails at {second_lower_violations} point(s) for s = {s}")

    return VsBoundsCheck(
        s=s,
        points=int(xa.size),
        v_violations=v_violations,
        prime_violations=prime_violations,
        prime_nonpositive=count((v_prime <= 0) & (xa < 1)),
        second_upper_violations=second_upper_violations,
        second_lower_violations=second_lower_violations,
    )
