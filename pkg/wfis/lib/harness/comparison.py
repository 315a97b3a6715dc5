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

from typing import Literal

import numpy as np

from pydantic import BaseModel, computed_field

from wfis.lib.chain.wf_chain import BetaDenominator, ChainConfig, run_chain_paths
from wfis.lib.diffusion.sde import DEFAULT_DT, SdeConfig, simulate_values
from wfis.lib.season.season_types import EstimateWithError

logger = logging.getLogger(__name__)

ABSOLUTE_TOLERANCE = 0.02
STANDARD_ERRORS = 5.0

# the diffusion side draws from its own stream of the seed
_DIFFUSION_STREAM_ID = 1


class MomentComparison(BaseModel):
    chain: EstimateWithError
    diffusion: EstimateWithError
    difference: float
    tolerance: float

    @computed_field
    @property
    def passed(self) -> bool:
        return self.difference <= self.tolerance


class ComparisonReport(BaseModel):
    model: Literal["indirect", "classical"]
    n: int
    s: float
    beta: float
    x0: float
    t: float
    generations: int
    dt: float
    reps: int
    seed: int
    validated: bool
    mean: MomentComparison
    variance: MomentComparison

    @computed_field
    @property
    def passed(self) -> bool:
        return self.mean.passed and self.variance.passed


def _compare(chain: EstimateWithError, diffusion: EstimateWithError) -> MomentComparison:
    pooled_std_error = math.hypot(chain.std_error, diffusion.std_error)

    return MomentComparison(
        chain=chain,
        diffusion=diffusion,
        difference=abs(chain.value - diffusion.value),
        tolerance=max(ABSOLUTE_TOLERANCE, STANDARD_ERRORS * pooled_std_error),
    )


def chain_vs_diffusion(
    n: int,
    s: float,
    beta: float,
    x0: float,
    t: float,
    reps: int,
    seed: int,
    jobs: int = 1,
    model: Literal["indirect", "classical"] = "indirect",
    dt: float = DEFAULT_DT,
    beta_denominator: BetaDenominator = "n",
) -> ComparisonReport:
    """Compares the terminal mean and variance of the chain after ⌈t·n⌉
    generations with those of the diffusion at time t

    The means (and the variances) agree if they differ by at most
    max(0.02, 5·pooled standard error). The classical model compares the
    classical chain with the classical Wright-Fisher diffusion.

    Parameters
    ----------
    n
        number of males
    s
        sex ratio
    beta
        selection coefficient
    x0
        initial frequency (on the grid {0, 1/n, …, 1})
    t
        diffusion time
    reps
        number of replicas on each side
    seed
        seed of the random streams
    jobs
        maximum number of worker processes
    model
        compared pair of models
    dt
        Euler-Maruyama step
    beta_denominator
        whether β is divided by n or by N = (1 + s)·n in the chain

    Returns
    -------
    ComparisonReport
        moment estimates of both sides and the verdict
    """

    generations = math.ceil(t * n - 1e-9)
    chain_cfg = ChainConfig(
        n=n, s=s, beta=beta, x0=x0, generations=generations, seed=seed, beta_denominator=beta_denominator
    )

    sde_cfg = SdeConfig(
        s=s,
        beta=chain_cfg.effective_beta if model == "indirect" else beta,
        x0=x0,
        dt=min(dt, t) if t > 0 else dt,
        t_end=t,
        seed=seed,
        model=model,
    )

    logger.info(f"Comparing {model} chain (n={n}, {generations} generation(s)) with the diffusion at t={t}")

    chain_values = run_chain_paths(chain_cfg, reps, jobs, model)[:, -1]
    diffusion_values = simulate_values(sde_cfg, reps, [t], jobs, stream_id=_DIFFUSION_STREAM_ID)[0]

    return ComparisonReport(
        model=model,
        n=n,
        s=s,
        beta=beta,
        x0=x0,
        t=t,
        generations=generations,
        dt=sde_cfg.dt,
        reps=reps,
        seed=seed,
        validated=sde_cfg.validated,
        mean=_compare(EstimateWithError.from_samples(chain_values), EstimateWithError.from_samples(diffusion_values)),
        variance=_compare(
            EstimateWithError.variance_from_samples(chain_values),
            EstimateWithError.variance_from_samples(np.asarray(diffusion_values)),
        ),
    )
