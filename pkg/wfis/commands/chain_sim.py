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

import json
import logging
import pathlib

from typing import Iterator, Literal

import click
import numpy as np

from click_option_group import optgroup

from wfis.lib.chain.wf_chain import ChainConfig, run_chain, run_chain_paths
from wfis.lib.click.options import monte_carlo_options, output_options
from wfis.utils.logging import loglevel_command
from wfis.utils.output import RunManifest, emit_rows

logger = logging.getLogger(__name__)


@loglevel_command()
@optgroup.group("Chain")
@optgroup.option("--n", "n", help="Number of males", required=True, type=click.IntRange(min=1))
@optgroup.option("--s", "s", help="Sex ratio", required=True, type=click.FloatRange(min=0, min_open=True))
@optgroup.option("--beta", default=0.0, help="Selection coefficient", show_default=True, type=float)
@optgroup.option("--x0", help="Initial frequency of white males (on the grid)", required=True, type=float)
@optgroup.option("--gens", help="Number of generations", required=True, type=click.IntRange(min=0))
@optgroup.option(
    "--beta-denominator",
    default="n",
    help="Selection weight 1 + β/n or 1 + β/N with N = (1 + s)·n",
    show_default=True,
    type=click.Choice(["n", "N"]),
)
@optgroup.option(
    "--model",
    default="indirect",
    help="Indirect-selection or classical Wright-Fisher chain",
    show_default=True,
    type=click.Choice(["indirect", "classical"]),
)
@optgroup.option(
    "--summary",
    help="Write per-generation mean, variance and absorption frequencies instead of every replica",
    is_flag=True,
)
@monte_carlo_options(default_reps=1)
@output_options
def chain_sim(
    n: int,
    s: float,
    beta: float,
    x0: float,
    gens: int,
    beta_denominator: str,
    model: Literal["indirect", "classical"],
    summary: bool,
    reps: int,
    seed: int,
    jobs: int,
    json_report: bool,
    out: pathlib.Path | None,
):
    """Simulate the Wright-Fisher chain (trajectories or their moments)"""

    cfg = ChainConfig(n=n, s=s, beta=beta, x0=x0, generations=gens, seed=seed, beta_denominator=beta_denominator)

    parameters = cfg.model_dump() | {"model": model, "reps": reps, "summary": summary}
    manifest = RunManifest(subcommand="chain-sim", parameters=parameters, seed=seed)

    if (reps == 1) and (model == "indirect") and not summary:
        trajectory = run_chain(cfg)

        if trajectory.absorbed_at is not None:
            logger.info(f"Absorbed at {trajectory.absorbed_at[1]} in generation {trajectory.absorbed_at[0]}")

        paths = np.asarray([trajectory.states])
    else:
        paths = run_chain_paths(cfg, reps, jobs, model)

    if summary:
        header = ["gen", "mean", "variance", "fixed", "lost"]
        rows = list(_summary_rows(paths))

        if json_report:
            click.echo(json.dumps([dict(zip(header, row)) for row in rows], indent=2))
        else:
            emit_rows(header, rows, out, manifest, summary=False)

        return

    if json_report:
        click.echo(json.dumps([{"replica": replica, "states": path.tolist()} for replica, path in enumerate(paths)]))
    else:
        emit_rows(["replica", "gen", "x"], _replica_rows(paths), out, manifest, summary=False)


def _replica_rows(paths: np.ndarray) -> Iterator[list[int | float]]:
    for replica, path in enumerate(paths):
        for gen, x in enumerate(path.tolist()):
            yield [replica, gen, x]


def _summary_rows(paths: np.ndarray) -> Iterator[list[int | float]]:
    reps = paths.shape[0]

    for gen, values in enumerate(paths.T):
        yield [
            gen,
            float(np.mean(values)),
            float(np.var(values, ddof=1)) if reps > 1 else 0.0,
            float(np.mean(values == 1)),
            float(np.mean(values == 0)),
        ]
