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
import pathlib

from typing import Literal

import click

from click_option_group import optgroup

from wfis.lib.click.options import monte_carlo_options, output_options, parse_float_list
from wfis.lib.diffusion.sde import DEFAULT_DT, DEFAULT_T_END, SdeConfig, em_simulate, path_moments
from wfis.utils.logging import loglevel_command
from wfis.utils.output import RunManifest, emit_rows


@loglevel_command()
@optgroup.group("Diffusion")
@optgroup.option(
    "--s", "s", default=0.5, help="Sex ratio", show_default=True, type=click.FloatRange(min=0, min_open=True)
)
@optgroup.option("--beta", default=0.0, help="Selection coefficient", show_default=True, type=float)
@optgroup.option("--x0", help="Initial frequency", required=True, type=click.FloatRange(min=0, max=1))
@optgroup.option("--dt", default=DEFAULT_DT, help="Euler-Maruyama step", show_default=True, type=float)
@optgroup.option("--t-end", default=DEFAULT_T_END, help="Final time", show_default=True, type=float)
@optgroup.option(
    "--model",
    default="indirect",
    help="Limit of the indirect-selection chain or classical Wright-Fisher diffusion",
    show_default=True,
    type=click.Choice(["indirect", "classical"]),
)
@optgroup.option("--t-grid", callback=parse_float_list, help="Times at which moments are reported [default: t-end]")
@monte_carlo_options(default_reps=1)
@output_options
def diffusion_sim(
    s: float,
    beta: float,
    x0: float,
    dt: float,
    t_end: float,
    model: Literal["indirect", "classical"],
    t_grid: list[float] | None,
    reps: int,
    seed: int,
    jobs: int,
    json_report: bool,
    out: pathlib.Path | None,
):
    """Simulate the limiting diffusion (one path or moments of many)"""

    cfg = SdeConfig(s=s, beta=beta, x0=x0, dt=dt, t_end=t_end, seed=seed, model=model)
    manifest = RunManifest(subcommand="diffusion-sim", parameters=cfg.model_dump() | {"reps": reps}, seed=seed)

    if reps == 1:
        path = em_simulate(cfg)
        rows = [[float(t), float(value)] for t, value in zip(path.times, path.values)]

        if json_report:
            click.echo(json.dumps({"times": path.times.tolist(), "values": path.values.tolist()}, indent=2))
        else:
            emit_rows(["t", "x"], rows, out, manifest, summary=False)

        return

    moment_rows = path_moments(cfg, reps, t_grid if t_grid is not None else [t_end], jobs)

    if json_report:
        click.echo(json.dumps([row.model_dump() for row in moment_rows], indent=2))
    else:
        emit_rows(
            ["t", "mean", "mean_std_error", "variance", "variance_std_error"],
            [
                [row.t, row.mean.value, row.mean.std_error, row.variance.value, row.variance.std_error]
                for row in moment_rows
            ],
            out,
            manifest,
        )
