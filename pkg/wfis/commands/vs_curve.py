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

import dataclasses
import json
import pathlib

import click
import numpy as np

from wfis.lib.click.options import output_options, parse_float_list
from wfis.lib.limit.limit_analytic import check_vs_bounds, diffusion_coeffs, effective_selection, eval_vs
from wfis.utils.logging import loglevel_command
from wfis.utils.output import RunManifest, echo_verdict, emit_rows


@loglevel_command()
@click.option(
    "--s", "s", help="Sex ratio (females per male)", required=True, type=click.FloatRange(min=0, min_open=True)
)
@click.option("--beta", default=0.0, help="Selection coefficient", show_default=True, type=float)
@click.option("--x-grid", callback=parse_float_list, help="Comma-separated frequencies in [0, 1]")
@click.option(
    "--points",
    default=101,
    help="Number of equally spaced frequencies if --x-grid is not set",
    show_default=True,
    type=click.IntRange(min=2),
)
@click.option("--check-bounds", help="Check the two-sided bounds on v_s, v_s′ and v_s″", is_flag=True)
@output_options
@click.pass_context
def vs_curve(
    ctx: click.Context,
    s: float,
    beta: float,
    x_grid: list[float] | None,
    points: int,
    check_bounds: bool,
    json_report: bool,
    out: pathlib.Path | None,
):
    """Tabulate v_s, its derivatives and the diffusion coefficients"""

    x = np.asarray(x_grid, dtype=np.float64) if x_grid is not None else np.linspace(0.0, 1.0, points)

    if check_bounds:
        check = check_vs_bounds(s, x)

        if json_report:
            click.echo(json.dumps(dataclasses.asdict(check) | {"passed": check.passed}, indent=2))

        echo_verdict(
            "vs-bounds",
            check.passed,
            f"{check.points} point(s), v″ lower bound failed at {check.second_lower_violations} point(s)",
        )

        if not check.passed:
            ctx.exit(1)

        return

    evaluation = eval_vs(s, x)
    coefficients = diffusion_coeffs(s, x, beta)
    header = ["x", "v_s", "v_s_prime", "v_s_second", "a", "b", "effective_selection"]
    rows = [
        [float(value) for value in row]
        for row in zip(
            x,
            np.asarray(evaluation.v_s),
            np.asarray(evaluation.v_s_prime),
            np.asarray(evaluation.v_s_second),
            np.asarray(coefficients.a),
            np.asarray(coefficients.b),
            np.asarray(effective_selection(s, x, beta)),
        )
    ]

    if json_report:
        click.echo(json.dumps([dict(zip(header, row)) for row in rows], indent=2))
    else:
        manifest = RunManifest(subcommand="vs-curve", parameters={"s": s, "beta": beta, "x": x.tolist()})
        emit_rows(header, rows, out, manifest, summary=False)
