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

from wfis.lib.chain.wf_chain import BetaDenominator
from wfis.lib.click.options import monte_carlo_options, output_options
from wfis.lib.diffusion.sde import DEFAULT_DT
from wfis.lib.harness.comparison import ComparisonReport, chain_vs_diffusion
from wfis.utils.logging import loglevel_command
from wfis.utils.output import RunManifest, echo_verdict, emit_rows


@loglevel_command()
@optgroup.group("Protocol")
@optgroup.option("--n", "n", default=500, help="Number of males", show_default=True, type=click.IntRange(min=1))
@optgroup.option(
    "--s", "s", default=0.5, help="Sex ratio", show_default=True, type=click.FloatRange(min=0, min_open=True)
)
@optgroup.option("--beta", default=0.0, help="Selection coefficient", show_default=True, type=float)
@optgroup.option("--x0", default=0.5, help="Initial frequency", show_default=True, type=click.FloatRange(min=0, max=1))
@optgroup.option("--t", "t", default=0.5, help="Diffusion time", show_default=True, type=click.FloatRange(min=0))
@optgroup.option("--dt", default=DEFAULT_DT, help="Euler-Maruyama step", show_default=True, type=float)
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
    help="Compared pair of models",
    show_default=True,
    type=click.Choice(["indirect", "classical"]),
)
@optgroup.option("--with-control", help="Also compare the classical pair under the same protocol", is_flag=True)
@monte_carlo_options(default_reps=10_000)
@output_options
@click.pass_context
def compare(
    ctx: click.Context,
    n: int,
    s: float,
    beta: float,
    x0: float,
    t: float,
    dt: float,
    beta_denominator: BetaDenominator,
    model: Literal["indirect", "classical"],
    with_control: bool,
    reps: int,
    seed: int,
    jobs: int,
    json_report: bool,
    out: pathlib.Path | None,
):
    """Compare terminal moments of the chain after ⌈t·n⌉ generations with
    those of the diffusion at time t"""

    models: list[Literal["indirect", "classical"]] = [model]

    if with_control and (model != "classical"):
        models.append("classical")

    reports: list[ComparisonReport] = [
        chain_vs_diffusion(n, s, beta, x0, t, reps, seed, jobs, current_model, dt, beta_denominator)
        for current_model in models
    ]

    if json_report:
        click.echo(json.dumps([report.model_dump(mode="json") for report in reports], indent=2))
    else:
        header = ["model", "moment", "chain", "chain_std_error", "diffusion", "diffusion_std_error"]
        header += ["difference", "tolerance"]
        rows = [
            [
                report.model,
                name,
                comparison.chain.value,
                comparison.chain.std_error,
                comparison.diffusion.value,
                comparison.diffusion.std_error,
                comparison.difference,
                comparison.tolerance,
            ]
            for report in reports
            for name, comparison in (("mean", report.mean), ("variance", report.variance))
        ]

        manifest = RunManifest(
            subcommand="compare",
            parameters={
                "n": n,
                "s": s,
                "beta": beta,
                "x0": x0,
                "t": t,
                "dt": dt,
                "beta_denominator": beta_denominator,
                "models": models,
                "reps": reps,
            },
            seed=seed,
        )

        emit_rows(header, rows, out, manifest, summary=False)

    for report in reports:
        for name, comparison in (("mean", report.mean), ("variance", report.variance)):
            echo_verdict(
                f"{report.model} {name}",
                comparison.passed,
                f"|Δ| = {comparison.difference:.4g} (tolerance {comparison.tolerance:.4g})",
            )

        if not report.validated:
            click.echo(f"s = {s} ≥ 1: boundary statistics are not validated")

    if not all(report.passed for report in reports):
        ctx.exit(1)
