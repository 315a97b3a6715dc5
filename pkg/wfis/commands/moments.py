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

import pathlib

import click

from click_option_group import optgroup

from wfis.lib.chain.wf_chain import BetaDenominator
from wfis.lib.click.options import monte_carlo_options, output_options, parse_float_list, parse_int_list
from wfis.lib.harness.infinitesimal import Envelope, infinitesimal_check, moment_identity_check
from wfis.utils.logging import loglevel_command
from wfis.utils.output import RunManifest, echo_verdict, emit_report, emit_rows


@loglevel_command()
@optgroup.group("Grid")
@optgroup.option(
    "--ns", callback=parse_int_list, default="200,800,3200", help="Population sizes n", show_default=True
)
@optgroup.option(
    "--x-grid", callback=parse_float_list, default="0.25,0.5,0.75", help="Frequencies", show_default=True
)
@optgroup.option(
    "--s", "s", default=0.5, help="Sex ratio", show_default=True, type=click.FloatRange(min=0, min_open=True)
)
@optgroup.option("--beta", default=0.0, help="Selection coefficient", show_default=True, type=float)
@optgroup.option(
    "--beta-denominator",
    default="n",
    help="Selection weight 1 + β/n or 1 + β/N with N = (1 + s)·n",
    show_default=True,
    type=click.Choice(["n", "N"]),
)
@optgroup.option(
    "--identities", help="Check the exact second-moment identities instead of sampling the chain", is_flag=True
)
@monte_carlo_options(default_reps=100_000)
@output_options
@click.pass_context
def moments(
    ctx: click.Context,
    ns: list[int],
    x_grid: list[float],
    s: float,
    beta: float,
    beta_denominator: BetaDenominator,
    identities: bool,
    reps: int,
    seed: int,
    jobs: int,
    json_report: bool,
    out: pathlib.Path | None,
):
    """Compare the infinitesimal mean and variance of the chain with the
    diffusion coefficients"""

    parameters = {"ns": ns, "x_grid": x_grid, "s": s}

    if identities:
        identity_report = moment_identity_check(ns, x_grid, s)

        if json_report:
            emit_report(identity_report)
        else:
            emit_rows(
                [
                    "n",
                    "x",
                    "drift_combination",
                    "drift_limit",
                    "drift_error",
                    "variance_combination",
                    "variance_limit",
                    "variance_error",
                ],
                [
                    [
                        row.n,
                        row.x,
                        row.drift_combination,
                        row.drift_limit,
                        row.drift_error,
                        row.variance_combination,
                        row.variance_limit,
                        row.variance_error,
                    ]
                    for row in identity_report.rows
                ],
                out,
                RunManifest(subcommand="moments", parameters=parameters | {"identities": True}),
                summary=False,
            )

        echo_verdict(
            "moment-identities",
            identity_report.passed,
            "errors shrink with n"
            if identity_report.passed
            else f"errors do not shrink at x = {', '.join(str(x) for x in identity_report.not_shrinking)}",
        )

        if not identity_report.passed:
            ctx.exit(1)

        return

    report = infinitesimal_check(ns, x_grid, s, beta, reps, seed, jobs, beta_denominator)

    if json_report:
        emit_report(report)
    else:
        header = ["n", "x", "a", "a_estimate", "a_std_error", "b", "b_estimate", "b_std_error", "c_estimate"]
        header += ["shift", "shift_estimate", "shift_std_error"]
        emit_rows(
            header,
            [
                [
                    row.n,
                    row.x,
                    row.a_formula,
                    row.a_estimate.value,
                    row.a_estimate.std_error,
                    row.b_formula,
                    row.b_estimate.value,
                    row.b_estimate.std_error,
                    row.c_estimate.value,
                    row.shift_formula,
                    row.shift_estimate.value if row.shift_estimate is not None else None,
                    row.shift_estimate.std_error if row.shift_estimate is not None else None,
                ]
                for row in report.rows
            ],
            out,
            RunManifest(
                subcommand="moments",
                parameters=parameters | {"beta": beta, "beta_denominator": beta_denominator, "reps": reps},
                seed=seed,
            ),
            summary=False,
        )

    envelopes: list[tuple[str, Envelope | None]] = [
        ("variance", report.variance_envelope),
        ("drift", report.drift_envelope),
        ("beta-shift", report.shift_check),
    ]

    for name, envelope in envelopes:
        if envelope is not None:
            echo_verdict(
                name,
                envelope.passed,
                "4 SE"
                + (f" + {envelope.constant:.3g}/√n" if envelope.constant > 0 else "")
                + "".join(f", exceeded at n = {n} (error {error:.3g})" for n, error in envelope.violations),
            )

    if not report.validated:
        click.echo(f"s = {s} ≥ 1: coefficients near x = 1 are not validated")

    if not report.passed:
        ctx.exit(1)
