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

from typing import Any, Sequence

import click
import numpy as np

from click_option_group import optgroup
from pydantic import BaseModel

from wfis.lib.click.options import monte_carlo_options, output_options, parse_float_list
from wfis.lib.random.rng_stream import RngStream
from wfis.lib.season.season_exact import repro_probs, season_moments_exact
from wfis.lib.season.season_mc import coupling_run, simulate_season_blocks, tail_check, third_moment_check
from wfis.lib.season.season_types import EstimateWithError, UrnState
from wfis.utils.logging import loglevel_command
from wfis.utils.output import RunManifest, echo_verdict, emit_report, emit_rows


@loglevel_command()
@optgroup.group("Urn")
@optgroup.option("--w", "w", help="Number of white balls", required=True, type=click.IntRange(min=0))
@optgroup.option("--b", "b", help="Number of black balls", required=True, type=click.IntRange(min=0))
@optgroup.option("--f", "f", help="Number of draws", required=True, type=click.IntRange(min=0))
@optgroup.group("Checks", help="At most one check replaces the default estimation")
@optgroup.option("--coupled", help="Run the coupled urns (w, b, f) and (w − 1, b + 1, f)", is_flag=True)
@optgroup.option("--tails", callback=parse_float_list, help="Deviations D for the tail bound exp(−D²/4n)")
@optgroup.option("--third-moment", help="Check the bound 12·e·n^(3/2) on E|X̃ − E X̃|³", is_flag=True)
@monte_carlo_options(default_reps=100_000)
@output_options
@click.pass_context
def season_sim(
    ctx: click.Context,
    w: int,
    b: int,
    f: int,
    coupled: bool,
    tails: list[float] | None,
    third_moment: bool,
    reps: int,
    seed: int,
    jobs: int,
    json_report: bool,
    out: pathlib.Path | None,
):
    """Simulate seasons and compare with exact values"""

    if sum((coupled, tails is not None, third_moment)) > 1:
        raise click.UsageError("--coupled, --tails and --third-moment are mutually exclusive", ctx)

    state = UrnState(w, b, f)
    parameters = {"w": w, "b": b, "f": f, "reps": reps}
    manifest = RunManifest(subcommand="season-sim", parameters=parameters, seed=seed)

    if coupled:
        report = coupling_run(state, reps, seed, jobs)

        if json_report:
            emit_report(report)
        else:
            emit_rows(
                ["neither", "urn1_only", "urn2_only", "both", "red_drawn_urn1", "std_error", "expected"],
                [
                    [
                        report.neither,
                        report.urn1_only,
                        report.urn2_only,
                        report.both,
                        report.red_drawn_urn1.value,
                        report.red_drawn_urn1.std_error,
                        report.expected_red_drawn_urn1,
                    ]
                ],
                out,
                manifest,
            )

        echo_verdict("coupling", report.urn2_only == 0, f"{report.urn2_only} forbidden outcome(s) in {reps} runs")
    elif tails is not None:
        tail_report = tail_check(state, reps, tails, seed, jobs)
        _emit_check(tail_report.rows, out, manifest, json_report, tail_report)
        echo_verdict("tails", tail_report.passed)

        if not tail_report.passed:
            ctx.exit(1)
    elif third_moment:
        moment_report = third_moment_check(state, reps, seed, jobs)
        _emit_check(moment_report.rows, out, manifest, json_report, moment_report)
        echo_verdict("third-moment", moment_report.passed)

        if not moment_report.passed:
            ctx.exit(1)
    else:
        _estimate(state, reps, seed, jobs, out, manifest, json_report)


def _emit_check(
    rows: Sequence[BaseModel], out: pathlib.Path | None, manifest: RunManifest, json_report: bool, report: BaseModel
):
    if json_report:
        emit_report(report)
    else:
        dumped = [row.model_dump() for row in rows]
        header = list(dumped[0].keys()) if len(dumped) != 0 else []
        emit_rows(header, [[_flatten(value) for value in row.values()] for row in dumped], out, manifest)


def _flatten(value: Any) -> Any:
    # estimates are reported by their value
    return value["value"] if isinstance(value, dict) else value


def _estimate(
    state: UrnState,
    reps: int,
    seed: int,
    jobs: int,
    out: pathlib.Path | None,
    manifest: RunManifest,
    json_report: bool,
):
    batch = simulate_season_blocks(state, reps, RngStream(seed=seed), jobs, track=True)
    p_w, p_b = repro_probs(state)
    moments = season_moments_exact(state)
    x_counts = batch.x_counts.astype(np.float64)
    y_counts = batch.y_counts.astype(np.float64)
    estimates: list[tuple[str, EstimateWithError, float | None]] = [
        ("mean_x", EstimateWithError.from_samples(x_counts), moments.mean_x),
        ("mean_y", EstimateWithError.from_samples(y_counts), moments.mean_y),
        ("var_x", EstimateWithError.variance_from_samples(x_counts), moments.var_x),
        ("var_y", EstimateWithError.variance_from_samples(y_counts), moments.var_y),
    ]

    if (p_w is not None) and (batch.white_marked is not None):
        estimates.append(("p_w", EstimateWithError.from_samples(batch.white_marked.astype(np.float64)), p_w))

    if (p_b is not None) and (batch.black_marked is not None):
        estimates.append(("p_b", EstimateWithError.from_samples(batch.black_marked.astype(np.float64)), p_b))

    rows = [
        [name, estimate.value, estimate.std_error, exact, abs(estimate.value - exact) if exact is not None else None]
        for name, estimate, exact in estimates
    ]

    header = ["quantity", "estimate", "std_error", "exact", "abs_error"]

    if json_report:
        click.echo(json.dumps([dict(zip(header, row)) for row in rows], indent=2))
    else:
        emit_rows(header, rows, out, manifest)
