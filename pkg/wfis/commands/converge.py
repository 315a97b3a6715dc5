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

import click

from click_option_group import RequiredMutuallyExclusiveOptionGroup, optgroup

import wfis.config

from wfis.lib.click.options import jobs_option, output_options, parse_int_list
from wfis.lib.harness.rate_sweep import DEFAULT_NS, RateTableReport, RateTarget, rate_sweep_q
from wfis.lib.harness.regions import Region, check_region_bounds
from wfis.utils.logging import loglevel_command
from wfis.utils.output import RunManifest, echo_verdict, emit_rows


@loglevel_command()
@click.option(
    "--target",
    "targets",
    default=[RateTarget.Q_VS_U.value],
    help="Compared quantities (repeatable; 'all' selects every target)",
    multiple=True,
    show_default=True,
    type=click.Choice([target.value for target in RateTarget] + ["all"]),
)
@click.option(
    "--ns",
    callback=parse_int_list,
    default=",".join(str(n) for n in DEFAULT_NS),
    help="Comma-separated discretization scales N",
    show_default=True,
)
@optgroup.group("Region", cls=RequiredMutuallyExclusiveOptionGroup)
@optgroup.option("--y0", help="Ω(y0) = {y ≥ y0}", type=click.FloatRange(min=0, min_open=True))
@optgroup.option(
    "--s-region", help="Ω(s) with 0 < s < 1", type=click.FloatRange(min=0, max=1, min_open=True, max_open=True)
)
@click.option(
    "--check-region",
    help="Also check the bounds on T at every lattice point of the region for the smallest N",
    is_flag=True,
)
@jobs_option
@output_options
@click.pass_context
def converge(
    ctx: click.Context,
    targets: tuple[str, ...],
    ns: list[int],
    y0: float | None,
    s_region: float | None,
    check_region: bool,
    jobs: int,
    json_report: bool,
    out: pathlib.Path | None,
):
    """Measure the rate at which discrete quantities approach their limits"""

    region = Region("omega_y0", y0) if y0 is not None else Region("omega_s", s_region)
    selected = list(RateTarget) if "all" in targets else [RateTarget(target) for target in targets]
    reports: list[RateTableReport] = []

    for target in selected:
        table = rate_sweep_q(
            region,
            ns,
            target,
            jobs,
            lattice_limit=wfis.config.configuration_manager.get_lattice_limit(),
            dp_limit=wfis.config.configuration_manager.get_dp_limit(),
        )

        reports.append(table.report())

    if json_report:
        click.echo(json.dumps([report.model_dump(mode="json") for report in reports], indent=2))
    else:
        rows = [
            [report.target.value, row.n, row.sup_error, *(row.argmax or (None, None, None)), row.points, row.stride]
            for report in reports
            for row in report.rows
        ]

        manifest = RunManifest(
            subcommand="converge",
            parameters={"targets": [target.value for target in selected], "ns": ns, "region": str(region)},
        )

        emit_rows(["target", "n", "sup_error", "w", "b", "f", "points", "stride"], rows, out, manifest, summary=False)

    for report in reports:
        slope = f"{report.fitted_slope:.3f}" if report.fitted_slope is not None else "undefined"
        constant = f"{report.fitted_constant:.3g}" if report.fitted_constant is not None else "undefined"
        echo_verdict(
            f"{report.target.value} on {report.region}",
            report.passed,
            f"slope {slope} (band [{report.slope_band[0]}, {report.slope_band[1]}]), constant {constant}"
            + ("" if report.nonincreasing else ", error not decreasing in N")
            + (
                ", local slopes " + ", ".join(f"{local_slope:.3f}" for local_slope in report.local_slopes)
                if not report.passed and len(report.local_slopes) > 1
                else ""
            ),
        )

    region_passed = True

    if check_region:
        bounds = check_region_bounds(region, min(ns))
        region_passed = bounds.passed
        echo_verdict(
            f"region-bounds on {region}",
            bounds.passed,
            f"T ≤ {bounds.t_bound:.6g} violated at {bounds.t_violations} of {bounds.points} point(s)"
            + (
                f", x·e^(−T) + y ≥ {bounds.denominator_bound:.6g} violated at "
                f"{bounds.denominator_violations} point(s)"
                if bounds.denominator_bound is not None
                else ""
            ),
        )

    if not (all(report.passed for report in reports) and region_passed):
        ctx.exit(1)
