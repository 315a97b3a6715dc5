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

import functools
import pathlib

from typing import Any, Callable

import click

from click_option_group import optgroup

import wfis.config


def parse_float_list(ctx: click.Context, param: click.Parameter, value: str | None) -> list[float] | None:
    """Parses a comma-separated list of real numbers (e.g. 0.25,0.5,0.75)"""

    if value is None:
        return None

    try:
        return [float(element) for element in value.split(",") if element.strip() != ""]
    except ValueError:
        raise click.BadParameter(f"Expected a comma-separated list of numbers ({value})")


def parse_int_list(ctx: click.Context, param: click.Parameter, value: str | None) -> list[int] | None:
    """Parses a comma-separated list of integers (e.g. 50,100,200,400)"""

    if value is None:
        return None

    try:
        result = [int(element) for element in value.split(",") if element.strip() != ""]
    except ValueError:
        raise click.BadParameter(f"Expected a comma-separated list of integers ({value})")

    if len(result) == 0:
        raise click.BadParameter("Expected at least one integer")

    return result


def resolve_jobs(ctx: click.Context, param: click.Parameter, value: int | None) -> int:
    return value if value is not None else wfis.config.configuration_manager.get_default_jobs()


def resolve_seed(ctx: click.Context, param: click.Parameter, value: int | None) -> int:
    return value if value is not None else wfis.config.configuration_manager.get_default_seed()


def jobs_option(f: Callable[..., Any]) -> Callable[..., Any]:
    return click.option(
        "--jobs",
        callback=resolve_jobs,
        help="Maximum number of worker processes [default: configured value or 1]",
        type=click.IntRange(min=1),
    )(f)


def monte_carlo_options(default_reps: int) -> Callable[[Callable[..., Any]], Callable[..., Any]]:
    """Returns a decorator adding the options --reps, --seed and --jobs

    Parameters
    ----------
    default_reps
        default number of replicas
    """

    def decorator(f: Callable[..., Any]) -> Callable[..., Any]:
        options = [
            optgroup.option(
                "--jobs",
                callback=resolve_jobs,
                help="Maximum number of worker processes [default: configured value or 1]",
                type=click.IntRange(min=1),
            ),
            optgroup.option(
                "--seed",
                callback=resolve_seed,
                help="Seed of the random streams [default: $WFIS_SEED, configured value or 20240607]",
                type=click.IntRange(min=0, max=2**64 - 1),
            ),
            optgroup.option(
                "--reps",
                default=default_reps,
                help="Number of replicas",
                show_default=True,
                type=click.IntRange(min=1),
            ),
            optgroup.group("Monte Carlo"),
        ]

        return functools.reduce(lambda result, option: option(result), options, f)

    return decorator


def output_options(f: Callable[..., Any]) -> Callable[..., Any]:
    """Adds the options --out and --json"""

    options = [
        optgroup.option("--json", "json_report", help="Print the report as JSON", is_flag=True),
        optgroup.option(
            "--out",
            help="CSV output file (a manifest is written next to it) [default: standard output]",
            type=click.Path(dir_okay=False, path_type=pathlib.Path),
        ),
        optgroup.group("Output"),
    ]

    return functools.reduce(lambda result, option: option(result), options, f)
