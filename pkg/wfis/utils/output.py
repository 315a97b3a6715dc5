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

import csv
import datetime
import io
import logging
import pathlib
import sys

from typing import Any, Iterable, Sequence

import click

from pydantic import BaseModel, Field
from tabulate import tabulate

from wfis import distribution_package_name
from wfis.utils.importlib import get_version

logger = logging.getLogger(__name__)

Cell = int | float | str | bool | None


class RunManifest(BaseModel):
    """Provenance of an output file"""

    subcommand: str
    parameters: dict[str, Any]
    seed: int | None = None
    version: str = Field(default_factory=lambda: get_version(distribution_package_name))
    timestamp: datetime.datetime = Field(default_factory=lambda: datetime.datetime.now(datetime.timezone.utc))


def format_cell(value: Cell) -> str:
    """Formats floats with 17 significant digits"""

    if value is None:
        return ""

    if isinstance(value, bool):
        return str(value).lower()

    if isinstance(value, float):
        return format(value, ".16e")

    return str(value)


def get_manifest_path(path: pathlib.Path) -> pathlib.Path:
    return path.with_name(f"{path.name}.manifest.json")


def write_csv(header: Sequence[str], rows: Iterable[Sequence[Cell]], stream: io.TextIOBase | Any) -> int:
    """Writes the header and the rows and returns the number of rows"""

    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    count = 0

    for row in rows:
        writer.writerow([format_cell(value) for value in row])
        count += 1

    return count


def emit_rows(
    header: Sequence[str],
    rows: Iterable[Sequence[Cell]],
    out: pathlib.Path | None,
    manifest: RunManifest,
    summary: bool = True,
):
    """Writes CSV rows to the given file (with its manifest) or to standard
    output

    Parameters
    ----------
    header
        column names
    rows
        rows of the table (consumed once, so generators are streamed)
    out
        CSV output file or None for standard output
    manifest
        provenance written next to the output file
    summary
        whether a table is printed when rows are written to a file
    """

    if summary:
        rows = list(rows)

    if out is None:
        write_csv(header, rows, sys.stdout)

        return

    out.parent.mkdir(exist_ok=True, parents=True)

    with open(out, "w", newline="") as csv_file:
        count = write_csv(header, rows, csv_file)

    get_manifest_path(out).write_text(manifest.model_dump_json(indent=2))
    logger.info(f"Wrote {count} row(s) to {out}")

    if summary:
        click.echo(tabulate(rows, headers=list(header), floatfmt=".6g"))


def emit_report(report: BaseModel, out: pathlib.Path | None = None, manifest: RunManifest | None = None):
    """Prints a report as JSON and writes it to the given file"""

    report_json = report.model_dump_json(indent=2)

    if out is not None:
        out.parent.mkdir(exist_ok=True, parents=True)
        out.write_text(report_json)

        if manifest is not None:
            get_manifest_path(out).write_text(manifest.model_dump_json(indent=2))

    click.echo(report_json)


def echo_verdict(name: str, passed: bool, detail: str = ""):
    """Prints a PASS/FAIL line for an acceptance band"""

    verdict = click.style("PASS", fg="green") if passed else click.style("FAIL", fg="red")
    click.echo(f"{verdict} {name}" + (f": {detail}" if detail != "" else ""))
