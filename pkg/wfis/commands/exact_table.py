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

from typing import Iterable, Iterator

import click
import numpy as np

from click_option_group import optgroup

import wfis.config

from wfis.lib.click.options import output_options
from wfis.lib.season.oracle import DEFAULT_ORACLE_BOUND, compare_with_oracle
from wfis.lib.season.season_exact import (
    build_q_table,
    exact_q,
    exact_q_tilde,
    iterate_layers,
    layer_rows,
    pair_probs,
    repro_probs,
    season_moments_exact,
)
from wfis.lib.season.season_types import QKind, UrnState
from wfis.utils.error import DomainError
from wfis.utils.logging import loglevel_command, spinner
from wfis.utils.output import RunManifest, echo_verdict, emit_rows


def _parse_state(ctx: click.Context, param: click.Parameter, value: str | None) -> UrnState | None:
    if value is None:
        return None

    try:
        w, b, f = (int(element) for element in value.split(","))
    except ValueError:
        raise click.BadParameter(f"Expected three comma-separated integers W,B,F ({value})")

    return UrnState(w, b, f)


@loglevel_command()
@optgroup.group("Table")
@optgroup.option("--max-n", help="Largest value of w + b + f", type=click.IntRange(min=0))
@optgroup.option(
    "--kind",
    default=QKind.Q.value,
    help="Tabulated function",
    show_default=True,
    type=click.Choice([kind.value for kind in QKind]),
)
@optgroup.option("--probs", help="Add the columns p_w and p_b (q tables only)", is_flag=True)
@optgroup.option(
    "--check-oracle",
    help=f"Compare every state with the rational enumeration (--max-n ≤ {DEFAULT_ORACLE_BOUND})",
    is_flag=True,
)
@optgroup.option(
    "--full-table",
    help="Keep every layer in memory while tabulating (memory grows like N³; rows are streamed otherwise)",
    is_flag=True,
)
@optgroup.group("Single state")
@optgroup.option(
    "--state", callback=_parse_state, help="Urn counts W,B,F for which all exact quantities are printed"
)
@output_options
@click.pass_context
def exact_table(
    ctx: click.Context,
    max_n: int | None,
    kind: str,
    probs: bool,
    check_oracle: bool,
    full_table: bool,
    state: UrnState | None,
    json_report: bool,
    out: pathlib.Path | None,
):
    """Tabulate q or q̃ on the lattice w + b + f ≤ N"""

    if state is not None:
        _print_state(state, out, json_report)

        return

    if max_n is None:
        raise click.UsageError("Either --max-n or --state must be set", ctx)

    if max_n > (dp_limit := wfis.config.configuration_manager.get_dp_limit()):
        raise DomainError(f"--max-n exceeds the configured limit of the dynamic programme ({dp_limit})")

    if check_oracle:
        mismatches = compare_with_oracle(max_n)

        for mismatch in mismatches:
            click.echo(
                f"{mismatch.quantity} at {mismatch.state}: DP {mismatch.dp_value}, enumeration {mismatch.oracle_value}"
            )

        echo_verdict("oracle", len(mismatches) == 0, f"states with w + b + f ≤ {max_n}")

        if len(mismatches) != 0:
            ctx.exit(1)

        return

    q_kind = QKind(kind)

    if probs and (q_kind is not QKind.Q):
        raise click.UsageError("--probs requires --kind q", ctx)

    layers: Iterable[tuple[int, np.ndarray]]

    if full_table:
        with spinner(f"Building {q_kind.value} table (N={max_n})"):
            table = build_q_table(max_n, q_kind, keep_layers=True)

        assert table.layers is not None

        layers = enumerate(table.layers)
    else:
        layers = iterate_layers(max_n, q_kind)

    header = ["w", "b", "f", q_kind.value] + (["p_w", "p_b"] if probs else [])
    manifest = RunManifest(
        subcommand="exact-table",
        parameters={"max_n": max_n, "kind": kind, "probs": probs, "full_table": full_table},
    )

    emit_rows(header, _table_rows(max_n, layers, probs), out, manifest, summary=False)


def _table_rows(
    max_n: int, layers: Iterable[tuple[int, np.ndarray]], probs: bool
) -> Iterator[list[int | float | None]]:
    for f, layer in layers:
        for w, b, _, value in layer_rows(max_n, f, layer):
            row: list[int | float | None] = [w, b, f, value]

            if probs:
                # p_w = 1 − q(w − 1, b, f) and p_b = 1 − q(w, b − 1, f) are in the same layer
                row.append(1.0 - float(layer[w - 1, b]) if w >= 1 else None)
                row.append(1.0 - float(layer[w, b - 1]) if b >= 1 else None)

            yield row


def _print_state(state: UrnState, out: pathlib.Path | None, json_report: bool):
    p_w, p_b = repro_probs(state)
    pairs = pair_probs(state)
    moments = season_moments_exact(state)
    values: dict[str, float | None] = {
        "q": exact_q(state),
        "qtilde": exact_q_tilde(state),
        "p_w": p_w,
        "p_b": p_b,
        "p_ww": pairs.p_ww,
        "p_wb": pairs.p_wb,
        "p_bb": pairs.p_bb,
        "mean_x": moments.mean_x,
        "mean_y": moments.mean_y,
        "var_x": moments.var_x,
        "var_y": moments.var_y,
        "cov_xy": moments.cov_xy,
    }

    if json_report:
        click.echo(json.dumps({"w": state.w, "b": state.b, "f": state.f} | values, indent=2))

        return

    manifest = RunManifest(subcommand="exact-table", parameters={"state": [state.w, state.b, state.f]})
    emit_rows(["w", "b", "f", *values.keys()], [[state.w, state.b, state.f, *values.values()]], out, manifest)
