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

from wfis.lib.click.options import output_options
from wfis.lib.limit.limit_analytic import LimitPoint, eval_limit, eval_u_tilde, u_by_characteristics
from wfis.utils.logging import loglevel_command
from wfis.utils.output import RunManifest, emit_rows


@loglevel_command()
@click.option("--x", "x", help="Frequency of white males", required=True, type=click.FloatRange(min=0))
@click.option("--y", "y", help="Frequency of black males", required=True, type=click.FloatRange(min=0, min_open=True))
@click.option("--z", "z", help="Frequency of draws", required=True, type=click.FloatRange(min=0))
@click.option("--characteristics", help="Add u obtained by integrating the characteristics", is_flag=True)
@output_options
def limit_eval(x: float, y: float, z: float, characteristics: bool, json_report: bool, out: pathlib.Path | None):
    """Evaluate T, u = e^(−T), v = 1 − u, ũ and the gradients of T, u and v"""

    point = LimitPoint(x, y, z)
    evaluation = eval_limit(point)
    values: dict[str, float] = {
        "x": x,
        "y": y,
        "z": z,
        "T": float(evaluation.T),
        "u": float(evaluation.u),
        "v": float(evaluation.v),
        "u_tilde": float(eval_u_tilde(point)),
    }

    for name, gradient in (("T", evaluation.grad_T), ("u", evaluation.grad_u), ("v", evaluation.grad_v)):
        for variable, component in zip("xyz", gradient):
            values[f"d{name}_d{variable}"] = float(component)

    if characteristics:
        values["u_characteristics"] = float(u_by_characteristics(point))

    if json_report:
        click.echo(json.dumps(values, indent=2))
    else:
        manifest = RunManifest(subcommand="limit-eval", parameters={"x": x, "y": y, "z": z})
        emit_rows(list(values.keys()), [list(values.values())], out, manifest, summary=False)
