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

import click

import wfis.config

from wfis.config.configuration_manager import DEFAULT_SETTINGS
from wfis.utils.logging import loglevel_command


@loglevel_command()
@click.option("--key", help="Name of the key to be set", required=True, type=click.Choice(sorted(DEFAULT_SETTINGS)))
@click.option("--value", help="Value of the key to be set", required=True, type=int)
def set_int(key: str, value: int):
    """Set integer configuration option"""

    if (key != "seed") and (value < 1):
        raise click.BadParameter(f"Value of '{key}' must be positive", param_hint="--value")

    if (key == "seed") and (value < 0):
        raise click.BadParameter("Seed must be nonnegative", param_hint="--value")

    wfis.config.configuration_manager.set_int_config_value(key, value)
