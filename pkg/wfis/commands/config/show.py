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

import os

import click

from tabulate import tabulate

import wfis.config

from wfis.config.configuration_manager import DEFAULT_SETTINGS, SEED_ENVIRONMENT_VARIABLE
from wfis.utils.logging import loglevel_command


@loglevel_command()
def show():
    """Show effective configuration options"""

    configuration_manager = wfis.config.configuration_manager
    settings = configuration_manager.read_settings()
    effective_values = {
        "dp_limit": configuration_manager.get_dp_limit(),
        "jobs": configuration_manager.get_default_jobs(),
        "lattice_limit": configuration_manager.get_lattice_limit(),
        "seed": configuration_manager.get_default_seed(),
    }

    def source(key: str) -> str:
        if (key == "seed") and (SEED_ENVIRONMENT_VARIABLE in os.environ):
            return SEED_ENVIRONMENT_VARIABLE

        return "settings file" if key in settings else "default"

    rows = [[key, effective_values[key], source(key)] for key in sorted(DEFAULT_SETTINGS)]

    click.echo(tabulate(rows, headers=["key", "value", "source"]))
