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
import logging
import os
import pathlib

from typing import Any, Final, Type, TypeVar

from filelock import FileLock

from wfis.utils.error import WfisException

T = TypeVar("T")

logger = logging.getLogger(__name__)

SEED_ENVIRONMENT_VARIABLE: Final[str] = "WFIS_SEED"

# keys that may be stored in the settings file and their built-in defaults
DEFAULT_SETTINGS: Final[dict[str, int]] = {
    "dp_limit": 4000,
    "jobs": 1,
    "lattice_limit": 400,
    "seed": 20240607,
}


class ConfigurationManager:
    """Manages user defaults stored in the settings file"""

    def get_cli_data_directory_path(self) -> pathlib.Path:
        """Returns the path of the CLI data directory

        Returns
        -------
        pathlib.Path
            path of the CLI data directory
        """

        return self.get_home_directory_path() / ".wfis"

    def get_config_value(self, key: str, type: Type[T], default_value: T | None = None) -> T:
        """Gets the value for the given key from the settings file

        Parameters
        ----------
        key
            name of the key of the value to get
        type
            expected type of the value
        default_value
            default value to use if key cannot be found in the settings file
        """

        result = default_value
        settings = self.read_settings()

        if key in settings:
            value = settings[key]

            # bool is a subclass of int and must not be accepted for int keys
            if not isinstance(value, type) or (type is int and isinstance(value, bool)):
                raise WfisException(f"Configuration option '{key}' is not of expected type {type}")

            result = value

        if result is None:
            raise WfisException(f"Configuration option '{key}' is not set and no default value was provided")

        return result

    def get_default_jobs(self) -> int:
        return max(1, self.get_config_value("jobs", int, DEFAULT_SETTINGS["jobs"]))

    def get_default_seed(self) -> int:
        """Returns the default seed

        The environment variable WFIS_SEED takes precedence over the settings
        file, which takes precedence over the built-in default.

        Returns
        -------
        int
            default seed
        """

        if (value := os.environ.get(SEED_ENVIRONMENT_VARIABLE)) is not None:
            try:
                return int(value)
            except ValueError:
                raise WfisException(f"Environment variable {SEED_ENVIRONMENT_VARIABLE} is not an integer ({value})")

        return self.get_config_value("seed", int, DEFAULT_SETTINGS["seed"])

    def get_dp_limit(self) -> int:
        return self.get_config_value("dp_limit", int, DEFAULT_SETTINGS["dp_limit"])

    def get_home_directory_path(self) -> pathlib.Path:
        return pathlib.Path.home()

    def get_lattice_limit(self) -> int:
        return self.get_config_value("lattice_limit", int, DEFAULT_SETTINGS["lattice_limit"])

    def get_settings_file_path(self) -> pathlib.Path:
        """Returns the path of the settings file

        Returns
        -------
        pathlib.Path
            path of the settings file
        """

        return self.get_cli_data_directory_path() / "settings.json"

    def read_settings(self) -> dict[str, Any]:
        settings_file_path = self.get_settings_file_path()

        if not settings_file_path.exists() or (settings_file_path.stat().st_size == 0):
            return {}

        with open(settings_file_path) as json_file:
            return json.load(json_file)

    def set_int_config_value(self, key: str, value: int):
        """Sets a given key-value pair in the settings file

        Parameters
        ----------
        key
            name of the key to set
        value
            value to be set for key
        """

        if key not in DEFAULT_SETTINGS:
            raise WfisException(
                f"Unknown configuration option '{key}' (known options: {', '.join(sorted(DEFAULT_SETTINGS))})"
            )

        settings_file_path = self.get_settings_file_path()
        settings_file_path.parent.mkdir(exist_ok=True, parents=True)

        with FileLock(f"{settings_file_path}.lock"):
            settings = self.read_settings()
            settings[key] = value
            settings_file_path.write_text(json.dumps(settings, indent="\t", sort_keys=True))

        logger.debug(f"Set configuration option '{key}' to {value}")

    def unset_config_value(self, key: str):
        """Unsets the given key in the settings file

        Parameters
        ----------
        key
            name of the key to be deleted
        """

        settings_file_path = self.get_settings_file_path()

        if not settings_file_path.exists():
            return

        with FileLock(f"{settings_file_path}.lock"):
            settings = self.read_settings()

            if settings.pop(key, None) is not None:
                if len(settings) == 0:
                    os.remove(settings_file_path)
                else:
                    settings_file_path.write_text(json.dumps(settings, indent="\t", sort_keys=True))
