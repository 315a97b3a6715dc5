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
import pathlib
import tempfile
import unittest
import unittest.mock

import click.testing

import wfis.config

from wfis.wfis import cli


class TestConfigCommands(unittest.TestCase):
    def setUp(self):
        settings_file_path = pathlib.Path(tempfile.gettempdir()) / "wfis-settings.json"

        if settings_file_path.exists():
            os.remove(settings_file_path)

        self._settings_file_path = settings_file_path

        wfis.config.configuration_manager.get_settings_file_path = unittest.mock.MagicMock(
            return_value=settings_file_path
        )

    def test_set_int_unset(self):
        """Tests 'wfis config set-int' and 'wfis config unset'"""

        # check that key-value pairs were added to settings.json
        runner = click.testing.CliRunner()
        result = runner.invoke(
            cli,  # type: ignore
            [
                "config",
                "set-int",
                "--key",
                "jobs",
                "--value",
                "3",
            ],
        )

        self.assertEqual(result.exit_code, 0)
        self.assertEqual(wfis.config.configuration_manager.get_default_jobs(), 3)

        result = runner.invoke(cli, ["config", "show"])  # type: ignore

        self.assertEqual(result.exit_code, 0)
        self.assertRegex(result.output, r"jobs\s+3\s+settings file")

        # check that key-value pairs were removed from settings.json
        runner = click.testing.CliRunner()
        result = runner.invoke(
            cli,  # type: ignore
            [
                "config",
                "unset",
                "--key",
                "jobs",
            ],
        )

        self.assertEqual(result.exit_code, 0)
        self.assertEqual(wfis.config.configuration_manager.get_default_jobs(), 1)
        self.assertFalse(self._settings_file_path.exists())

    def test_set_int_invalid_value(self):
        """Tests that invalid values are rejected with a usage error"""

        runner = click.testing.CliRunner()

        for arguments in (["--key", "jobs", "--value", "0"], ["--key", "seed", "--value", "-1"]):
            result = runner.invoke(cli, ["config", "set-int", *arguments])  # type: ignore

            self.assertEqual(result.exit_code, 2)

        result = runner.invoke(cli, ["config", "set-int", "--key", "unknown", "--value", "1"])  # type: ignore

        self.assertEqual(result.exit_code, 2)
        self.assertFalse(self._settings_file_path.exists())


if __name__ == "__main__":
    unittest.main()
