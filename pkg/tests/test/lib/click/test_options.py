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
import unittest
import unittest.mock

import click
import click.testing

import wfis.config

from wfis.config.configuration_manager import DEFAULT_SETTINGS, SEED_ENVIRONMENT_VARIABLE
from wfis.lib.click.options import monte_carlo_options, parse_float_list, parse_int_list


@click.command()
@monte_carlo_options(default_reps=7)
def _monte_carlo_command(jobs: int, seed: int, reps: int):
    click.echo(f"{jobs} {seed} {reps}")


class TestOptions(unittest.TestCase):
    def setUp(self):
        self._ctx = unittest.mock.MagicMock()
        self._param = unittest.mock.MagicMock()

    def test_parse_float_list(self):
        self.assertEqual(parse_float_list(self._ctx, self._param, "0.25,0.5,1"), [0.25, 0.5, 1.0])
        self.assertIsNone(parse_float_list(self._ctx, self._param, None))

        with self.assertRaises(click.BadParameter):
            parse_float_list(self._ctx, self._param, "0.25,a")

    def test_parse_int_list(self):
        self.assertEqual(parse_int_list(self._ctx, self._param, "50,100,"), [50, 100])

        with self.assertRaises(click.BadParameter):
            parse_int_list(self._ctx, self._param, "50,1.5")

        with self.assertRaises(click.BadParameter):
            parse_int_list(self._ctx, self._param, ",")

    def test_monte_carlo_options(self):
        """Tests the defaults of --jobs, --seed and --reps"""

        runner = click.testing.CliRunner()

        with unittest.mock.patch.object(
            wfis.config.configuration_manager, "read_settings", unittest.mock.MagicMock(return_value={"jobs": 3})
        ):
            with unittest.mock.patch.dict(os.environ, {SEED_ENVIRONMENT_VARIABLE: "11"}):
                result = runner.invoke(_monte_carlo_command, [])

            self.assertEqual(result.exit_code, 0)
            self.assertEqual(result.output, "3 11 7\n")

            with unittest.mock.patch.dict(os.environ, {}, clear=True):
                result = runner.invoke(_monte_carlo_command, ["--jobs", "2", "--reps", "5"])

            self.assertEqual(result.exit_code, 0)
            self.assertEqual(result.output, f"2 {DEFAULT_SETTINGS['seed']} 5\n")

            result = runner.invoke(_monte_carlo_command, ["--seed", "-1"])

            self.assertEqual(result.exit_code, 2)


if __name__ == "__main__":
    unittest.main()
