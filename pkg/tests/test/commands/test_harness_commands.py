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
import io
import json
import pathlib
import tempfile
import unittest
import unittest.mock

import click.testing

import wfis.config

from wfis.wfis import cli


class TestHarnessCommands(unittest.TestCase):
    def setUp(self):
        wfis.config.configuration_manager.get_settings_file_path = unittest.mock.MagicMock(
            return_value=pathlib.Path(tempfile.gettempdir()) / "wfis-unit-test-settings.json"
        )

    def test_converge(self):
        """Tests a small 'wfis converge' run"""

        result = self._invoke(["converge", "--target", "q_vs_u", "--ns", "10,20", "--y0", "0.3"])
        lines = result.output.splitlines()
        table = "\n".join(line for line in lines if not line.startswith(("PASS", "FAIL")))
        rows = list(csv.DictReader(io.StringIO(table)))

        self.assertIn(result.exit_code, (0, 1))
        self.assertEqual([row["n"] for row in rows], ["10", "20"])
        verdict_prefixes = ("PASS q_vs_u on Ω(y0=0.3)", "FAIL q_vs_u on Ω(y0=0.3)")

        self.assertTrue(any(line.startswith(verdict_prefixes) for line in lines))

        result = self._invoke(["converge", "--ns", "10,20", "--y0", "0.3", "--json"])
        reports = json.JSONDecoder().raw_decode(result.output)[0]

        self.assertEqual(reports[0]["target"], "q_vs_u")
        self.assertEqual(reports[0]["region"], "Ω(y0=0.3)")

    def test_converge_check_region(self):
        result = self._invoke(["converge", "--ns", "10,20", "--s-region", "0.5", "--check-region"])

        self.assertIn("PASS region-bounds on Ω(s=0.5)", result.output)

    def test_converge_region_required(self):
        """Tests that exactly one region must be selected"""

        self.assertEqual(self._invoke(["converge", "--ns", "10"]).exit_code, 2)
        self.assertEqual(self._invoke(["converge", "--ns", "10", "--y0", "0.3", "--s-region", "0.5"]).exit_code, 2)

    def test_moments_identities(self):
        result = self._invoke(["moments", "--identities", "--ns", "50,200"])

        self.assertEqual(result.exit_code, 0)
        self.assertIn("PASS moment-identities", result.output)

    def test_moments(self):
        """Tests that 'wfis moments' reports one row per (n, x) cell"""

        result = self._invoke(["moments", "--ns", "20,40", "--x-grid", "0.5", "--reps", "500", "--json"])
        report = json.JSONDecoder().raw_decode(result.output)[0]

        self.assertIn(result.exit_code, (0, 1))
        self.assertEqual([row["n"] for row in report["rows"]], [20, 40])
        self.assertIn("passed", report)

    def test_compare_at_time_zero(self):
        result = self._invoke(["compare", "--n", "20", "--t", "0", "--reps", "100", "--with-control"])

        self.assertEqual(result.exit_code, 0)

        for verdict in ("indirect mean", "indirect variance", "classical mean", "classical variance"):
            self.assertIn(f"PASS {verdict}", result.output)

    def _invoke(self, arguments: list[str]) -> click.testing.Result:
        runner = click.testing.CliRunner()

        return runner.invoke(cli, [*arguments, "--loglevel", "ERROR"])  # type: ignore


if __name__ == "__main__":
    unittest.main()
