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
import math
import pathlib
import tempfile
import unittest
import unittest.mock

import click.testing

import wfis.config

from wfis.wfis import cli


class TestExactCommands(unittest.TestCase):
    def setUp(self):
        wfis.config.configuration_manager.get_settings_file_path = unittest.mock.MagicMock(
            return_value=pathlib.Path(tempfile.gettempdir()) / "wfis-unit-test-settings.json"
        )

    def test_exact_table(self):
        """Tests 'wfis exact-table --max-n'"""

        result = self._invoke(["exact-table", "--max-n", "2", "--probs"])
        rows = list(csv.DictReader(io.StringIO(result.output)))

        self.assertEqual(result.exit_code, 0)
        self.assertEqual(len(rows), 10)
        self.assertEqual(list(rows[0].keys()), ["w", "b", "f", "q", "p_w", "p_b"])

        # nothing is drawn in layer 0
        self.assertTrue(all(float(row["q"]) == 1.0 for row in rows if row["f"] == "0"))

        result = self._invoke(["exact-table", "--max-n", "2", "--kind", "qtilde", "--probs"])

        self.assertEqual(result.exit_code, 2)

    def test_exact_table_streams_layers(self):
        """Tests that 'wfis exact-table' keeps all layers only with --full-table"""

        with unittest.mock.patch(
            "wfis.commands.exact_table.build_q_table", side_effect=AssertionError("all layers were built")
        ):
            streamed = self._invoke(["exact-table", "--max-n", "12", "--probs"])

        full_table = self._invoke(["exact-table", "--max-n", "12", "--probs", "--full-table"])

        self.assertEqual(streamed.exit_code, 0)
        self.assertEqual(full_table.exit_code, 0)
        self.assertEqual(streamed.output, full_table.output)

        rows = list(csv.DictReader(io.StringIO(streamed.output)))

        # number of lattice points w + b + f ≤ 12
        self.assertEqual(len(rows), math.comb(15, 3))
        self.assertEqual([row["f"] for row in rows], sorted((row["f"] for row in rows), key=int))

        q_1_1_2 = next(row for row in rows if (row["w"], row["b"], row["f"]) == ("1", "1", "2"))

        self.assertAlmostEqual(float(q_1_1_2["q"]), 7 / 18, places=15)

    def test_exact_table_state(self):
        """Tests 'wfis exact-table --state'"""

        result = self._invoke(["exact-table", "--state", "1,1,2", "--json"])
        values = json.loads(result.output)

        self.assertEqual(result.exit_code, 0)
        self.assertAlmostEqual(values["q"], 7 / 18, places=15)
        self.assertAlmostEqual(values["p_w"], 0.75, places=15)
        self.assertAlmostEqual(values["p_b"], 1.0, places=15)
        self.assertAlmostEqual(values["var_x"], 3 / 16, places=15)

        for state in ("1,1", "1,-1,2"):
            self.assertEqual(self._invoke(["exact-table", "--state", state]).exit_code, 2)

    def test_exact_table_check_oracle(self):
        """Tests 'wfis exact-table --check-oracle'"""

        result = self._invoke(["exact-table", "--max-n", "5", "--check-oracle"])

        self.assertEqual(result.exit_code, 0)
        self.assertIn("PASS oracle", result.output)

        # the rational enumeration is limited to small states
        self.assertEqual(self._invoke(["exact-table", "--max-n", "11", "--check-oracle"]).exit_code, 2)

    def test_limit_eval(self):
        """Tests 'wfis limit-eval' at a point with T = 0.5"""

        x, y = 0.4, 0.2
        z = x * -math.expm1(-0.5) + y * 0.5
        result = self._invoke(["limit-eval", "--x", str(x), "--y", str(y), "--z", repr(z)])
        rows = list(csv.DictReader(io.StringIO(result.output)))

        self.assertEqual(result.exit_code, 0)
        self.assertEqual(len(rows), 1)
        self.assertAlmostEqual(float(rows[0]["T"]), 0.5, places=12)
        self.assertAlmostEqual(float(rows[0]["u"]), math.exp(-0.5), places=12)
        self.assertAlmostEqual(float(rows[0]["u"]) + float(rows[0]["v"]), 1.0, places=15)

        result = self._invoke(["limit-eval", "--x", "0", "--y", "0.5", "--z", "0.25", "--json"])
        values = json.loads(result.output)

        self.assertEqual(result.exit_code, 0)
        self.assertAlmostEqual(values["T"], 0.5, places=13)
        self.assertAlmostEqual(values["u_tilde"], math.exp(-1.0), places=13)

        # T is undefined for y = 0
        self.assertEqual(self._invoke(["limit-eval", "--x", "0.5", "--y", "0", "--z", "0.1"]).exit_code, 2)

    def test_unknown_option(self):
        self.assertEqual(self._invoke(["limit-eval", "--w", "1"]).exit_code, 2)

    def test_vs_curve(self):
        """Tests 'wfis vs-curve'"""

        result = self._invoke(["vs-curve", "--s", "0.5", "--x-grid", "0,0.5,1"])
        rows = list(csv.DictReader(io.StringIO(result.output)))

        self.assertEqual(result.exit_code, 0)
        self.assertEqual(len(rows), 3)
        self.assertAlmostEqual(float(rows[0]["v_s"]), 1 - 1 / math.e**0.5, places=12)
        self.assertEqual(float(rows[0]["a"]), 0.0)

        result = self._invoke(["vs-curve", "--s", "0.5", "--check-bounds"])

        self.assertEqual(result.exit_code, 0)
        self.assertIn("PASS vs-bounds", result.output)

    def _invoke(self, arguments: list[str]) -> click.testing.Result:
        runner = click.testing.CliRunner()

        return runner.invoke(cli, [*arguments, "--loglevel", "ERROR"])  # type: ignore


if __name__ == "__main__":
    unittest.main()
