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

from wfis.utils.output import RunManifest, emit_rows, format_cell, get_manifest_path, write_csv


class TestOutput(unittest.TestCase):
    def test_format_cell(self):
        self.assertEqual(format_cell(None), "")
        self.assertEqual(format_cell(True), "true")
        self.assertEqual(format_cell(3), "3")
        self.assertEqual(format_cell(0.1), "1.0000000000000001e-01")
        self.assertEqual(float(format_cell(2 / 3)), 2 / 3)

    def test_write_csv(self):
        stream = io.StringIO()
        write_csv(["w", "b", "q"], [[1, 1, 7 / 18], [2, 0, None]], stream)
        rows = list(csv.reader(io.StringIO(stream.getvalue())))

        self.assertEqual(rows[0], ["w", "b", "q"])
        self.assertEqual(float(rows[1][2]), 7 / 18)
        self.assertEqual(rows[2], ["2", "0", ""])

    def test_emit_rows_to_file(self):
        """Tests that a manifest is written next to the output file"""

        with tempfile.TemporaryDirectory() as directory:
            out = pathlib.Path(directory) / "table.csv"
            manifest = RunManifest(subcommand="exact-table", parameters={"max_n": 2}, seed=None)
            emit_rows(["n"], [[1], [2]], out, manifest, summary=False)

            self.assertEqual(get_manifest_path(out), pathlib.Path(directory) / "table.csv.manifest.json")
            self.assertEqual(out.read_text(), "n\n1\n2\n")

            manifest_data = json.loads(get_manifest_path(out).read_text())

            self.assertEqual(manifest_data["subcommand"], "exact-table")
            self.assertEqual(manifest_data["parameters"], {"max_n": 2})
            self.assertIn("version", manifest_data)
            self.assertIn("timestamp", manifest_data)


if __name__ == "__main__":
    unittest.main()
