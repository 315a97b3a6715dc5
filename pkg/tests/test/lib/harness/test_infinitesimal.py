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

import unittest

from wfis.lib.harness.infinitesimal import (
    _fit_envelope,
    _standard_error_check,
    infinitesimal_check,
    moment_identity_check,
    snap_to_grid,
)
from wfis.utils.error import DomainError


class TestInfinitesimal(unittest.TestCase):
    def test_snap_to_grid(self):
        self.assertEqual(snap_to_grid(0.33, 10), 0.3)
        self.assertEqual(snap_to_grid(1.0, 7), 1.0)

        with self.assertRaises(DomainError):
            snap_to_grid(1.5, 10)

    def test_fit_envelope(self):
        """Tests the envelope fitted on the smallest population size"""

        envelope = _fit_envelope([(100, 0.5, 0.0), (400, 0.2, 0.0), (1600, 0.2, 0.0)])

        self.assertAlmostEqual(envelope.constant, 5.0)
        self.assertEqual(envelope.violations, [(1600, 0.2)])
        self.assertFalse(envelope.passed)

    def test_standard_error_check(self):
        """Tests that the shift tolerance does not absorb the error of the smallest n"""

        errors = [(200, 0.05, 0.01), (800, 0.01, 0.005), (3200, 0.001, 0.002)]
        check = _standard_error_check(errors)

        self.assertEqual(check.constant, 0.0)
        self.assertEqual(check.violations, [(200, 0.05)])
        self.assertFalse(check.passed)

        # a fitted envelope would have passed the same errors
        self.assertTrue(_fit_envelope(errors).passed)

    def test_infinitesimal_check(self):
        """Tests a small infinitesimal check including a boundary cell"""

        report = infinitesimal_check([20, 80], [0.0, 0.5], s=0.5, beta=0.0, reps=2000, seed=1)

        self.assertEqual(len(report.rows), 4)
        self.assertTrue(report.validated)
        self.assertIsNone(report.shift_check)

        boundary_rows = [row for row in report.rows if row.x == 0.0]
        interior_rows = [row for row in report.rows if row.x == 0.5]

        self.assertEqual(len(boundary_rows), 2)
        self.assertTrue(all(row.a_estimate.value == 0.0 and row.b_estimate.value == 0.0 for row in boundary_rows))
        self.assertTrue(all(row.a_estimate.value > 0 and row.a_formula > 0 for row in interior_rows))

        again = infinitesimal_check([20, 80], [0.0, 0.5], s=0.5, beta=0.0, reps=2000, seed=1)

        self.assertEqual(report.model_dump(), again.model_dump())

    def test_infinitesimal_check_with_selection(self):
        """Tests that paired runs estimate a positive drift shift"""

        report = infinitesimal_check([50], [0.5], s=0.5, beta=1.0, reps=2000, seed=2)

        self.assertIsNotNone(report.shift_check)
        self.assertIsNotNone(report.rows[0].shift_estimate)
        assert report.rows[0].shift_estimate is not None
        self.assertGreater(report.rows[0].shift_estimate.value, 0.0)
        self.assertAlmostEqual(report.rows[0].shift_formula, 0.25)

        report = infinitesimal_check([400], [0.25, 0.5], s=0.5, beta=2.0, reps=20000, seed=3)

        assert report.shift_check is not None
        self.assertEqual(report.shift_check.constant, 0.0)
        self.assertTrue(report.shift_check.passed)

        for row in report.rows:
            assert (row.shift_estimate is not None) and (row.shift_formula is not None)
            self.assertAlmostEqual(row.shift_formula, 2.0 * row.x * (1 - row.x))
            self.assertLessEqual(abs(row.shift_estimate.value - row.shift_formula), 4 * row.shift_estimate.std_error)

        report = infinitesimal_check([50], [0.5], s=0.5, beta=1.5, reps=100, seed=2, beta_denominator="N")

        self.assertAlmostEqual(report.effective_beta, 1.0)

    def test_infinitesimal_check_arguments(self):
        with self.assertRaises(DomainError):
            infinitesimal_check([], [0.5], s=0.5, beta=0.0, reps=100, seed=1)

        with self.assertRaises(DomainError):
            infinitesimal_check([20], [0.5], s=0.5, beta=0.0, reps=1, seed=1)

    def test_moment_identity_check(self):
        """Tests that the normalised second moments of a season approach
        their limits"""

        report = moment_identity_check([50, 200], [0.25, 0.5, 0.75], s=0.5)

        self.assertEqual(len(report.rows), 6)
        self.assertTrue(report.passed)
        self.assertTrue(all(row.f == row.n // 2 for row in report.rows))

        # boundary frequencies are skipped
        self.assertEqual(moment_identity_check([50], [0.0, 1.0], s=0.5).rows, [])


if __name__ == "__main__":
    unittest.main()
