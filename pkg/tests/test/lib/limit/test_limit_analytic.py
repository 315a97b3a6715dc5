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

import math
import unittest

import numpy as np

from wfis.lib.limit.limit_analytic import (
    LimitPoint,
    check_vs_bounds,
    classical_diffusion_coeffs,
    diffusion_coeffs,
    effective_selection,
    eval_limit,
    eval_u,
    eval_u_tilde,
    eval_vs,
    phi,
    solve_T,
    u_by_characteristics,
    vs_bounds,
)
from wfis.utils.error import DomainError


class TestLimitAnalytic(unittest.TestCase):
    def test_solve_T_closed_form(self):
        """Tests solve_T() where T = z/y"""

        self.assertAlmostEqual(solve_T(LimitPoint(0.0, 0.5, 0.25)), 0.5, places=13)
        self.assertAlmostEqual(eval_u(LimitPoint(0.0, 0.5, 0.25)), math.exp(-0.5), places=13)
        self.assertEqual(solve_T(LimitPoint(0.3, 0.2, 0.0)), 0.0)

    def test_solve_T_residuals(self):
        """Tests the residual of solve_T() on a grid of Ω"""

        values = np.linspace(0.0, 1.0, 31)
        x, y, z = (grid.ravel() for grid in np.meshgrid(values, values, values, indexing="ij"))
        mask = (y >= 1e-3) & (x + y + z <= 1.0)
        point = LimitPoint(x[mask], y[mask], z[mask])
        t = solve_T(point)

        self.assertLessEqual(float(np.max(np.abs(phi(t, point)))), 1e-12)
        self.assertTrue(np.all(np.asarray(t) >= 0))
        self.assertTrue(np.all(np.asarray(t) <= z[mask] / y[mask] + 1e-12))

    def test_solve_T_domain(self):
        """Tests that solve_T() rejects y = 0 and points outside Ω"""

        with self.assertRaises(DomainError):
            solve_T(LimitPoint(0.5, 0.0, 0.25))

        with self.assertRaises(DomainError):
            LimitPoint(0.5, 0.5, 0.5)

    def test_gradients(self):
        """Tests the gradients of eval_limit() against central differences"""

        h = 1e-5

        for x, y, z in ((0.3, 0.4, 0.2), (0.1, 0.2, 0.5), (0.5, 0.1, 0.1)):
            evaluation = eval_limit(LimitPoint(x, y, z))

            for index in range(3):
                shift = np.zeros(3)
                shift[index] = h
                forward = eval_limit(LimitPoint(*(np.array([x, y, z]) + shift)))
                backward = eval_limit(LimitPoint(*(np.array([x, y, z]) - shift)))

                for name in ("T", "u"):
                    analytic = getattr(evaluation, f"grad_{name}")[index]
                    numeric = (getattr(forward, name) - getattr(backward, name)) / (2 * h)

                    self.assertLessEqual(abs(analytic - numeric), 1e-5 * max(abs(numeric), 1e-3))

            self.assertAlmostEqual(evaluation.u + evaluation.v, 1.0, places=15)

    def test_u_by_characteristics(self):
        """Tests that integrating the characteristics reproduces u"""

        point = LimitPoint(np.array([0.3, 0.1, 0.0]), np.array([0.4, 0.2, 0.5]), np.array([0.2, 0.5, 0.25]))

        np.testing.assert_allclose(u_by_characteristics(point), eval_u(point), rtol=1e-8)
        self.assertEqual(u_by_characteristics(LimitPoint(0.2, 0.3, 0.0)), 1.0)

    def test_eval_u_tilde(self):
        """Tests eval_u_tilde()"""

        point = LimitPoint(0.2, 0.3, 0.4)

        self.assertAlmostEqual(eval_u_tilde(point), eval_u(point) ** 2, places=15)

    def test_eval_vs_boundaries(self):
        """Tests eval_vs() at x = 0 and x = 1"""

        for s in (0.2, 0.5, 2.0):
            self.assertAlmostEqual(eval_vs(s, 0.0).v_s, 1 - math.exp(-s), places=12)
            self.assertAlmostEqual(eval_vs(s, 1.0).v_s, min(s, 1.0), places=12)

        # v_s′(1) = −s − log(1 − s) for s < 1
        self.assertAlmostEqual(eval_vs(0.5, 1.0).v_s_prime, -0.5 - math.log(0.5), places=10)

        with self.assertRaises(DomainError):
            eval_vs(0.0, 0.5)

        with self.assertRaises(DomainError):
            eval_vs(0.5, 1.5)

    def test_eval_vs_derivatives(self):
        """Tests v_s′ and v_s″ against central differences"""

        h = 1e-4

        for s in (0.3, 0.5, 0.8):
            for x in (0.1, 0.4, 0.7, 0.95):
                evaluation = eval_vs(s, x)
                forward, backward = eval_vs(s, x + h), eval_vs(s, x - h)
                prime = (forward.v_s - backward.v_s) / (2 * h)
                second = (forward.v_s_prime - backward.v_s_prime) / (2 * h)

                self.assertLessEqual(abs(evaluation.v_s_prime - prime), 1e-5 * abs(prime))
                self.assertLessEqual(abs(evaluation.v_s_second - second), 1e-5 * abs(second))

    def test_eval_vs_near_one(self):
        """Tests that v_s′ is continuous across the switch to the closed form
        near x = 1"""

        below = eval_vs(0.5, 1 - 2e-6).v_s_prime
        above = eval_vs(0.5, 1 - 5e-7).v_s_prime

        self.assertAlmostEqual(below, above, places=5)

    def test_vs_bounds(self):
        """Tests the bounds on v_s and its derivatives"""

        x = np.linspace(0.0, 1.0, 1001)

        for s in (0.1, 0.3, 0.5, 0.7, 0.9):
            check = check_vs_bounds(s, x)

            self.assertEqual(check.points, 1001)
            self.assertTrue(check.passed, check)

        bounds = vs_bounds(2.0)

        self.assertEqual(bounds.v_upper, 1.0)
        self.assertIsNone(bounds.prime_lower)

    def test_diffusion_coeffs(self):
        """Tests diffusion_coeffs() and classical_diffusion_coeffs()"""

        x = np.array([0.0, 0.25, 0.5, 1.0])
        coefficients = diffusion_coeffs(0.5, x, 2.0)
        evaluation = eval_vs(0.5, x)

        self.assertEqual(coefficients.a[0], 0.0)
        self.assertEqual(coefficients.b[-1], 0.0)
        self.assertAlmostEqual(coefficients.a[2], 0.25 / evaluation.v_s[2], places=14)
        self.assertAlmostEqual(
            coefficients.b[1],
            0.1875 * (2.0 - evaluation.v_s_prime[1] / evaluation.v_s[1] ** 2),
            places=14,
        )

        classical = classical_diffusion_coeffs(0.5, 3.0)

        self.assertAlmostEqual(classical.a, 0.25, places=15)
        self.assertAlmostEqual(classical.b, 0.75, places=15)

    def test_effective_selection(self):
        """Tests that the effective selection is negative without direct
        selection"""

        self.assertTrue(np.all(np.asarray(effective_selection(0.5, np.linspace(0.0, 0.99, 50), 0.0)) < 0))


if __name__ == "__main__":
    unittest.main()
