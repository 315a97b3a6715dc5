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

import numpy as np

from wfis.lib.harness.regions import Region, check_region_bounds, lattice_layer
from wfis.utils.error import DomainError


class TestRegions(unittest.TestCase):
    def test_region_validation(self):
        """Tests that region parameters outside their range are rejected"""

        with self.assertRaises(DomainError):
            Region("omega_y0", 0.0)

        with self.assertRaises(DomainError):
            Region("omega_s", 1.0)

        self.assertEqual(str(Region("omega_y0", 0.25)), "Ω(y0=0.25)")
        self.assertEqual(str(Region("omega_s", 0.5)), "Ω(s=0.5)")

    def test_contains(self):
        """Tests membership including points on the region boundary"""

        region = Region("omega_y0", 0.2)

        self.assertTrue(region.contains(0.3, 0.2, 0.1))
        self.assertFalse(region.contains(0.3, 0.1, 0.1))
        self.assertFalse(region.contains(0.5, 0.4, 0.2))

        # z = s(x + y) and x − z = (1 − s)/(2 + 2s) lie on the boundary of Ω(s)
        region = Region("omega_s", 0.5)

        np.testing.assert_array_equal(
            region.contains([0.5, 0.3, 0.5, 1 / 6 + 0.1], [0.1, 0.3, 0.1, 0.5], [0.3, 0.2, 0.31, 0.1]),
            [True, False, False, True],
        )

    def test_lattice_layer(self):
        """Tests lattice_layer()"""

        w, b = lattice_layer(Region("omega_y0", 0.5), 10, 2)

        self.assertEqual(w.size, 10)
        self.assertTrue(np.all(b >= 5))
        self.assertTrue(np.all(w + b <= 8))

        w, b = lattice_layer(Region("omega_y0", 0.1), 10, 0, stride=2, min_w=1)

        self.assertTrue(np.all(w % 2 == 0) and np.all(b % 2 == 0))
        self.assertTrue(np.all(w >= 1) and np.all(b >= 1))

        w, _ = lattice_layer(Region("omega_s", 0.1), 1, 0)

        self.assertEqual(w.size, 0)

    def test_check_region_bounds(self):
        """Tests that the bounds on T hold at the lattice points of the
        regions"""

        for region in (Region("omega_y0", 0.2), Region("omega_s", 0.5), Region("omega_s", 0.9)):
            with self.subTest(region=str(region)):
                check = check_region_bounds(region, 30)

                self.assertGreater(check.points, 0)
                self.assertTrue(check.passed)


if __name__ == "__main__":
    unittest.main()
