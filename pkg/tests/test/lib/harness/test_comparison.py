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

from wfis.lib.harness.comparison import ABSOLUTE_TOLERANCE, chain_vs_diffusion


class TestComparison(unittest.TestCase):
    def test_chain_vs_diffusion_at_time_zero(self):
        """Tests that both sides equal the initial frequency at t = 0"""

        report = chain_vs_diffusion(n=20, s=0.5, beta=0.0, x0=0.5, t=0.0, reps=100, seed=1)

        self.assertEqual(report.generations, 0)
        self.assertEqual(report.mean.chain.value, 0.5)
        self.assertEqual(report.mean.diffusion.value, 0.5)
        self.assertEqual(report.variance.difference, 0.0)
        self.assertEqual(report.mean.tolerance, ABSOLUTE_TOLERANCE)
        self.assertTrue(report.passed)

    def test_chain_vs_diffusion(self):
        """Tests a small comparison of the chain with the diffusion"""

        for model in ("indirect", "classical"):
            with self.subTest(model=model):
                report = chain_vs_diffusion(n=50, s=0.5, beta=0.0, x0=0.5, t=0.2, reps=2000, seed=3, model=model)

                self.assertEqual(report.generations, 10)
                self.assertTrue(report.validated)
                self.assertTrue(report.passed)
                self.assertIn("passed", report.model_dump())


if __name__ == "__main__":
    unittest.main()
