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

from wfis.lib.random.jobs import run_jobs
from wfis.lib.random.rng_stream import RngStream, split_into_blocks


class TestRngStream(unittest.TestCase):
    def test_generator(self):
        """Tests that identical identifiers reproduce identical draws and
        distinct identifiers yield distinct draws"""

        draws = RngStream(seed=42).generator().random(5)

        np.testing.assert_array_equal(RngStream(seed=42).generator().random(5), draws)
        self.assertFalse(np.array_equal(RngStream(seed=43).generator().random(5), draws))
        self.assertFalse(np.array_equal(RngStream(seed=42, stream_id=1).generator().random(5), draws))
        self.assertFalse(np.array_equal(RngStream(seed=42).block(0).generator().random(5), draws))

    def test_block_and_for_cell(self):
        rng = RngStream(seed=1, stream_id=2)

        self.assertEqual(rng.for_cell(3, 4).cell, (3, 4))
        self.assertEqual(rng.for_cell(3, 4).stream_id, 2)
        self.assertEqual(rng.block(5).cell, (2,))
        self.assertEqual(rng.block(5).stream_id, 5)
        self.assertEqual(rng.for_cell(3).block(0).cell, (3, 2))

        first = rng.for_cell(0, 1).block(0).generator().random(3)
        second = rng.for_cell(1, 0).block(0).generator().random(3)

        self.assertFalse(np.array_equal(first, second))

    def test_split_into_blocks(self):
        self.assertEqual(split_into_blocks(25_000), [10_000, 10_000, 5_000])
        self.assertEqual(split_into_blocks(10_000), [10_000])
        self.assertEqual(split_into_blocks(5, 2), [2, 2, 1])
        self.assertEqual(split_into_blocks(0), [])

    def test_run_jobs(self):
        """Tests that results are returned in job order"""

        self.assertEqual(run_jobs(abs, [-3, 1, -2]), [3, 1, 2])
        self.assertEqual(run_jobs(abs, [-3, 1, -2, 4, -5], 3), [3, 1, 2, 4, 5])
        self.assertEqual(run_jobs(abs, []), [])


if __name__ == "__main__":
    unittest.main()
