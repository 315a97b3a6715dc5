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

import itertools
import unittest
import unittest.mock

from fractions import Fraction

from wfis.lib.season.oracle import compare_with_oracle, enumerate_oracle
from wfis.lib.season.season_types import UrnState
from wfis.utils.error import OracleBoundError


class TestOracle(unittest.TestCase):
    def test_enumerate_oracle(self):
        """Tests enumerate_oracle() against hand-computed values"""

        result = enumerate_oracle(UrnState(1, 1, 2))

        self.assertEqual(sum(result.distribution.values()), Fraction(1))
        self.assertEqual(result.q, Fraction(7, 18))
        self.assertEqual(result.p_w, Fraction(3, 4))
        self.assertEqual(result.p_b, Fraction(1))
        self.assertEqual(result.var_x, Fraction(3, 16))
        self.assertIsNone(result.p_ww)
        self.assertIsNone(result.p_bb)

    def test_enumerate_oracle_red_survival(self):
        """Tests that q and q̃ of enumerate_oracle() come from the enumeration
        alone"""

        with (
            unittest.mock.patch("wfis.lib.season.oracle.exact_q", side_effect=AssertionError("q was evaluated")),
            unittest.mock.patch(
                "wfis.lib.season.oracle.exact_q_tilde", side_effect=AssertionError("q̃ was evaluated")
            ),
        ):
            for b, f in itertools.product(range(0, 4), range(0, 5)):
                result = enumerate_oracle(UrnState(0, b, f))

                self.assertEqual(result.q, Fraction(b, b + 1) ** f)
                self.assertEqual(result.q_tilde, Fraction(b, b + 2) ** f)

            # whites are removed when drawn
            for w, f in itertools.product(range(0, 5), range(0, 4)):
                if f <= w + 1:
                    self.assertEqual(enumerate_oracle(UrnState(w, 0, f)).q, Fraction(w - f + 1, w + 1))

            # the red ball survives exactly when an extra designated black ball stays unmarked
            for w, b, f in itertools.product(range(0, 3), range(0, 3), range(0, 4)):
                extended = enumerate_oracle(UrnState(w, b + 1, f))

                assert extended.p_b is not None

                self.assertEqual(enumerate_oracle(UrnState(w, b, f)).q, 1 - extended.p_b)

    def test_enumerate_oracle_bound(self):
        """Tests that enumerate_oracle() refuses large urns"""

        with self.assertRaises(OracleBoundError):
            enumerate_oracle(UrnState(4, 4, 3), bound=10)

    def test_compare_with_oracle(self):
        """Tests that the dynamic programme agrees with the enumeration on
        every small urn"""

        self.assertEqual(compare_with_oracle(6), [])


if __name__ == "__main__":
    unittest.main()
