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

from typing import Self

import numpy as np

from pydantic import BaseModel, ConfigDict, Field

# replicas per Monte-Carlo block; block i always draws from stream i so that
# results do not depend on the number of workers
DEFAULT_BLOCK_SIZE = 10_000


class RngStream(BaseModel):
    """Seedable random stream identified by (seed, stream_id)

    Streams use NumPy's PCG64 bit generator seeded through a SeedSequence
    whose spawn key is (*cell, stream_id). Identical identifiers reproduce
    identical draws; distinct identifiers yield independent streams.
    """

    model_config = ConfigDict(frozen=True)

    seed: int = Field(ge=0, lt=2**64)
    stream_id: int = Field(default=0, ge=0)
    cell: tuple[int, ...] = ()

    def generator(self) -> np.random.Generator:
        seed_sequence = np.random.SeedSequence(self.seed, spawn_key=(*self.cell, self.stream_id))

        return np.random.Generator(np.random.PCG64(seed_sequence))

    def block(self, block_index: int) -> Self:
        """Returns the stream used for the Monte-Carlo block with the given
        index within the cell of this stream"""

        return self.model_copy(update={"cell": (*self.cell, self.stream_id), "stream_id": block_index})

    def for_cell(self, *indices: int) -> Self:
        """Returns a stream for an independent sweep cell (e.g. one (n, x)
        pair of a harness grid)"""

        return self.model_copy(update={"cell": (*self.cell, *indices)})


def split_into_blocks(reps: int, block_size: int = DEFAULT_BLOCK_SIZE) -> list[int]:
    """Splits a replica count into block sizes

    Parameters
    ----------
    reps
        total number of replicas
    block_size
        maximum number of replicas per block

    Returns
    -------
    list[int]
        block sizes (all equal to block_size except possibly the last one)
    """

    if reps <= 0:
        return []

    number_of_blocks = math.ceil(reps / block_size)

    return [block_size] * (number_of_blocks - 1) + [reps - block_size * (number_of_blocks - 1)]
