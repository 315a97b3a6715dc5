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

import concurrent.futures
import logging

from typing import Callable, Sequence, TypeVar

from wfis.utils.logging import progress_bar

J = TypeVar("J")
R = TypeVar("R")

logger = logging.getLogger(__name__)


def run_jobs(function: Callable[[J], R], jobs: Sequence[J], n_workers: int = 1, description: str = "Jobs") -> list[R]:
    """Runs the given function for each job descriptor and returns the
    results in job order

    With more than one worker, jobs are fanned out over a process pool;
    function and job descriptors must then be picklable (module-level
    functions, pydantic models, tuples).

    Parameters
    ----------
    function
        function evaluating a single job descriptor
    jobs
        job descriptors
    n_workers
        maximum number of worker processes
    description
        text displayed in front of the progress bar

    Returns
    -------
    list
        results in the order of the given job descriptors
    """

    results: dict[int, R] = {}
    n_workers = max(1, min(n_workers, len(jobs)))

    logger.debug(f"Running {len(jobs)} job(s) with {n_workers} worker(s)")

    with progress_bar(len(jobs), description) as bar:
        if n_workers == 1:
            for index, job in enumerate(jobs):
                results[index] = function(job)
                bar.update()
        else:
            with concurrent.futures.ProcessPoolExecutor(max_workers=n_workers) as executor:
                futures = {executor.submit(function, job): index for index, job in enumerate(jobs)}

                for future in concurrent.futures.as_completed(futures):
                    results[futures[future]] = future.result()
                    bar.update()

    return [results[index] for index in range(len(jobs))]
