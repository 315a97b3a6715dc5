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

import importlib.metadata

from wfis.utils.error import WfisException


def get_distribution_package_name(package_name: str) -> str:
    """Returns the name of the distribution package providing the given
    top-level package

    Parameters
    ----------
    package_name
        name of a top-level import package

    Returns
    -------
    str
        name of the distribution package providing the top-level package
    """

    # importlib.metadata may report the same distribution twice when running
    # from an editable install
    distribution_package_names = sorted(set(importlib.metadata.packages_distributions().get(package_name, [])))

    if len(distribution_package_names) == 0:
        raise WfisException(
            f"Distribution package name could not be identified (no distribution package provides a top-level package "
            f"named '{package_name}')"
        )

    if len(distribution_package_names) != 1:
        raise WfisException(
            f"Distribution package name could not be identified (more than one distribution package provides a "
            f"top-level package named '{package_name}')"
        )

    return distribution_package_names[0]


def get_version(distribution_package_name: str) -> str:
    try:
        return importlib.metadata.version(distribution_package_name)
    except importlib.metadata.PackageNotFoundError:
        return "0.0.0"
