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

import pathlib

from typing import Final

import wfis.commands

from wfis.utils.error import WfisException
from wfis.utils.importlib import get_distribution_package_name

DEFAULT_DISTRIBUTION_PACKAGE_NAME: Final[str] = "wright-fisher-indirect-selection-cli"

commands_package_path: Final[pathlib.Path] = pathlib.Path(wfis.commands.__file__).parent
description: Final[str] = "Wright-Fisher Indirect Selection CLI"

try:
    distribution_package_name: str = get_distribution_package_name(__package__ or "wfis")
except WfisException:
    # running from a source checkout without installed metadata
    distribution_package_name = DEFAULT_DISTRIBUTION_PACKAGE_NAME
