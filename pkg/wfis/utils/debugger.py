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

import inspect
import os


def is_debugpy_running() -> bool:
    """Returns whether debugpy (https://github.com/microsoft/debugpy) is
    running, in which case the CLI re-raises exceptions instead of
    printing them so that the debugger stops at the failing frame"""

    return any(frame.filename.endswith(f"debugpy{os.sep}__main__.py") for frame in inspect.stack())
