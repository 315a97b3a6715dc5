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

import colorama


class WfisException(Exception):
    def __init__(self, error_message: str, details: str | None = None):
        super().__init__(error_message)
        self._error_message = error_message[7:] if error_message.startswith("Error: ") else error_message
        self._details = details

    def __str__(self):
        output = self._get_highlighted_str(self._error_message)

        if (self._details is not None) and (self._details != ""):
            if not output.endswith("\n"):
                output += "\n"

            output += f"Details:\n{self._details.rstrip()}"

        return output

    @property
    def details(self) -> str | None:
        return self._details

    @property
    def error_message(self) -> str:
        return self._error_message

    def _get_highlighted_str(self, str: str) -> str:
        return f"{colorama.Style.BRIGHT}{str}{colorama.Style.RESET_ALL}"


class UsageException(WfisException):
    """Base class of errors caused by arguments outside an operation's
    domain (mapped to exit code 2 by the CLI)"""


class DomainError(UsageException):
    pass


class OracleBoundError(UsageException):
    def __init__(self, size: int, bound: int):
        super().__init__(f"Enumeration refused: w + b + f = {size} exceeds the oracle bound {bound}")


class OutOfRangeError(WfisException):
    def __init__(self, w: int, b: int, f: int, max_n: int):
        super().__init__(f"Table of size {max_n} does not cover (w, b, f) = ({w}, {b}, {f})")


class InfeasibleSweepError(WfisException):
    pass


class DegenerateStepError(WfisException):
    pass
