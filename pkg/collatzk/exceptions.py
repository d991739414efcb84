"""Exception classes used in collatzk.

Copyright (c) 2024 collatzk maintainers

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
"""
from typing import TYPE_CHECKING, Any, Optional

if TYPE_CHECKING:
    from collatzk.models import OddEvenProfile


class CollatzException(Exception):
    """Base class for every error raised by collatzk."""


class DomainError(CollatzException, ValueError):
    """Base class for inputs outside the domain of the map or of an operation."""


class ZeroInputError(DomainError):
    """Exception raised when 0 is passed where a positive integer is required."""


class ProfileLengthError(DomainError):
    """Exception raised when a parity profile is requested for more terms than a trajectory holds."""


class FormulaException(CollatzException):
    """Base class for failures while evaluating a closed-form expression."""


class NonIntegerResult(FormulaException):
    """Exception raised when a closed form that must be integral evaluates to a non-integer.

    This always means the parity profile does not belong to the trajectory it was used with.
    """

    def __init__(self, message: str, value: Any, *args: Any, **kwargs: Any):
        """Keep the offending exact value on the exception."""
        self.value = value
        super().__init__(message, value, *args, **kwargs)


class NotPowerOfTwo(FormulaException):
    """Exception raised when the stopping-time rational is not an exact power of two."""

    def __init__(self, message: str, value: Any, *args: Any, **kwargs: Any):
        """Keep the offending exact value on the exception."""
        self.value = value
        super().__init__(message, value, *args, **kwargs)


class InexactDivision(FormulaException):
    """Exception raised when a dyadic quotient is not itself dyadic."""


class DivisionByZero(FormulaException, ZeroDivisionError):
    """Exception raised when 1 - eps*S vanishes, or any other dyadic division by zero."""

    def __init__(self, message: str, profile: Optional["OddEvenProfile"] = None, *args: Any, **kwargs: Any):
        """Keep the profile that produced the zero denominator, when there is one."""
        self.profile = profile
        super().__init__(message, *args, **kwargs)


class InternalInvariantBroken(CollatzException):
    """Exception raised when a derived structural property of the map fails to hold.

    Seeing this means either a bug or a mathematically surprising trajectory; it is never expected.
    """


class CheckpointException(CollatzException):
    """Base class for failures reading or writing sweep checkpoints."""


class CheckpointIOError(CheckpointException):
    """Exception raised when a checkpoint cannot be read or durably written."""


class CheckpointMismatch(CheckpointException):
    """Exception raised when an existing checkpoint belongs to a different sweep configuration."""
