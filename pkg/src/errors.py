"""Exception hierarchy shared by the library and the gmc CLI.

Each error carries the process exit code the CLI reports for it.
"""

from __future__ import annotations

from typing import Sequence, Tuple, TYPE_CHECKING

if TYPE_CHECKING:
    from src.geometry.model import Demand


class GmcError(Exception):
    """Base error with the CLI exit code attached."""

    exit_code = 2

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class InstanceError(GmcError, ValueError):
    """Malformed input: schema violations, unknown ids, bad parameters."""

    exit_code = 2

    def __init__(self, message: str, field: str = ""):
        super().__init__(f"{field}: {message}" if field else message)
        self.field = field


class InfeasibleSolution(GmcError, RuntimeError):
    """A solution leaves demands unsatisfied."""

    exit_code = 1

    def __init__(self, message: str, violated: Sequence["Demand"] = ()):
        super().__init__(message)
        self.violated: Tuple["Demand", ...] = tuple(violated)


class BudgetExceeded(GmcError, RuntimeError):
    """An exact routine hit its size cap or search budget."""

    exit_code = 3

    def __init__(self, message: str, limit: int = 0):
        super().__init__(message)
        self.limit = limit
