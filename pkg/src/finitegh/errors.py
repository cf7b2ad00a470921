"""Exception types raised across the package."""

from __future__ import annotations

from dataclasses import dataclass


class GHError(ValueError):
    """Base class for every error raised by finitegh."""


@dataclass(frozen=True)
class Violation:
    """One failed metric axiom, with the indices that witness it."""

    kind: str
    indices: tuple[int, ...] = ()

    def __str__(self) -> str:
        if not self.indices:
            return self.kind
        return f"{self.kind}({', '.join(map(str, self.indices))})"


class MetricError(GHError):
    def __init__(self, violations: list[Violation]):
        self.violations = list(violations)
        shown = ", ".join(str(v) for v in self.violations[:10])
        more = len(self.violations) - 10
        if more > 0:
            shown += f", ... ({more} more)"
        super().__init__(f"not a finite metric space: {shown}")


class NegativeScale(GHError):
    pass


class IndexOutOfRange(GHError, IndexError):
    pass


class NotSurjectiveOnLeft(GHError):
    pass


class NotSurjectiveOnRight(GHError):
    pass


class TooLargeForOracle(GHError):
    pass


class StepDoesNotDivide(GHError):
    pass


class GapOutOfRange(GHError):
    pass


class SearchIncomplete(GHError):
    """An exact search ran out of budget before proving optimality."""

    def __init__(self, message: str, result=None):
        super().__init__(message)
        self.result = result


class IdentityViolation(AssertionError):
    """A theorem-backed identity failed; this means a solver defect."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report
