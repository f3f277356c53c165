"""Exception types shared across the package."""

from __future__ import annotations


class StocoverError(Exception):
    """Base class for all package-specific errors."""


class TooLarge(StocoverError):
    """An enumeration or table would exceed the caller-supplied cap."""


class StuckResidual(StocoverError):
    """Greedy halted with elements still uncovered and no selectable item.

    Carries the partial trace accumulated up to the halt.  Cannot happen on
    an instance where every element is covered with probability one; it is
    reachable only when running the policy raw on an instance without that
    guarantee.
    """

    def __init__(self, trace):
        super().__init__("elements remain uncovered but no item is selectable")
        self.trace = trace


class Infeasible(StocoverError):
    """The optimal-policy recursion reached a dead end: elements remain
    uncovered and no remaining item can ever cover them."""


class UncoveredElement(StocoverError):
    """A deterministic embedding was asked to cover an element that no set
    contains."""


class FormatError(StocoverError):
    """An input file violates the schema.  Messages are line-anchored."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
