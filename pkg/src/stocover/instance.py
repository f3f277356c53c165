"""Stochastic set cover instances: items with random set-valued states.

An instance is a ground set of ``ground_size`` elements (indexed ``0..n-1``;
subsets are stored as int bitmasks) plus a list of items.  Each item has a
positive rational cost and a finite state distribution: evaluating the item
reveals one subset of the ground set, drawn once per realization and fixed
thereafter.  Item states are mutually independent.

All probabilities and costs are :class:`fractions.Fraction`, so every derived
quantity in this package (marginals, expected costs, approximation ratios) is
exact.  Constructors do not enforce invariants; :func:`validate_instance`
reports violations, and every operation below assumes a valid instance.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator

from .errors import TooLarge
from .seeding import derive_seed, unit_fraction

# Subsets of the ground set are plain int bitmasks; items are dense indices.
ElementSubset = int
ItemId = int

ZERO = Fraction(0)
ONE = Fraction(1)

DEFAULT_REALIZATION_CAP = 10**6


def mask_of(elements: Iterable[int]) -> int:
    """Bitmask with the given element indices set."""
    out = 0
    for e in elements:
        out |= 1 << e
    return out


def bits_of(mask: int) -> Iterator[int]:
    """Indices of set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def elements_of(mask: int) -> list[int]:
    return list(bits_of(mask))


@dataclass(frozen=True)
class StateDistribution:
    """Finite support over states: ``(state mask, probability)`` pairs.

    A valid distribution has pairwise-distinct states, strictly positive
    probabilities summing to exactly 1, and canonical (ascending bitmask)
    support order so that inverse-CDF sampling and file round-trips are
    deterministic.
    """

    support: tuple[tuple[int, Fraction], ...]

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, Fraction]]) -> "StateDistribution":
        """Build with canonical support order (sorted ascending by mask)."""
        return cls(tuple(sorted(pairs, key=lambda sp: sp[0])))

    @classmethod
    def point_mass(cls, state: int) -> "StateDistribution":
        return cls(((state, ONE),))


@dataclass(frozen=True)
class Item:
    id: ItemId
    cost: Fraction
    dist: StateDistribution


@dataclass(frozen=True)
class Instance:
    ground_size: int
    items: tuple[Item, ...]

    @property
    def n_items(self) -> int:
        return len(self.items)

    @property
    def costs(self) -> tuple[Fraction, ...]:
        return tuple(item.cost for item in self.items)

    @property
    def full_ground(self) -> int:
        """Bitmask of the whole ground set."""
        return (1 << self.ground_size) - 1


@dataclass(frozen=True)
class MarginalTable:
    """Per (item, element) probability that the item's state contains the
    element.  This is the only distributional knowledge the greedy policy
    ever consumes."""

    q: tuple[tuple[Fraction, ...], ...]

    def residual_mass(self, item: ItemId, uncovered: int) -> Fraction:
        """Expected number of the given uncovered elements the item's state
        would cover."""
        row = self.q[item]
        return sum((row[e] for e in bits_of(uncovered)), ZERO)


@dataclass(frozen=True)
class Realization:
    """One fixed state per item: the shared world every policy observes."""

    states: tuple[int, ...]


def validate_instance(inst: Instance) -> list[str]:
    """Report every invariant violation; an empty list means the instance is
    valid.  Never raises."""
    problems: list[str] = []
    if inst.ground_size < 0:
        problems.append(f"ground_size {inst.ground_size} is negative")
        return problems
    seen_ids = set()
    for pos, item in enumerate(inst.items):
        label = f"item {pos}"
        if item.id != pos:
            problems.append(f"{label}: id {item.id} is not the dense index {pos}")
        if item.id in seen_ids:
            problems.append(f"{label}: duplicate item id {item.id}")
        seen_ids.add(item.id)
        if item.cost <= 0:
            problems.append(f"{label}: nonpositive cost {item.cost}")
        seen_states = set()
        total = ZERO
        for state, prob in item.dist.support:
            if prob <= 0:
                problems.append(f"{label}: nonpositive probability {prob} for state {state:#b}")
            if state < 0 or state >= (1 << inst.ground_size):
                problems.append(f"{label}: state {state:#b} outside ground set of size {inst.ground_size}")
            if state in seen_states:
                problems.append(f"{label}: duplicate support state {state:#b}")
            seen_states.add(state)
            total += prob
        if total != 1:
            problems.append(f"{label}: probabilities sum to {total}, not 1")
    return problems


def marginals(inst: Instance) -> MarginalTable:
    """Element-membership probabilities: ``q[F][e]`` is the exact sum of the
    probabilities of F's support states containing e."""
    rows = []
    for item in inst.items:
        row = [ZERO] * inst.ground_size
        for state, prob in item.dist.support:
            for e in bits_of(state):
                row[e] += prob
        rows.append(tuple(row))
    return MarginalTable(tuple(rows))


def is_perfect_coverage(inst: Instance, table: MarginalTable | None = None) -> bool:
    """True iff every ground element lies in some item's state with
    probability one.

    By independence across items, the probability that element e is never
    realized is the product of (1 - q[F][e]) over all items, and a product of
    factors in [0, 1] vanishes iff some factor is zero, i.e. some q[F][e]
    equals one.  So the existence check below is equivalent to the
    probabilistic definition; vacuously true for an empty ground set.
    """
    table = marginals(inst) if table is None else table
    return all(
        any(table.q[item.id][e] == 1 for item in inst.items)
        for e in range(inst.ground_size)
    )


def enumerate_realizations(
    inst: Instance, cap: int = DEFAULT_REALIZATION_CAP
) -> Iterator[tuple[Realization, Fraction]]:
    """Every joint state assignment with its exact probability.

    The realization space is the Cartesian product of item supports and the
    probability of a realization is the product of its component
    probabilities (items are independent); the yielded probabilities sum to
    exactly 1.  Raises :class:`TooLarge` before yielding anything if the
    product of support sizes exceeds ``cap``.
    """
    count = math.prod(len(item.dist.support) for item in inst.items)
    if count > cap:
        raise TooLarge(f"realization space has {count} points, cap is {cap}")

    def walk() -> Iterator[tuple[Realization, Fraction]]:
        supports = [item.dist.support for item in inst.items]
        for combo in product(*supports):
            states = tuple(state for state, _ in combo)
            prob = math.prod((p for _, p in combo), start=ONE)
            yield Realization(states), prob

    return walk()


def sample_realization(inst: Instance, seed: int) -> Realization:
    """Draw one realization, deterministically in ``(seed, item id)``.

    Each item's state is drawn independently by inverse CDF over its
    canonical support order: a Mersenne Twister seeded with
    ``derive_seed(seed, item.id)`` yields an exact uniform k/2**53, and the
    first support entry whose cumulative probability exceeds it is chosen.
    """
    states = []
    for item in inst.items:
        rng = random.Random(derive_seed(seed, item.id))
        u = unit_fraction(rng)
        cum = ZERO
        chosen = item.dist.support[-1][0]
        for state, prob in item.dist.support:
            cum += prob
            if u < cum:
                chosen = state
                break
        states.append(chosen)
    return Realization(tuple(states))


def is_valid_cover(inst: Instance, chosen: Iterable[ItemId], real: Realization) -> bool:
    """True iff the chosen items' realized states cover everything any item
    realized in this world."""
    target = 0
    for state in real.states:
        target |= state
    got = 0
    for item_id in chosen:
        got |= real.states[item_id]
    return target & ~got == 0
