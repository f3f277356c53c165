"""Reading and writing the on-disk instance format.

Schema::

    {"ground_size": N,
     "items": [{"cost": "3/4" | 3,
                "dist": [{"state": [0, 2], "prob": "1/2"}, ...]},
               ...]}

Rationals are ``"num/den"`` strings or bare JSON integers; element lists are
strictly ascending.  :func:`load_instance` rejects any deviation from the
type invariants with a message anchored to the offending source line.
:func:`instance_to_jsonable` emits the canonical form: support sorted
ascending by bitmask, rationals in lowest terms, whole numbers as bare ints.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .errors import FormatError
from .instance import (
    Instance,
    Item,
    StateDistribution,
    bits_of,
    mask_of,
)
from .jsonpos import Located, parse_located


def parse_rational(raw: object) -> Fraction:
    """Parse a bare int or a ``"num/den"`` string.  Raises ValueError."""
    if isinstance(raw, bool):
        raise ValueError(f"not a rational: {raw!r}")
    if isinstance(raw, int):
        return Fraction(raw)
    if isinstance(raw, str):
        num, slash, den = raw.partition("/")
        if slash and num.lstrip("-").isdigit() and den.isdigit() and int(den) > 0:
            return Fraction(int(num), int(den))
        raise ValueError(f'not a rational: {raw!r} (expected "num/den")')
    raise ValueError(f"not a rational: {raw!r}")


def format_rational(x: Fraction) -> int | str:
    """Canonical file form: bare int for whole numbers, else ``num/den``."""
    if x.denominator == 1:
        return x.numerator
    return f"{x.numerator}/{x.denominator}"


def rational_string(x: Fraction) -> str:
    """Always ``num/den``; used in traces and reports for uniform typing."""
    return f"{x.numerator}/{x.denominator}"


def load_instance(text: str) -> Instance:
    root = parse_located(text)
    obj = _as_object(root, "instance")
    _only_keys(obj, {"ground_size", "items"}, root.line, "instance")
    ground_node = _get(obj, "ground_size", root.line)
    ground_size = ground_node.value
    if not isinstance(ground_size, int) or isinstance(ground_size, bool) or ground_size < 0:
        raise FormatError(ground_node.line, "ground_size must be a nonnegative integer")
    items_node = _get(obj, "items", root.line)
    if not isinstance(items_node.value, list):
        raise FormatError(items_node.line, "items must be an array")

    items = []
    for idx, item_node in enumerate(items_node.value):
        items.append(_load_item(item_node, idx, ground_size))
    return Instance(ground_size, tuple(items))


def load_instance_path(path: str | Path) -> Instance:
    return load_instance(Path(path).read_text())


def _load_item(node: Located, idx: int, ground_size: int) -> Item:
    obj = _as_object(node, f"item {idx}")
    _only_keys(obj, {"cost", "dist"}, node.line, f"item {idx}")
    cost_node = _get(obj, "cost", node.line, f"item {idx}")
    cost = _rational_at(cost_node, f"item {idx}: cost")
    if cost <= 0:
        raise FormatError(cost_node.line, f"item {idx}: cost must be positive, got {cost}")

    dist_node = _get(obj, "dist", node.line, f"item {idx}")
    if not isinstance(dist_node.value, list) or not dist_node.value:
        raise FormatError(dist_node.line, f"item {idx}: dist must be a nonempty array")
    pairs: list[tuple[int, Fraction]] = []
    seen: dict[int, int] = {}
    total = Fraction(0)
    for k, entry in enumerate(dist_node.value):
        state, prob = _load_support_entry(entry, idx, k, ground_size)
        if state in seen:
            raise FormatError(entry.line, f"item {idx}: duplicate support state (same as entry {seen[state]})")
        seen[state] = k
        pairs.append((state, prob))
        total += prob
    if total != 1:
        raise FormatError(dist_node.line, f"item {idx}: probabilities sum to {total}, not 1")
    return Item(idx, cost, StateDistribution.from_pairs(pairs))


def _load_support_entry(node: Located, idx: int, k: int, ground_size: int) -> tuple[int, Fraction]:
    label = f"item {idx} dist entry {k}"
    obj = _as_object(node, label)
    _only_keys(obj, {"state", "prob"}, node.line, label)
    state_node = _get(obj, "state", node.line, label)
    if not isinstance(state_node.value, list):
        raise FormatError(state_node.line, f"{label}: state must be an array of element indices")
    prev = -1
    for el_node in state_node.value:
        e = el_node.value
        if not isinstance(e, int) or isinstance(e, bool):
            raise FormatError(el_node.line, f"{label}: element indices must be integers")
        if e <= prev:
            raise FormatError(el_node.line, f"{label}: element list must be strictly ascending")
        if e < 0 or e >= ground_size:
            raise FormatError(el_node.line, f"{label}: element {e} outside ground set of size {ground_size}")
        prev = e
    state = mask_of(el.value for el in state_node.value)
    prob_node = _get(obj, "prob", node.line, label)
    prob = _rational_at(prob_node, f"{label}: prob")
    if prob <= 0:
        raise FormatError(prob_node.line, f"{label}: probability must be positive, got {prob}")
    return state, prob


def _rational_at(node: Located, label: str) -> Fraction:
    try:
        return parse_rational(node.value)
    except ValueError as exc:
        raise FormatError(node.line, f"{label}: {exc}") from None


def _as_object(node: Located, label: str) -> dict[str, Located]:
    if not isinstance(node.value, dict):
        raise FormatError(node.line, f"{label} must be an object")
    return node.value


def _get(obj: dict[str, Located], key: str, line: int, label: str = "instance") -> Located:
    if key not in obj:
        raise FormatError(line, f'{label}: missing key "{key}"')
    return obj[key]


def _only_keys(obj: dict[str, Located], allowed: set[str], line: int, label: str) -> None:
    for key, node in obj.items():
        if key not in allowed:
            raise FormatError(node.line, f'{label}: unknown key "{key}"')


def instance_to_jsonable(inst: Instance) -> dict:
    return {
        "ground_size": inst.ground_size,
        "items": [
            {
                "cost": format_rational(item.cost),
                "dist": [
                    {"state": list(bits_of(state)), "prob": format_rational(prob)}
                    for state, prob in item.dist.support
                ],
            }
            for item in inst.items
        ],
    }


def dumps_instance(inst: Instance) -> str:
    return json.dumps(instance_to_jsonable(inst), indent=2) + "\n"
