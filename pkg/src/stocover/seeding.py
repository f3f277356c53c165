"""Deterministic seed derivation and exact uniform draws.

All randomness in the package flows through these helpers, so any tuple of
integer seed parts maps to the same stream on every platform, run, and
Python version.  ``hash()`` is never used (its tuple mixing is an
implementation detail); seeds are mixed with BLAKE2b instead.
"""

from __future__ import annotations

import hashlib
import random
from fractions import Fraction

_MASK64 = (1 << 64) - 1


def derive_seed(*parts: int) -> int:
    """Mix integer parts into a 64-bit seed via BLAKE2b."""
    h = hashlib.blake2b(digest_size=8)
    for p in parts:
        h.update(int(p).to_bytes(16, "little", signed=True))
    return int.from_bytes(h.digest(), "little") & _MASK64


def unit_fraction(rng: random.Random) -> Fraction:
    """Uniform rational in [0, 1): k / 2**53 for a 53-bit draw k.

    Exact, so comparisons against rational CDF thresholds never round.
    """
    return Fraction(rng.getrandbits(53), 1 << 53)
