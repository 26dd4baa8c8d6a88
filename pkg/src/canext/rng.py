"""Tiny deterministic RNG.

Results must be bit-reproducible across platforms and library versions, so
we use a self-contained SplitMix64 stream instead of numpy or the stdlib
Mersenne Twister.  Child streams are derived by hashing string tags, which
keeps independent samplers (points, coefficients, cubics, ...) decoupled
from each other's consumption order.
"""

from __future__ import annotations

import hashlib

_MASK = (1 << 64) - 1


def _mix(z: int) -> int:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & _MASK
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & _MASK
    return z ^ (z >> 31)


def seed_from(*tags) -> int:
    """Stable 64-bit seed derived from arbitrary ints/strings."""
    h = hashlib.blake2b(digest_size=8)
    for t in tags:
        h.update(repr(t).encode())
        h.update(b"\x1f")
    return int.from_bytes(h.digest(), "little")


class SplitMix64:
    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK
        return _mix(self._state)

    def randbelow(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection (n < 2**63)."""
        if n <= 0:
            raise ValueError("randbelow needs n >= 1")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            u = self.next_u64()
            if u < limit:
                return u % n

    def randrange(self, lo: int, hi: int) -> int:
        return lo + self.randbelow(hi - lo)

    def child(self, *tags) -> "SplitMix64":
        return SplitMix64(seed_from(self.next_u64(), *tags))
