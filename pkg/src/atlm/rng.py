"""Portable deterministic random numbers for fold generation.

PCG32 (pcg_xsh_rr_64_32 from the PCG family): 64-bit LCG state with an
XSH-RR output permutation.  The reference C implementation is a dozen
lines and has been ported to most languages, so fold assignments written
by this package can be reproduced exactly outside Python.  Streams are
selected with the standard odd-increment construction.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_MULTIPLIER = 6364136223846793005


class Pcg32:
    """pcg32 generator; ``seed`` is the state seed, ``stream`` the sequence."""

    def __init__(self, seed: int, stream: int = 0):
        self.state = 0
        self.inc = (((stream & _MASK64) << 1) | 1) & _MASK64
        self._next()
        self.state = (self.state + (seed & _MASK64)) & _MASK64
        self._next()

    def _next(self) -> int:
        old = self.state
        self.state = (old * _MULTIPLIER + self.inc) & _MASK64
        xorshifted = (((old >> 18) ^ old) >> 27) & 0xFFFFFFFF
        rot = old >> 59
        return ((xorshifted >> rot) | (xorshifted << ((-rot) & 31))) & 0xFFFFFFFF

    def next_uint32(self) -> int:
        return self._next()

    def next_below(self, bound: int) -> int:
        """Uniform draw in [0, bound), unbiased via rejection."""
        if bound <= 0:
            raise ValueError(f"bound must be positive, got {bound}")
        threshold = (1 << 32) % bound
        while True:
            r = self._next()
            if r >= threshold:
                return r % bound

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle, descending index order."""
        for i in range(len(items) - 1, 0, -1):
            j = self.next_below(i + 1)
            items[i], items[j] = items[j], items[i]
