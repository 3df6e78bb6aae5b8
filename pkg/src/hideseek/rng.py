"""Deterministic 64-bit generator used for every randomized scan.

The state transition is SplitMix64, fixed bit-for-bit so golden outputs
survive reimplementation in any language:

    state = (state + 0x9E3779B97F4A7C15) mod 2**64
    z = state
    z = ((z XOR (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2**64
    z = ((z XOR (z >> 27)) * 0x94D049BB133111EB) mod 2**64
    output = z XOR (z >> 31)

`below(n)` reduces an output by plain modulo `n`; the bias is below
n / 2**64 and irrelevant at the ranges used here, and keeping the
reduction trivial is what makes the stream reproducible.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1


class SplitMix64:
    """Seedable deterministic generator; identical seed, identical stream."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform-ish integer in [0, n)."""
        if n <= 0:
            raise ValueError("n must be positive")
        return self.next_u64() % n

    def randrange(self, lo: int, hi: int) -> int:
        """Integer in [lo, hi)."""
        if hi <= lo:
            raise ValueError("empty range")
        return lo + self.below(hi - lo)
