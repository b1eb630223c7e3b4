"""SplitMix64: the portable seeded generator behind every CLI random draw.

Algorithm identifier ``splitmix64`` (Steele, Lea & Flood 2014): a 64-bit
state advanced by the golden-ratio increment, output through two
xor-shift-multiply rounds.  Doubles take the top 53 bits.  Chosen over
numpy's bit generators because the stream is trivially reproducible in any
language from the seed alone.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
ALGORITHM = "splitmix64"


class SplitMix64:
    def __init__(self, seed: int = 0):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def random(self) -> float:
        """Uniform double in [0, 1)."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def uniform(self, low: float = 0.0, high: float = 1.0) -> float:
        return low + (high - low) * self.random()

    def integers(self, low: int, high: int) -> int:
        """Uniform integer in [low, high) (modulo reduction; bias < 2^-40 for small spans)."""
        return low + self.next_u64() % (high - low)
