"""Seeded randomness with a fixed algorithm.

Raw 64-bit words come from numpy's PCG64 bit generator (PCG XSL-RR 128/64,
seeded through numpy's SeedSequence). Bounded integers use rejection sampling
on those words: draw x until x < 2^64 - (2^64 mod n), return x mod n. Only
``random_raw`` is used, so higher-level numpy sampling changes cannot alter
the streams.
"""

from __future__ import annotations

import numpy as np

_TOP = 1 << 64


class Rng:
    def __init__(self, seed: int):
        if not 0 <= seed < _TOP:
            raise ValueError("seed must be a 64-bit unsigned integer")
        self.seed = seed
        self._bits = np.random.PCG64(seed)

    def next_u64(self) -> int:
        return int(self._bits.random_raw())

    def below(self, n: int) -> int:
        """Uniform integer in [0, n)."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = _TOP - (_TOP % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def shuffle(self, items: list) -> None:
        """Fisher-Yates, from the back."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]
