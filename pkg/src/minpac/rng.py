"""SplitMix64, the fixed pseudo-random generator behind every instance generator.

The stream is ``mix(seed + k * 0x9E3779B97F4A7C15 mod 2^64)`` for
``k = 1, 2, ...`` with the standard SplitMix64 finaliser, so it can be
reproduced bit-for-bit in any language.  Bounded integers use rejection
sampling: a raw draw ``r`` is accepted iff ``r >= 2^64 mod bound`` and then
mapped to ``r mod bound``.  Probabilities compare ``(r >> 11) * 2^-53``
against the threshold.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB


def _mix(z: int) -> int:
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    def __init__(self, seed: int):
        self.state = int(seed) & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        return _mix(self.state)

    def below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)``."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        threshold = (1 << 64) % bound
        while True:
            r = self.next_u64()
            if r >= threshold:
                return r % bound

    def integers(self, low: int, high: int) -> int:
        """Uniform integer in the closed range ``[low, high]``."""
        return low + self.below(high - low + 1)

    def random(self) -> float:
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def shuffle(self, items: list) -> list:
        """In-place Fisher-Yates shuffle (``i`` runs from the end)."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]
        return items

    def raw_block(self, count: int) -> np.ndarray:
        """The next ``count`` raw outputs, vectorised; advances the state."""
        with np.errstate(over="ignore"):
            k = np.arange(1, count + 1, dtype=np.uint64)
            z = np.uint64(self.state) + k * np.uint64(GOLDEN)
            z = (z ^ (z >> np.uint64(30))) * np.uint64(_M1)
            z = (z ^ (z >> np.uint64(27))) * np.uint64(_M2)
            z = z ^ (z >> np.uint64(31))
        self.state = (self.state + count * GOLDEN) & MASK64
        return z

    def below_array(self, bounds) -> np.ndarray:
        """``[self.below(b) for b in bounds]`` computed in blocks.

        Produces exactly the sequential result: a rejected draw shifts the
        remaining stream by one, as it would one call at a time.
        """
        bounds = np.asarray(bounds, dtype=np.uint64)
        out = np.empty(bounds.size, dtype=np.uint64)
        pos = 0
        while pos < bounds.size:
            todo = bounds[pos:]
            if np.any(todo == 0):
                raise ValueError("bound must be positive")
            saved = self.state
            raw = self.raw_block(todo.size)
            threshold = (np.uint64(0) - todo) % todo  # 2^64 mod b
            bad = np.flatnonzero(raw < threshold)
            take = todo.size if bad.size == 0 else int(bad[0])
            out[pos:pos + take] = raw[:take] % todo[:take]
            pos += take
            self.state = (saved + take * GOLDEN) & MASK64
            if take < todo.size:
                self.next_u64()  # the rejected draw
        return out
