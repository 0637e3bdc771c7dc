"""Deterministic random number generation.

Every randomized factory in this package draws from :class:`Xoshiro256`,
a pure-Python xoshiro256++ generator seeded through splitmix64, with
Gaussian variates produced by the Box-Muller transform.  The point of
carrying our own generator is bit-for-bit reproducibility: a given seed
produces the same stream on every platform and with every numpy version,
so seeded expected values frozen into the test suite never drift.

Stream layout conventions used by callers:

* uniforms are 53-bit doubles in ``[0, 1)``,
* ``normals(n)`` consumes ``2 * ceil(n / 2)`` uniforms (Box-Muller pairs,
  the spare of an odd request is discarded),
* ``exponentials(n)`` consumes ``n`` uniforms.
"""

from __future__ import annotations

import numpy as np

_MASK = (1 << 64) - 1


def _splitmix64(seed: int):
    state = seed & _MASK
    while True:
        state = (state + 0x9E3779B97F4A7C15) & _MASK
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        yield z ^ (z >> 31)


class Xoshiro256:
    """xoshiro256++ with splitmix64 seed expansion."""

    __slots__ = ("_s0", "_s1", "_s2", "_s3")

    def __init__(self, seed: int):
        if seed < 0:
            raise ValueError("seed must be a non-negative integer")
        sm = _splitmix64(seed)
        self._s0 = next(sm)
        self._s1 = next(sm)
        self._s2 = next(sm)
        self._s3 = next(sm)

    def random(self) -> float:
        """One uniform double in [0, 1)."""
        return self.uniforms(1)[0]

    def uniforms(self, n: int) -> np.ndarray:
        """n uniform doubles in [0, 1)."""
        s0, s1, s2, s3 = self._s0, self._s1, self._s2, self._s3
        out = np.empty(n)
        inv = 2.0 ** -53
        for i in range(n):
            x = (s0 + s3) & _MASK
            r = ((((x << 23) | (x >> 41)) & _MASK) + s0) & _MASK
            out[i] = (r >> 11) * inv
            t = (s1 << 17) & _MASK
            s2 ^= s0
            s3 ^= s1
            s1 ^= s2
            s0 ^= s3
            s2 ^= t
            s3 = ((s3 << 45) | (s3 >> 19)) & _MASK
        self._s0, self._s1, self._s2, self._s3 = s0, s1, s2, s3
        return out

    def normals(self, n: int) -> np.ndarray:
        """n standard normal variates via Box-Muller."""
        pairs = (n + 1) // 2
        u = self.uniforms(2 * pairs)
        # the log argument must avoid 0; flip u1 into (0, 1]
        r = np.sqrt(-2.0 * np.log(1.0 - u[0::2]))
        theta = 2.0 * np.pi * u[1::2]
        z = np.empty(2 * pairs)
        z[0::2] = r * np.cos(theta)
        z[1::2] = r * np.sin(theta)
        return z[:n]

    def exponentials(self, n: int) -> np.ndarray:
        """n unit-rate exponential variates."""
        return -np.log(1.0 - self.uniforms(n))

    def complex_normals(self, n: int) -> np.ndarray:
        """n complex entries with independent standard normal re/im parts.

        Entry i is built from normals (2i, 2i+1) of the stream.
        """
        z = self.normals(2 * n)
        return z[0::2] + 1j * z[1::2]
