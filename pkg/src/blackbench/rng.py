"""Deterministic PRNG used everywhere randomness is needed.

splitmix64 keeps instance generation, bootstrap draws, and experiment
seeds bit-reproducible across platforms without depending on numpy's
generator internals. Gaussians come from Box-Muller on consecutive
53-bit uniforms.
"""

from __future__ import annotations

import math

_MASK64 = 0xFFFFFFFFFFFFFFFF
_GAMMA = 0x9E3779B97F4A7C15

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3


def fnv1a64(data: bytes) -> int:
    """64-bit FNV-1a hash."""
    h = _FNV_OFFSET
    for b in data:
        h = ((h ^ b) * _FNV_PRIME) & _MASK64
    return h


def mix64(x: int) -> int:
    """splitmix64 output finalizer: one full avalanche step."""
    z = (x + _GAMMA) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_seed(master: int, index: int) -> int:
    """Independent per-index substream seed from one master seed."""
    return mix64((master ^ ((index + 1) * _GAMMA)) & _MASK64)


class SplitMix64:
    """splitmix64 stream with uniform/Gaussian helpers.

    State advances by the golden gamma per draw; Gaussians are produced
    in Box-Muller pairs, with the leftover sine value cached so one
    `gauss()` call consumes exactly two uniforms every other call.
    """

    __slots__ = ("_state", "_spare")

    def __init__(self, seed: int):
        self._state = seed & _MASK64
        self._spare: float | None = None

    def next_uint64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def uniform(self) -> float:
        """Uniform double in [0, 1) from the top 53 bits."""
        return (self.next_uint64() >> 11) * 2.0**-53

    def uniforms(self, k: int) -> list[float]:
        return [self.uniform() for _ in range(k)]

    def gauss(self) -> float:
        if self._spare is not None:
            g, self._spare = self._spare, None
            return g
        u1 = self.uniform()
        if u1 == 0.0:
            u1 = 2.0**-53
        u2 = self.uniform()
        r = math.sqrt(-2.0 * math.log(u1))
        theta = 2.0 * math.pi * u2
        self._spare = r * math.sin(theta)
        return r * math.cos(theta)

    def gausses(self, k: int) -> list[float]:
        return [self.gauss() for _ in range(k)]

    def randbelow(self, k: int) -> int:
        """Uniform integer in [0, k) without modulo bias (rejection)."""
        if k <= 0:
            raise ValueError("k must be positive")
        limit = (_MASK64 + 1) - (_MASK64 + 1) % k
        while True:
            z = self.next_uint64()
            if z < limit:
                return z % k


def instance_seed(suite_name: str, function_id: int, dimension: int, instance_id: int) -> int:
    """Seed for the (suite, i, n, j) transform stream.

    The name hash is FNV-1a over the UTF-8 bytes; the triple enters via
    the fixed linear combination so nearby triples land in unrelated
    streams after the splitmix64 avalanche.
    """
    linear = 1000003 * function_id + 10007 * dimension + instance_id
    return (fnv1a64(suite_name.encode("utf-8")) ^ linear) & _MASK64
