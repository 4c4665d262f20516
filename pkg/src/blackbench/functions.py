"""Raw scalable test functions for the bbob-lite suite.

Each raw function is a deterministic map R^n -> R (n >= 2) with minimum
value 0 at a known point. Instancing (translation, rotation, value
offset) lives in `transforms`; these formulas are the un-instanced
cores. The numpy implementations here are also the reference the
compiled kernel is checked against.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

SUBGROUP_SEPARABLE = "separable"
SUBGROUP_MODERATE = "moderate"
SUBGROUP_ILL_CONDITIONED = "ill-conditioned"
SUBGROUP_MULTI_MODAL = "multi-modal"

SLOPE_EDGE = 5.0  # the slope's optimum magnitude per coordinate (box vertex)


def _sphere(z: np.ndarray, aux: Optional[np.ndarray]) -> float:
    return float(z @ z)


def _ellipsoid(z: np.ndarray, aux: np.ndarray) -> float:
    return float(aux @ (z * z))


def _rastrigin(z: np.ndarray, aux: Optional[np.ndarray]) -> float:
    return float(10.0 * (z.size - np.cos(2.0 * np.pi * z).sum()) + z @ z)


def _linear_slope(z: np.ndarray, aux: np.ndarray) -> float:
    # Coordinates past the edge contribute 0: the plane is flat outside
    # the box so the vertex stays the bounded-domain optimum.
    return float(aux @ (SLOPE_EDGE - np.minimum(z, SLOPE_EDGE)))


def _rosenbrock(z: np.ndarray, aux: Optional[np.ndarray]) -> float:
    a = z[:-1]
    b = z[1:]
    return float(100.0 * ((a * a - b) ** 2).sum() + ((a - 1.0) ** 2).sum())


def _discus(z: np.ndarray, aux: Optional[np.ndarray]) -> float:
    tail = z[1:]
    return float(1e6 * z[0] * z[0] + tail @ tail)


def _bent_cigar(z: np.ndarray, aux: Optional[np.ndarray]) -> float:
    tail = z[1:]
    return float(z[0] * z[0] + 1e6 * (tail @ tail))


def _schaffers_f7(z: np.ndarray, aux: Optional[np.ndarray]) -> float:
    s = np.sqrt(z[:-1] ** 2 + z[1:] ** 2)
    total = (np.sqrt(s) * (1.0 + np.sin(50.0 * s**0.2) ** 2)).sum()
    mean = total / (z.size - 1)
    return float(mean * mean)


def _ellipsoid_weights(n: int) -> np.ndarray:
    # condition number 1e6: weights 10^(6k/(n-1)), k = 0..n-1
    return 10.0 ** (6.0 * np.arange(n) / (n - 1))


def _slope_weights(n: int) -> np.ndarray:
    return 10.0 ** (np.arange(n) / (n - 1))


@dataclass(frozen=True)
class RawFunction:
    """An un-instanced scalable test function with minimum 0."""

    function_id: int
    name: str
    subgroup: str
    rotated: bool
    formula: Callable[[np.ndarray, Optional[np.ndarray]], float]
    # per-coordinate value of the raw optimum point (constant vector)
    optimum_coordinate: float = 0.0
    # optimum sits on the bound-box boundary (instanced via reflection,
    # not translation)
    boundary_optimum: bool = False
    # per-dimension weight vector consumed by the formula, if any
    aux_factory: Optional[Callable[[int], np.ndarray]] = field(default=None)

    def raw_optimum(self, n: int) -> np.ndarray:
        return np.full(n, self.optimum_coordinate)

    def aux(self, n: int) -> Optional[np.ndarray]:
        if self.aux_factory is None:
            return None
        key = (self.function_id, n)
        cached = _AUX_CACHE.get(key)
        if cached is None:
            cached = self.aux_factory(n)
            cached.setflags(write=False)
            _AUX_CACHE[key] = cached
        return cached

    def evaluate(self, z) -> float:
        z = np.asarray(z, dtype=float)
        if z.ndim != 1 or z.size < 2:
            raise ValueError(f"{self.name}: expected a vector of length >= 2")
        return self.formula(z, self.aux(z.size))


_AUX_CACHE: dict[tuple[int, int], np.ndarray] = {}

RAW_FUNCTIONS: tuple[RawFunction, ...] = (
    RawFunction(1, "sphere", SUBGROUP_SEPARABLE, False, _sphere),
    RawFunction(2, "ellipsoid", SUBGROUP_SEPARABLE, False, _ellipsoid,
                aux_factory=_ellipsoid_weights),
    RawFunction(3, "rastrigin", SUBGROUP_MULTI_MODAL, True, _rastrigin),
    RawFunction(4, "linear-slope", SUBGROUP_SEPARABLE, False, _linear_slope,
                optimum_coordinate=SLOPE_EDGE, boundary_optimum=True,
                aux_factory=_slope_weights),
    RawFunction(5, "rosenbrock", SUBGROUP_MODERATE, False, _rosenbrock,
                optimum_coordinate=1.0),
    RawFunction(6, "discus", SUBGROUP_ILL_CONDITIONED, True, _discus),
    RawFunction(7, "bent-cigar", SUBGROUP_ILL_CONDITIONED, True, _bent_cigar),
    RawFunction(8, "schaffers-f7", SUBGROUP_MULTI_MODAL, True, _schaffers_f7),
)

_BY_ID = {f.function_id: f for f in RAW_FUNCTIONS}


def raw_function_registry() -> list[RawFunction]:
    """All built-in raw functions, ordered by id."""
    return list(RAW_FUNCTIONS)


def get_raw_function(function_id: int) -> RawFunction:
    try:
        return _BY_ID[function_id]
    except KeyError:
        raise ValueError(f"unknown function id {function_id}") from None
