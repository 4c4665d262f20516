"""Suites: instanced problems over a (function, dimension, instance) grid.

The flat suite index enumerates dimensions outermost, then functions,
then instances, all ascending; `triple_to_index`/`index_to_triple` are
inverse bijections over that order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import numpy as np

from . import backend
from .functions import get_raw_function, raw_function_registry
from .transforms import InstanceTransform, make_transform

LOWER_BOUND = -5.0
UPPER_BOUND = 5.0
FINAL_TARGET_OFFSET = 1e-8


def _check_axis(name: str, values: tuple[int, ...], minimum: int) -> None:
    if not values:
        raise ValueError(f"{name} must be non-empty")
    if any(v < minimum for v in values):
        raise ValueError(f"{name} must all be >= {minimum}, got {values}")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise ValueError(f"{name} must be strictly increasing, got {values}")


@dataclass(frozen=True)
class SuiteSpec:
    """The (function, dimension, instance) grid a suite enumerates."""

    name: str
    function_ids: tuple[int, ...]
    dimensions: tuple[int, ...]
    instance_ids: tuple[int, ...]

    def __post_init__(self):
        _check_axis("function_ids", self.function_ids, 1)
        _check_axis("dimensions", self.dimensions, 2)
        _check_axis("instance_ids", self.instance_ids, 1)

    @property
    def problem_count(self) -> int:
        return len(self.function_ids) * len(self.dimensions) * len(self.instance_ids)


@dataclass(frozen=True)
class ProblemDescriptor:
    function_id: int
    dimension: int
    instance_id: int
    suite_index: int


def triple_to_index(spec: SuiteSpec, dimension: int, function_id: int, instance_id: int) -> int:
    try:
        d = spec.dimensions.index(dimension)
        f = spec.function_ids.index(function_id)
        j = spec.instance_ids.index(instance_id)
    except ValueError:
        raise ValueError(
            f"triple (n={dimension}, i={function_id}, j={instance_id}) "
            f"is not in suite {spec.name!r}"
        ) from None
    return (d * len(spec.function_ids) + f) * len(spec.instance_ids) + j


def index_to_triple(spec: SuiteSpec, suite_index: int) -> tuple[int, int, int]:
    """Inverse of triple_to_index; returns (n, i, j)."""
    if not 0 <= suite_index < spec.problem_count:
        raise ValueError(
            f"suite index {suite_index} out of range [0, {spec.problem_count})"
        )
    rest, j = divmod(suite_index, len(spec.instance_ids))
    d, f = divmod(rest, len(spec.function_ids))
    return spec.dimensions[d], spec.function_ids[f], spec.instance_ids[j]


class Problem:
    """A function instance at fixed dimension, with evaluation counting.

    The instance transform is deliberately not part of the
    optimizer-facing surface; optimizers see only bounds, the initial
    point, the counter, and f-values.
    """

    def __init__(
        self,
        descriptor: ProblemDescriptor,
        suite_name: str,
        suite_spec: SuiteSpec,
        transform: Optional[InstanceTransform] = None,
    ):
        if transform is None:
            transform = make_transform(
                suite_name, descriptor.function_id, descriptor.dimension,
                descriptor.instance_id,
            )
        self.descriptor = descriptor
        self.suite_name = suite_name
        self.suite_spec = suite_spec
        self._transform = transform
        self._raw = get_raw_function(descriptor.function_id)
        self._evaluator = backend.make_evaluator(
            descriptor.function_id, transform.shift, transform.rotation
        )
        n = descriptor.dimension
        self._lower = np.full(n, LOWER_BOUND)
        self._upper = np.full(n, UPPER_BOUND)
        self._lower.setflags(write=False)
        self._upper.setflags(write=False)
        self._evaluations = 0
        self._best_offset = math.inf

    @property
    def dimension(self) -> int:
        return self.descriptor.dimension

    @property
    def function_id(self) -> int:
        return self.descriptor.function_id

    @property
    def instance_id(self) -> int:
        return self.descriptor.instance_id

    @property
    def name(self) -> str:
        d = self.descriptor
        return f"{self.suite_name}_f{d.function_id}_d{d.dimension}_i{d.instance_id}"

    @property
    def lower_bounds(self) -> np.ndarray:
        return self._lower

    @property
    def upper_bounds(self) -> np.ndarray:
        return self._upper

    @property
    def initial_solution(self) -> np.ndarray:
        return np.zeros(self.dimension)

    @property
    def evaluations(self) -> int:
        return self._evaluations

    @property
    def best_observed_offset(self) -> float:
        return self._best_offset

    @property
    def final_target_offset(self) -> float:
        return FINAL_TARGET_OFFSET

    @property
    def final_target_hit(self) -> bool:
        return self._best_offset <= FINAL_TARGET_OFFSET

    @property
    def optimum_value(self) -> float:
        return self._transform.f_offset

    def evaluate(self, x) -> float:
        x = np.ascontiguousarray(x, dtype=float)
        if x.ndim != 1 or x.shape[0] != self.dimension:
            raise ValueError(
                f"{self.name}: expected a vector of length {self.dimension}"
            )
        if not np.isfinite(x).all():
            raise ValueError(f"{self.name}: non-finite input")
        offset = self._evaluator(x)
        self._evaluations += 1
        if offset < self._best_offset:
            self._best_offset = offset
        return self._transform.f_offset + offset

    __call__ = evaluate

    def __repr__(self):
        return f"Problem({self.name}, evaluations={self._evaluations})"


_DEFAULT_SPECS: dict[str, SuiteSpec] = {
    "bbob-lite": SuiteSpec(
        name="bbob-lite",
        function_ids=tuple(f.function_id for f in raw_function_registry()),
        dimensions=(2, 3, 5, 10),
        instance_ids=(1, 2, 3, 4, 5),
    ),
}


def registered_suites() -> dict[str, SuiteSpec]:
    return dict(_DEFAULT_SPECS)


def _filter_axis(name: str, defaults: tuple[int, ...], chosen) -> tuple[int, ...]:
    if chosen is None:
        return defaults
    values = tuple(sorted(set(int(v) for v in chosen)))
    if not values:
        raise ValueError(f"{name} filter selects no values")
    extra = [v for v in values if v not in defaults]
    if extra:
        raise ValueError(f"{name} filter {extra} not in suite defaults {defaults}")
    return values


class Suite:
    """Enumerable problem collection; indexing yields fresh problems.

    Transforms are cached per triple, so repeated iteration is cheap and
    two suites built with the same arguments evaluate bit-identically.
    """

    def __init__(
        self,
        name: str,
        dimensions: Optional[Sequence[int]] = None,
        instances: Optional[Sequence[int]] = None,
    ):
        try:
            base = _DEFAULT_SPECS[name]
        except KeyError:
            known = ", ".join(sorted(_DEFAULT_SPECS))
            raise ValueError(f"unknown suite {name!r} (registered: {known})") from None
        self.spec = SuiteSpec(
            name=base.name,
            function_ids=base.function_ids,
            dimensions=_filter_axis("dimensions", base.dimensions, dimensions),
            instance_ids=_filter_axis("instances", base.instance_ids, instances),
        )
        self._transforms: dict[tuple[int, int, int], InstanceTransform] = {}

    @property
    def name(self) -> str:
        return self.spec.name

    def __len__(self) -> int:
        return self.spec.problem_count

    def problem(self, suite_index: int) -> Problem:
        n, i, j = index_to_triple(self.spec, suite_index)
        key = (i, n, j)
        transform = self._transforms.get(key)
        if transform is None:
            transform = make_transform(self.name, i, n, j)
            self._transforms[key] = transform
        descriptor = ProblemDescriptor(
            function_id=i, dimension=n, instance_id=j, suite_index=suite_index
        )
        return Problem(descriptor, self.name, self.spec, transform)

    def __getitem__(self, suite_index: int) -> Problem:
        return self.problem(suite_index)

    def __iter__(self) -> Iterator[Problem]:
        for idx in range(len(self)):
            yield self.problem(idx)


def suite_create(
    name: str,
    dimensions: Optional[Sequence[int]] = None,
    instances: Optional[Sequence[int]] = None,
) -> Suite:
    return Suite(name, dimensions=dimensions, instances=instances)
