"""Post-processing: runtimes against targets, restarts bootstrap, ECDFs.

A RunLog turns into one RuntimeRecord per target: the first-hit
evaluation count, or the consumed budget when the run never reached the
target. Unsolved records can be filled by simulated restarts (drawing
instances with replacement until a solved one comes up, summing the
budgets along the way). Curves and averages never pool across
dimensions.
"""

from __future__ import annotations

import math
import struct
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from typing import Optional, Sequence

from .functions import get_raw_function
from .observer import RunLog
from .rng import SplitMix64, derive_seed, fnv1a64
from .suite import ProblemDescriptor

ECDF_POINTS_PER_DECADE = 20

GROUPINGS = ("function", "subgroup", "suite")


@dataclass(frozen=True)
class TargetSet:
    """Strictly decreasing positive target offsets."""

    offsets: tuple[float, ...]

    def __post_init__(self):
        if not self.offsets:
            raise ValueError("target set must be non-empty")
        if any(t <= 0 for t in self.offsets):
            raise ValueError("target offsets must be positive")
        if any(b >= a for a, b in zip(self.offsets, self.offsets[1:])):
            raise ValueError("target offsets must strictly decrease")

    @classmethod
    def default(cls) -> "TargetSet":
        # 51 log-spaced offsets, 5 per decade, 1e2 down to 1e-8
        return cls(tuple(10.0 ** ((10 - k) / 5.0) for k in range(51)))

    def __iter__(self):
        return iter(self.offsets)

    def __len__(self):
        return len(self.offsets)


@dataclass(frozen=True)
class RuntimeRecord:
    """Outcome of one run against one target.

    runtime is None for an unsolved record; budget_used is then the
    lower bound the run established. Simulated records keep
    budget_used == runtime (the whole chain was "spent").
    """

    descriptor: ProblemDescriptor
    target_offset: float
    runtime: Optional[int]
    budget_used: int
    simulated: bool = False

    def __post_init__(self):
        if self.runtime is not None:
            if self.runtime < 1:
                raise ValueError("runtime must be a positive evaluation count")
            if self.runtime > self.budget_used:
                raise ValueError("runtime cannot exceed budget_used")
        if self.budget_used < 0:
            raise ValueError("budget_used must be nonnegative")

    @property
    def success(self) -> bool:
        return self.runtime is not None


def extract_runtimes(logs: Sequence[RunLog], targets: TargetSet) -> list[RuntimeRecord]:
    """First-hit runtime of every log against every target."""
    records: list[RuntimeRecord] = []
    for runlog in logs:
        evals = [e for e, _ in runlog.events]
        # offsets strictly decrease; search their negation ascending
        negated = [-offset for _, offset in runlog.events]
        for target in targets:
            pos = bisect_left(negated, -target)
            if pos < len(evals):
                records.append(RuntimeRecord(runlog.descriptor, target,
                                             evals[pos], runlog.budget_used))
            else:
                records.append(RuntimeRecord(runlog.descriptor, target,
                                             None, runlog.budget_used))
    return records


def simulated_restarts(records: Sequence[RuntimeRecord], rng: SplitMix64,
                       trigger: RuntimeRecord) -> int:
    """Bootstrap a runtime for one unsolved record.

    Draws uniformly with replacement over the pooled instance records,
    accumulating failure budgets, until a solved record is drawn; its
    runtime closes the chain.
    """
    if trigger.success:
        raise ValueError("trigger record is already solved")
    if not any(r.success for r in records):
        raise ValueError("simulated restarts need at least one solved instance")
    total = trigger.budget_used
    while True:
        drawn = records[rng.randbelow(len(records))]
        if drawn.success:
            return total + drawn.runtime
        total += drawn.budget_used


def _pool_key(record: RuntimeRecord) -> tuple[int, int, float]:
    d = record.descriptor
    return (d.function_id, d.dimension, record.target_offset)


def _fill_seed(report_seed: int, record: RuntimeRecord) -> int:
    # order-independent substream per (i, n, target, j)
    d = record.descriptor
    target_bits = fnv1a64(struct.pack(">d", record.target_offset))
    seed = derive_seed(report_seed, d.function_id)
    seed = derive_seed(seed, d.dimension)
    seed = derive_seed(seed, target_bits & 0x7FFFFFFF)
    return derive_seed(seed, d.instance_id)


def fill_simulated(records: Sequence[RuntimeRecord], report_seed: int) -> list[RuntimeRecord]:
    """Replace fillable failures with one simulated restart chain each.

    A failure is fillable when its (function, dimension, target) pool
    has at least one success; others pass through unchanged. Output
    order mirrors the input.
    """
    pools: dict[tuple[int, int, float], list[RuntimeRecord]] = {}
    for record in records:
        pools.setdefault(_pool_key(record), []).append(record)
    for pool in pools.values():
        # canonical draw order, so fills do not depend on input order
        pool.sort(key=lambda r: (r.descriptor.instance_id, r.budget_used,
                                 r.runtime if r.success else -1))

    filled: list[RuntimeRecord] = []
    for record in records:
        pool = pools[_pool_key(record)]
        if record.success or not any(r.success for r in pool):
            filled.append(record)
            continue
        rng = SplitMix64(_fill_seed(report_seed, record))
        runtime = simulated_restarts(pool, rng, record)
        filled.append(RuntimeRecord(record.descriptor, record.target_offset,
                                    runtime, runtime, simulated=True))
    return filled


@dataclass(frozen=True)
class EcdfCurve:
    """Proportion of records solved within a per-dimension budget."""

    budgets: tuple[float, ...]
    proportions: tuple[float, ...]

    def __post_init__(self):
        if len(self.budgets) != len(self.proportions):
            raise ValueError("budgets and proportions must align")
        if not self.budgets:
            raise ValueError("curve must have at least one point")
        if any(b <= 0 for b in self.budgets):
            raise ValueError("budgets must be positive")
        if any(b2 <= b1 for b1, b2 in zip(self.budgets, self.budgets[1:])):
            raise ValueError("budgets must strictly increase")
        if any(not 0.0 <= p <= 1.0 for p in self.proportions):
            raise ValueError("proportions must lie in [0, 1]")
        if any(p2 < p1 for p1, p2 in zip(self.proportions, self.proportions[1:])):
            raise ValueError("proportions must be non-decreasing")

    @property
    def final_proportion(self) -> float:
        return self.proportions[-1]


def _auto_budget_grid(normalized: list[float]) -> list[float]:
    lo = math.log10(normalized[0])
    hi = math.log10(normalized[-1])
    if hi <= lo:
        return [normalized[-1]]
    count = max(2, math.ceil((hi - lo) * ECDF_POINTS_PER_DECADE) + 1)
    grid = [10.0 ** (lo + (hi - lo) * k / (count - 1)) for k in range(count)]
    grid[0] = normalized[0]
    grid[-1] = normalized[-1]  # exact endpoint: final proportion counts every success
    return grid


def ecdf(records: Sequence[RuntimeRecord],
         budgets: Optional[Sequence[float]] = None) -> EcdfCurve:
    """ECDF of runtime/dimension over a record pool of one dimension."""
    if not records:
        raise ValueError("cannot build an ECDF from an empty record list")
    dimensions = {r.descriptor.dimension for r in records}
    if len(dimensions) != 1:
        raise ValueError(f"records mix dimensions {sorted(dimensions)}")
    n = dimensions.pop()
    normalized = sorted(r.runtime / n for r in records if r.success)
    if budgets is None:
        if not normalized:
            return EcdfCurve(budgets=(1.0,), proportions=(0.0,))
        budgets = _auto_budget_grid(normalized)
    budgets = [float(b) for b in budgets]
    total = len(records)
    proportions = tuple(bisect_right(normalized, b) / total for b in budgets)
    return EcdfCurve(budgets=tuple(budgets), proportions=proportions)


@dataclass(frozen=True)
class AggregateStats:
    """Success counts and runtime averages over a record pool."""

    success_count: int
    record_count: int
    arithmetic_mean_runtime: Optional[float]
    geometric_mean_runtime: Optional[float]
    expected_runtime: float


def averages(records: Sequence[RuntimeRecord]) -> AggregateStats:
    """Arithmetic/geometric means over successes and the ERT estimator.

    ERT spends every evaluation (success runtimes plus failure budgets)
    and divides by the success count; with no success it is infinite and
    the means are undefined.
    """
    if not records:
        raise ValueError("cannot aggregate an empty record list")
    runtimes = [r.runtime for r in records if r.success]
    total_evals = sum(r.runtime if r.success else r.budget_used for r in records)
    if runtimes:
        arith = sum(runtimes) / len(runtimes)
        # 10**mean(log10) rather than exp(mean(ln)): exact on decade values
        geo = 10.0 ** (sum(math.log10(rt) for rt in runtimes) / len(runtimes))
        ert = total_evals / len(runtimes)
    else:
        arith = None
        geo = None
        ert = math.inf
    return AggregateStats(
        success_count=len(runtimes),
        record_count=len(records),
        arithmetic_mean_runtime=arith,
        geometric_mean_runtime=geo,
        expected_runtime=ert,
    )


@dataclass(frozen=True)
class GroupResult:
    """One aggregation group at one dimension."""

    grouping: str
    key: str
    dimension: int
    records: tuple[RuntimeRecord, ...]
    curve: EcdfCurve
    stats: AggregateStats


def _group_key(grouping: str, record: RuntimeRecord) -> tuple:
    fid = record.descriptor.function_id
    if grouping == "function":
        return (fid, f"f{fid}")
    if grouping == "subgroup":
        label = get_raw_function(fid).subgroup
        return (label, label)
    if grouping == "suite":
        return ("all", "all")
    raise ValueError(f"unknown grouping {grouping!r} (expected one of {GROUPINGS})")


def aggregate_suite(records: Sequence[RuntimeRecord], grouping: str) -> list[GroupResult]:
    """Pool records per (group, dimension); never across dimensions."""
    if not records:
        raise ValueError("cannot aggregate an empty record list")
    groups: dict[tuple[int, tuple], list[RuntimeRecord]] = {}
    for record in records:
        key = (record.descriptor.dimension, _group_key(grouping, record))
        groups.setdefault(key, []).append(record)
    results = []
    for key in sorted(groups, key=lambda k: (k[0], k[1][0])):
        dimension, (_, label) = key
        pooled = tuple(groups[key])
        results.append(GroupResult(
            grouping=grouping,
            key=label,
            dimension=dimension,
            records=pooled,
            curve=ecdf(pooled),
            stats=averages(pooled),
        ))
    return results
