"""Budget-free experiment loop with independent restarts.

Each problem gets a per-problem PRNG derived from (master seed,
suite index), so results do not depend on iteration order. The first
run starts from the problem's initial solution; while the final target
is unhit and budget remains, the optimizer is restarted from a
triangular draw over the box: lower + (u1 + u2) * (upper - lower) / 2.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .observer import Observer, ObserverConfig
from .rng import SplitMix64, derive_seed
from .suite import suite_create

log = logging.getLogger(__name__)

Bounds = tuple[np.ndarray, np.ndarray]
Minimize = Callable[[Callable[[np.ndarray], float], Bounds, np.ndarray, int, SplitMix64], None]


@dataclass(frozen=True)
class Optimizer:
    """A restartable minimizer driving a black-box evaluate handle.

    minimize(evaluate, (lower, upper), x0, max_evaluations, rng) must
    return after at most max_evaluations calls to evaluate.
    """

    name: str
    minimize: Minimize


@dataclass
class ExperimentConfig:
    suite: str
    optimizer: str = "random-search"
    budget_multiplier: float = 10.0
    seed: int = 1
    result_folder: Union[str, Path] = "exdata"
    dimensions: Optional[Sequence[int]] = None
    instances: Optional[Sequence[int]] = None
    algorithm_name: Optional[str] = None
    algorithm_info: str = ""

    def __post_init__(self):
        if self.budget_multiplier < 1:
            raise ValueError("budget_multiplier must be >= 1")


def random_search(evaluate, bounds, x0, max_evaluations, rng) -> None:
    """Uniform sampling in the box; one point per evaluation.

    Ignores x0 and draws exactly dimension uniforms per point, so the
    sample stream is invariant under splitting the allowance into
    chunks.
    """
    lower, upper = bounds
    n = lower.shape[0]
    span = upper - lower
    x = np.empty(n)
    for _ in range(max_evaluations):
        for k in range(n):
            x[k] = lower[k] + rng.uniform() * span[k]
        evaluate(x)


class _AllowanceExhausted(Exception):
    pass


def nelder_mead(evaluate, bounds, x0, max_evaluations, rng) -> None:
    """Downhill simplex: reflection 1, expansion 2, contraction 0.5, shrink 0.5.

    The simplex starts at x0 with a 5%-of-range step per coordinate.
    Returns when the allowance is spent or the simplex has collapsed
    (f-spread or diameter below 1e-12), leaving restarts to the caller.
    """
    lower, upper = bounds
    n = lower.shape[0]
    used = 0

    def guarded(x: np.ndarray) -> float:
        nonlocal used
        if used >= max_evaluations:
            raise _AllowanceExhausted
        used += 1
        return evaluate(x)

    try:
        simplex = [np.array(x0, dtype=float)]
        for k in range(n):
            vertex = np.array(x0, dtype=float)
            vertex[k] += 0.05 * (upper[k] - lower[k])
            simplex.append(vertex)
        values = [guarded(v) for v in simplex]

        while True:
            order = sorted(range(n + 1), key=lambda idx: values[idx])
            simplex = [simplex[idx] for idx in order]
            values = [values[idx] for idx in order]

            f_spread = values[-1] - values[0]
            diameter = max(np.abs(v - simplex[0]).max() for v in simplex[1:])
            if f_spread < 1e-12 or diameter < 1e-12:
                return

            centroid = np.mean(simplex[:-1], axis=0)
            reflected = centroid + (centroid - simplex[-1])
            f_reflected = guarded(reflected)

            if f_reflected < values[0]:
                expanded = centroid + 2.0 * (centroid - simplex[-1])
                f_expanded = guarded(expanded)
                if f_expanded < f_reflected:
                    simplex[-1], values[-1] = expanded, f_expanded
                else:
                    simplex[-1], values[-1] = reflected, f_reflected
            elif f_reflected < values[-2]:
                simplex[-1], values[-1] = reflected, f_reflected
            else:
                contracted = centroid + 0.5 * (simplex[-1] - centroid)
                f_contracted = guarded(contracted)
                if f_contracted < values[-1]:
                    simplex[-1], values[-1] = contracted, f_contracted
                else:
                    best = simplex[0]
                    for idx in range(1, n + 1):
                        simplex[idx] = best + 0.5 * (simplex[idx] - best)
                        values[idx] = guarded(simplex[idx])
    except _AllowanceExhausted:
        return


_BUILTINS = {
    "random-search": Optimizer("random-search", random_search),
    "nelder-mead": Optimizer("nelder-mead", nelder_mead),
}


def builtin_optimizers() -> dict[str, Optimizer]:
    return dict(_BUILTINS)


def get_optimizer(name: str) -> Optimizer:
    try:
        return _BUILTINS[name]
    except KeyError:
        known = ", ".join(sorted(_BUILTINS))
        raise ValueError(f"unknown optimizer {name!r} (available: {known})") from None


def run_experiment(config: ExperimentConfig) -> Path:
    """Run the configured optimizer over the whole suite; returns the data folder."""
    suite = suite_create(config.suite, dimensions=config.dimensions,
                         instances=config.instances)
    optimizer = get_optimizer(config.optimizer)
    observer = Observer(ObserverConfig(
        result_folder=config.result_folder,
        algorithm_name=config.algorithm_name or optimizer.name,
        algorithm_info=config.algorithm_info,
    ))

    for problem in suite:
        wrapper = observer.observe(problem)
        n = problem.dimension
        cap = math.floor(n * config.budget_multiplier)
        rng = SplitMix64(derive_seed(config.seed, problem.descriptor.suite_index))
        lower, upper = problem.lower_bounds, problem.upper_bounds
        start = problem.initial_solution

        while wrapper.evaluations < cap and not wrapper.final_target_hit:
            before = wrapper.evaluations
            allowance = cap - wrapper.evaluations
            try:
                optimizer.minimize(wrapper.evaluate, (lower, upper), start,
                                   allowance, rng)
            except Exception as exc:
                message = f"{type(exc).__name__}: {exc}"
                log.warning("optimizer failed on %s: %s", problem.name, message)
                observer.record_error(problem.descriptor.suite_index, message)
                break
            if wrapper.evaluations == before:
                # optimizer refused to spend budget; restarting cannot help
                break
            if wrapper.evaluations >= cap or wrapper.final_target_hit:
                break
            u1 = rng.uniforms(n)
            u2 = rng.uniforms(n)
            start = lower + (np.array(u1) + np.array(u2)) * (upper - lower) / 2.0
        wrapper.finalize()

    observer.finalize()
    return observer.folder
