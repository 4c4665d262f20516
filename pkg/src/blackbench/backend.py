"""Evaluation-kernel selection.

The compiled extension is preferred when importable; the pure-numpy
fallback keeps the package fully functional without a build step.
BLACKBENCH_BACKEND=python forces the fallback, =compiled makes a missing
extension an import error instead of a silent downgrade.

Both kernels implement the same math; summation order may differ, so
cross-backend agreement is approximate (tested at 1e-12 relative) while
each backend on its own is bit-deterministic.
"""

from __future__ import annotations

import os
from typing import Callable, Optional

import numpy as np

from . import kernels_py
from .functions import get_raw_function

_requested = os.environ.get("BLACKBENCH_BACKEND", "").strip().lower()
if _requested not in ("", "python", "compiled"):
    raise ImportError(
        f"BLACKBENCH_BACKEND={_requested!r} not understood (use 'python' or 'compiled')"
    )

_compiled = None
if _requested != "python":
    try:
        from . import _kernels as _compiled
    except ImportError:
        _compiled = None

if _requested == "compiled" and _compiled is None:
    raise ImportError(
        "BLACKBENCH_BACKEND=compiled but the blackbench._kernels extension is not built"
    )

_impl = _compiled if _compiled is not None else kernels_py
BACKEND_NAME = "compiled" if _compiled is not None else "python"


def available_backends() -> list[str]:
    names = ["python"]
    if _compiled is not None:
        names.insert(0, "compiled")
    return names


def kernel_module(name: str):
    """Explicit kernel lookup for parity tests and benchmarks."""
    if name == "python":
        return kernels_py
    if name == "compiled":
        if _compiled is None:
            raise ValueError("compiled backend is not available")
        return _compiled
    raise ValueError(f"unknown backend {name!r}")


def make_evaluator(
    function_id: int,
    shift: np.ndarray,
    rotation: Optional[np.ndarray],
    module=None,
) -> Callable[[np.ndarray], float]:
    """Build the per-problem raw-value evaluator on the active backend."""
    raw = get_raw_function(function_id)
    impl = module if module is not None else _impl
    return impl.make_evaluator(
        function_id, shift, rotation, raw.optimum_coordinate, raw.aux(shift.shape[0])
    )
