"""Pure-numpy evaluation kernel, the fallback when the extension is absent.

Same call contract as `blackbench._kernels`: `make_evaluator` returns a
callable mapping a C-contiguous float64 vector to the raw (pre-offset)
function value.
"""

from __future__ import annotations

from typing import Callable, Optional

import numpy as np

from .functions import RawFunction, get_raw_function


def make_evaluator(
    function_id: int,
    shift: np.ndarray,
    rotation: Optional[np.ndarray],
    raw_shift: float,
    aux: Optional[np.ndarray],
) -> Callable[[np.ndarray], float]:
    formula = get_raw_function(function_id).formula

    if rotation is None and raw_shift == 0.0:
        def evaluator(x: np.ndarray) -> float:
            return formula(x - shift, aux)
    elif rotation is None:
        def evaluator(x: np.ndarray) -> float:
            return formula((x - shift) + raw_shift, aux)
    else:
        def evaluator(x: np.ndarray) -> float:
            z = rotation @ (x - shift)
            if raw_shift != 0.0:
                z += raw_shift
            return formula(z, aux)

    return evaluator


def raw_reference(function_id: int, z: np.ndarray) -> float:
    """Raw formula without any instancing; used by parity tests."""
    raw: RawFunction = get_raw_function(function_id)
    return raw.evaluate(z)
