import numpy as np
import pytest

from blackbench import backend
from blackbench.transforms import make_transform

needs_compiled = pytest.mark.skipif(
    "compiled" not in backend.available_backends(),
    reason="compiled kernel not built",
)


def test_active_backend_is_listed():
    assert backend.BACKEND_NAME in backend.available_backends()


def test_kernel_module_lookup_errors():
    with pytest.raises(ValueError):
        backend.kernel_module("fortran")


@needs_compiled
@pytest.mark.parametrize("fid", range(1, 9))
@pytest.mark.parametrize("n", [2, 3, 10])
def test_backend_parity(fid, n):
    transform = make_transform("bbob-lite", fid, n, 1)
    compiled = backend.make_evaluator(
        fid, transform.shift, transform.rotation, module=backend.kernel_module("compiled")
    )
    pure = backend.make_evaluator(
        fid, transform.shift, transform.rotation, module=backend.kernel_module("python")
    )
    rng = np.random.default_rng(fid * 100 + n)
    for _ in range(200):
        x = np.ascontiguousarray(rng.uniform(-5, 5, n))
        a = compiled(x)
        b = pure(x)
        assert a == pytest.approx(b, rel=1e-12, abs=1e-12)


@needs_compiled
def test_backend_parity_at_optimum_is_exact():
    for fid in range(1, 9):
        transform = make_transform("bbob-lite", fid, 5, 2)
        compiled = backend.make_evaluator(
            fid, transform.shift, transform.rotation,
            module=backend.kernel_module("compiled"),
        )
        pure = backend.make_evaluator(
            fid, transform.shift, transform.rotation,
            module=backend.kernel_module("python"),
        )
        x_opt = np.ascontiguousarray(transform.shift)
        assert compiled(x_opt) == 0.0
        assert pure(x_opt) == 0.0


@needs_compiled
def test_compiled_rejects_wrong_length():
    transform = make_transform("bbob-lite", 1, 3, 1)
    evaluator = backend.make_evaluator(
        1, transform.shift, transform.rotation, module=backend.kernel_module("compiled")
    )
    with pytest.raises(ValueError):
        evaluator(np.zeros(4))
