import math

import numpy as np
import pytest

from blackbench.functions import get_raw_function, raw_function_registry


def test_registry_has_eight_functions_with_consecutive_ids():
    registry = raw_function_registry()
    assert len(registry) == 8
    assert [f.function_id for f in registry] == list(range(1, 9))


def test_registry_covers_four_subgroups():
    subgroups = {f.subgroup for f in raw_function_registry()}
    assert subgroups == {"separable", "moderate", "ill-conditioned", "multi-modal"}


def test_rotation_flags():
    flags = {f.name: f.rotated for f in raw_function_registry()}
    assert flags == {
        "sphere": False,
        "ellipsoid": False,
        "rastrigin": True,
        "linear-slope": False,
        "rosenbrock": False,
        "discus": True,
        "bent-cigar": True,
        "schaffers-f7": True,
    }


def test_every_raw_optimum_evaluates_to_zero():
    for raw in raw_function_registry():
        for n in (2, 3, 5, 10):
            assert raw.evaluate(raw.raw_optimum(n)) == 0.0


def test_sphere_values():
    sphere = get_raw_function(1)
    assert sphere.evaluate([0.0, 0.0, 0.0]) == 0.0
    assert sphere.evaluate([1.0, 2.0]) == 5.0


def test_ellipsoid_condition_1e6():
    ellipsoid = get_raw_function(2)
    # n=2: weights are 10^0 and 10^6
    assert ellipsoid.evaluate([1.0, 1.0]) == 1000001.0
    # n=3: middle weight is 10^3
    assert ellipsoid.evaluate([1.0, 1.0, 1.0]) == 1.0 + 10.0**3 + 10.0**6


def test_rastrigin_oracle_values():
    rastrigin = get_raw_function(3)
    assert rastrigin.evaluate([0.0, 0.0]) == 0.0

    def oracle(z):
        return 10.0 * (len(z) - sum(math.cos(2 * math.pi * v) for v in z)) + sum(
            v * v for v in z
        )

    assert rastrigin.evaluate([0.5, 0.0]) == pytest.approx(oracle([0.5, 0.0]))
    assert rastrigin.evaluate([0.5, 0.0]) == pytest.approx(20.25)
    z = [0.3, -1.2, 0.7]
    assert rastrigin.evaluate(z) == pytest.approx(oracle(z), rel=1e-13)


def test_linear_slope_vertex_and_interior():
    slope = get_raw_function(4)
    n = 3
    assert slope.evaluate(slope.raw_optimum(n)) == 0.0
    # strictly positive anywhere inside the box
    assert slope.evaluate([4.9, 4.9, 4.9]) > 0.0
    # flat beyond the edge
    assert slope.evaluate([6.0, 7.0, 8.0]) == 0.0

    def oracle(z):
        out = 0.0
        for k, v in enumerate(z):
            s = 10.0 ** (k / (len(z) - 1))
            out += s * (5.0 - min(v, 5.0))
        return out

    z = [1.0, -2.0, 4.0]
    assert slope.evaluate(z) == pytest.approx(oracle(z), rel=1e-13)


def test_rosenbrock_minimum_at_ones():
    rosenbrock = get_raw_function(5)
    for n in (2, 5, 11):
        assert rosenbrock.evaluate(np.ones(n)) == 0.0
    # classic value at the origin: sum over n-1 terms of 100*0 + 1
    assert rosenbrock.evaluate(np.zeros(4)) == 3.0
    assert rosenbrock.evaluate([-1.0, 1.0]) == 4.0


def test_discus_and_bent_cigar():
    discus = get_raw_function(6)
    cigar = get_raw_function(7)
    assert discus.evaluate([1.0, 1.0]) == 1e6 + 1.0
    assert discus.evaluate([0.0, 2.0, 3.0]) == 13.0
    assert cigar.evaluate([1.0, 1.0]) == 1.0 + 1e6
    assert cigar.evaluate([2.0, 0.0, 0.0]) == 4.0


def test_schaffers_f7_oracle():
    schaffers = get_raw_function(8)
    assert schaffers.evaluate([0.0, 0.0, 0.0]) == 0.0

    def oracle(z):
        total = 0.0
        for a, b in zip(z[:-1], z[1:]):
            s = math.sqrt(a * a + b * b)
            total += math.sqrt(s) * (1.0 + math.sin(50.0 * s**0.2) ** 2)
        mean = total / (len(z) - 1)
        return mean * mean

    for z in ([1.0, 2.0], [0.5, -0.25, 3.0, 1.0]):
        assert schaffers.evaluate(z) == pytest.approx(oracle(z), rel=1e-13)


def test_scalability_all_functions_n_2_to_40():
    rng = np.random.default_rng(0)
    for raw in raw_function_registry():
        for n in range(2, 41):
            value = raw.evaluate(rng.uniform(-5, 5, n))
            assert math.isfinite(value)
            assert value >= 0.0 or abs(value) < 1e-10


def test_determinism_bit_identical():
    rng = np.random.default_rng(1)
    for raw in raw_function_registry():
        z = rng.uniform(-5, 5, 7)
        assert raw.evaluate(z) == raw.evaluate(z.copy())


def test_unknown_function_id():
    with pytest.raises(ValueError):
        get_raw_function(99)


def test_rejects_scalar_and_short_input():
    sphere = get_raw_function(1)
    with pytest.raises(ValueError):
        sphere.evaluate([1.0])
    with pytest.raises(ValueError):
        sphere.evaluate(3.0)
