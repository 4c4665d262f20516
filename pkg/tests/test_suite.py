import numpy as np
import pytest

from blackbench.suite import (
    Problem,
    ProblemDescriptor,
    Suite,
    SuiteSpec,
    index_to_triple,
    registered_suites,
    suite_create,
    triple_to_index,
)


def small_spec():
    return SuiteSpec("custom", (1, 2, 3), (2, 3), (1, 2, 3, 4, 5))


class TestBijection:
    def test_first_index(self):
        assert index_to_triple(small_spec(), 0) == (2, 1, 1)

    def test_last_index(self):
        assert index_to_triple(small_spec(), 29) == (3, 3, 5)

    def test_index_17_round_trips(self):
        spec = small_spec()
        n, i, j = index_to_triple(spec, 17)
        assert triple_to_index(spec, n, i, j) == 17

    def test_exhaustive_round_trip_small_spec(self):
        spec = small_spec()
        seen = []
        for idx in range(spec.problem_count):
            n, i, j = index_to_triple(spec, idx)
            assert triple_to_index(spec, n, i, j) == idx
            seen.append((n, i, j))
        assert len(set(seen)) == 30

    def test_exhaustive_round_trip_bbob_lite(self):
        spec = registered_suites()["bbob-lite"]
        assert spec.problem_count == 160
        for idx in range(160):
            n, i, j = index_to_triple(spec, idx)
            assert triple_to_index(spec, n, i, j) == idx

    def test_ordering_dimensions_outermost(self):
        spec = small_spec()
        triples = [index_to_triple(spec, idx) for idx in range(spec.problem_count)]
        dims = [t[0] for t in triples]
        assert dims == sorted(dims)
        # within the first dimension, functions change before instances wrap
        assert triples[:6] == [(2, 1, 1), (2, 1, 2), (2, 1, 3), (2, 1, 4), (2, 1, 5), (2, 2, 1)]

    def test_out_of_range(self):
        spec = small_spec()
        with pytest.raises(ValueError):
            index_to_triple(spec, 30)
        with pytest.raises(ValueError):
            index_to_triple(spec, -1)
        with pytest.raises(ValueError):
            triple_to_index(spec, 4, 1, 1)


class TestSpecValidation:
    def test_rejects_empty_axis(self):
        with pytest.raises(ValueError):
            SuiteSpec("x", (), (2,), (1,))

    def test_rejects_unsorted(self):
        with pytest.raises(ValueError):
            SuiteSpec("x", (2, 1), (2,), (1,))

    def test_rejects_duplicates(self):
        with pytest.raises(ValueError):
            SuiteSpec("x", (1, 1), (2,), (1,))

    def test_rejects_dimension_below_two(self):
        with pytest.raises(ValueError):
            SuiteSpec("x", (1,), (1, 2), (1,))


class TestSuiteCreate:
    def test_default_bbob_lite_has_160_problems(self):
        assert len(suite_create("bbob-lite")) == 160

    def test_filtered_suite(self):
        suite = suite_create("bbob-lite", dimensions=[2], instances=[1])
        assert len(suite) == 8
        indices = [p.descriptor.suite_index for p in suite]
        assert indices == list(range(8))

    def test_unknown_suite(self):
        with pytest.raises(ValueError, match="unknown suite"):
            suite_create("nosuch")

    def test_filter_not_subset(self):
        with pytest.raises(ValueError, match="not in suite defaults"):
            suite_create("bbob-lite", dimensions=[2, 4])

    def test_empty_filter(self):
        with pytest.raises(ValueError):
            suite_create("bbob-lite", dimensions=[])

    def test_iteration_yields_consecutive_indices(self):
        suite = suite_create("bbob-lite", dimensions=[2, 3], instances=[1, 2])
        indices = [p.descriptor.suite_index for p in suite]
        assert indices == list(range(32))


class TestProblem:
    def test_evaluation_counting(self):
        problem = suite_create("bbob-lite")[0]
        x = problem.initial_solution
        for k in range(1, 8):
            problem.evaluate(x)
            assert problem.evaluations == k

    def test_best_offset_monotone(self):
        problem = suite_create("bbob-lite", dimensions=[3], instances=[2])[2]
        rng = np.random.default_rng(5)
        best = np.inf
        for _ in range(50):
            problem.evaluate(rng.uniform(-5, 5, 3))
            assert problem.best_observed_offset <= best
            best = problem.best_observed_offset

    def test_best_offset_nonnegative_up_to_roundoff(self):
        for problem in suite_create("bbob-lite", dimensions=[2], instances=[1]):
            rng = np.random.default_rng(problem.function_id)
            for _ in range(100):
                problem.evaluate(rng.uniform(-5, 5, 2))
            assert problem.best_observed_offset >= -1e-10

    def test_optimum_consistency_exact(self):
        for problem in suite_create("bbob-lite", dimensions=[2, 5], instances=[1, 4]):
            f = problem.evaluate(problem._transform.shift)
            assert f == problem.optimum_value
            assert problem.best_observed_offset == 0.0
            assert problem.final_target_hit

    def test_two_suites_agree_bit_identically(self):
        a = suite_create("bbob-lite", dimensions=[5], instances=[3])
        b = suite_create("bbob-lite", dimensions=[5], instances=[3])
        rng = np.random.default_rng(9)
        for pa, pb in zip(a, b):
            x = rng.uniform(-5, 5, 5)
            assert pa.evaluate(x) == pb.evaluate(x)

    def test_bounds_and_initial_solution(self):
        problem = suite_create("bbob-lite")[42]
        n = problem.dimension
        assert (problem.lower_bounds == -5.0).all()
        assert (problem.upper_bounds == 5.0).all()
        assert (problem.lower_bounds < problem.upper_bounds).all()
        assert problem.initial_solution.tolist() == [0.0] * n
        assert problem.final_target_offset == 1e-8

    def test_out_of_bounds_input_is_permitted(self):
        problem = suite_create("bbob-lite")[0]
        value = problem.evaluate([17.0, -22.0])
        assert np.isfinite(value)

    def test_dimension_mismatch(self):
        problem = suite_create("bbob-lite")[0]
        with pytest.raises(ValueError, match="length 2"):
            problem.evaluate([1.0, 2.0, 3.0])

    def test_non_finite_input(self):
        problem = suite_create("bbob-lite")[0]
        with pytest.raises(ValueError, match="non-finite"):
            problem.evaluate([np.nan, 0.0])
        with pytest.raises(ValueError, match="non-finite"):
            problem.evaluate([np.inf, 0.0])

    def test_problem_is_callable(self):
        problem = suite_create("bbob-lite")[0]
        assert problem(problem.initial_solution) == problem.evaluate(
            problem.initial_solution
        )

    def test_fresh_problem_state(self):
        suite = suite_create("bbob-lite")
        first = suite[0]
        first.evaluate(first.initial_solution)
        again = suite[0]
        assert again.evaluations == 0
        assert again.best_observed_offset == np.inf

    def test_transform_not_on_public_surface(self):
        problem = suite_create("bbob-lite")[0]
        assert not hasattr(problem, "transform")

    def test_standalone_problem_regenerates_transform(self):
        spec = registered_suites()["bbob-lite"]
        descriptor = ProblemDescriptor(1, 2, 1, 0)
        a = Problem(descriptor, "bbob-lite", spec)
        b = suite_create("bbob-lite")[0]
        x = np.array([1.25, -3.5])
        assert a.evaluate(x) == b.evaluate(x)
