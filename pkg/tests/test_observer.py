import logging

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blackbench.observer import (
    FORMAT_VERSION,
    Observer,
    ObserverConfig,
    ParseError,
    RunLog,
    parse_logs,
    quantize_offset,
    write_info,
    write_run_block,
)
from blackbench.suite import ProblemDescriptor, SuiteSpec, suite_create

SPEC = SuiteSpec("bbob-lite", tuple(range(1, 9)), (2, 3, 5, 10), (1, 2, 3, 4, 5))


def make_observer(tmp_path, name="algo", info="demo info"):
    return Observer(ObserverConfig(tmp_path / "out", name, info))


class ScriptedProblem:
    """Problem stand-in returning a scripted offset sequence."""

    def __init__(self, offsets, descriptor=None):
        self._offsets = list(offsets)
        self._pos = 0
        self._best = np.inf
        self.descriptor = descriptor or ProblemDescriptor(1, 2, 1, 0)
        self.suite_name = "bbob-lite"
        self.suite_spec = SPEC
        self.final_target_offset = 1e-8

    @property
    def name(self):
        return "scripted"

    @property
    def dimension(self):
        return self.descriptor.dimension

    @property
    def evaluations(self):
        return self._pos

    @property
    def best_observed_offset(self):
        return self._best

    @property
    def final_target_hit(self):
        return self._best <= self.final_target_offset

    def evaluate(self, x):
        offset = self._offsets[self._pos]
        self._pos += 1
        self._best = min(self._best, offset)
        return 10.0 + offset


class TestRunLogInvariants:
    def test_valid(self):
        RunLog(ProblemDescriptor(1, 2, 1, 0), ((1, 5.0), (3, 0.9)), 10)

    def test_rejects_non_increasing_evals(self):
        with pytest.raises(ValueError):
            RunLog(ProblemDescriptor(1, 2, 1, 0), ((3, 5.0), (3, 0.9)), 10)

    def test_rejects_non_decreasing_offsets(self):
        with pytest.raises(ValueError):
            RunLog(ProblemDescriptor(1, 2, 1, 0), ((1, 5.0), (2, 5.0)), 10)

    def test_rejects_budget_below_last_event(self):
        with pytest.raises(ValueError):
            RunLog(ProblemDescriptor(1, 2, 1, 0), ((1, 5.0), (9, 0.9)), 8)


class TestImprovementTrigger:
    def test_events_only_on_strict_improvement(self, tmp_path):
        observer = make_observer(tmp_path)
        problem = ScriptedProblem([5.0, 7.0, 0.9])
        wrapper = observer.observe(problem)
        for _ in range(3):
            wrapper.evaluate(None)
        runlog = wrapper.finalize()
        assert [e for e, _ in runlog.events] == [1, 3]
        assert runlog.budget_used == 3

    def test_zero_evaluations(self, tmp_path):
        observer = make_observer(tmp_path)
        wrapper = observer.observe(ScriptedProblem([]))
        runlog = wrapper.finalize()
        assert runlog.events == ()
        assert runlog.budget_used == 0
        assert (observer.folder / "suite.info").is_file()
        logs = parse_logs(observer.folder)
        assert logs == [runlog]

    def test_pass_through_values_and_counter(self, tmp_path):
        observer = make_observer(tmp_path)
        problem = suite_create("bbob-lite")[3]
        wrapper = observer.observe(problem)
        x = problem.initial_solution
        assert wrapper.evaluate(x) == problem._transform.f_offset + problem.best_observed_offset
        assert wrapper.evaluations == problem.evaluations == 1

    def test_log_size_tracks_improvements_not_evaluations(self, tmp_path):
        observer = make_observer(tmp_path)
        # 1 improvement then 500 flat evaluations
        problem = ScriptedProblem([1.0] + [2.0] * 500)
        wrapper = observer.observe(problem)
        for _ in range(501):
            wrapper.evaluate(None)
        runlog = wrapper.finalize()
        assert len(runlog.events) == 1
        assert runlog.budget_used == 501

    def test_double_observe_same_live_problem_rejected(self, tmp_path):
        observer = make_observer(tmp_path)
        problem = ScriptedProblem([1.0])
        observer.observe(problem)
        with pytest.raises(ValueError, match="already observed"):
            observer.observe(problem)

    def test_reobserve_same_descriptor_finalizes_previous(self, tmp_path):
        observer = make_observer(tmp_path)
        first = ScriptedProblem([3.0])
        wrapper = observer.observe(first)
        wrapper.evaluate(None)
        observer.observe(ScriptedProblem([2.0]))
        assert len(observer.runlogs) == 1
        assert observer.runlogs[0].budget_used == 1

    def test_evaluate_after_finalize_rejected(self, tmp_path):
        observer = make_observer(tmp_path)
        wrapper = observer.observe(ScriptedProblem([1.0]))
        wrapper.finalize()
        with pytest.raises(ValueError, match="finalize"):
            wrapper.evaluate(None)


class TestFolderHandling:
    def test_folder_created(self, tmp_path):
        observer = make_observer(tmp_path)
        assert observer.folder.is_dir()

    def test_collision_gets_suffix(self, tmp_path):
        a = make_observer(tmp_path)
        b = make_observer(tmp_path)
        c = make_observer(tmp_path)
        assert a.folder.name == "out"
        assert b.folder.name == "out-001"
        assert c.folder.name == "out-002"


class TestRoundTrip:
    def test_known_trajectory_round_trips(self, tmp_path):
        folder = tmp_path / "data"
        folder.mkdir()
        write_info(folder, "bbob-lite", SPEC, "algo", "")
        descriptor = ProblemDescriptor(1, 2, 1, 0)
        events = ((1, 5.0), (10, 0.9), (40, 1e-3))
        write_run_block(folder, descriptor, events, 40)
        logs = parse_logs(folder)
        assert logs == [RunLog(descriptor, events, 40)]

    def test_observer_runlogs_match_parse(self, tmp_path):
        observer = make_observer(tmp_path)
        rng = np.random.default_rng(3)
        for problem in suite_create("bbob-lite", dimensions=[2], instances=[1, 2]):
            wrapper = observer.observe(problem)
            for _ in range(20):
                wrapper.evaluate(rng.uniform(-5, 5, 2))
            wrapper.finalize()
        parsed = parse_logs(observer.folder)
        assert sorted(parsed, key=lambda r: r.descriptor.suite_index) == sorted(
            observer.runlogs, key=lambda r: r.descriptor.suite_index
        )
        assert len(parsed) == 16

    @settings(max_examples=60, deadline=None)
    @given(
        data=st.lists(
            st.tuples(st.integers(1, 40), st.floats(1e-12, 1e6)),
            min_size=0, max_size=12,
        ),
        budget_extra=st.integers(0, 100),
    )
    def test_write_parse_identity_on_monotone_trajectories(self, tmp_path_factory, data, budget_extra):
        # build a strictly monotone trajectory on the %.9e value grid
        events = []
        evals = 0
        offset = None
        for step, value in data:
            evals += step
            value = quantize_offset(value)
            if offset is None or value < offset:
                offset = value
                events.append((evals, offset))
        budget = evals + budget_extra
        descriptor = ProblemDescriptor(3, 5, 2, 0)
        spec = SuiteSpec("bbob-lite", (3,), (5,), (2,))
        folder = tmp_path_factory.mktemp("roundtrip")
        write_info(folder, "bbob-lite", spec, "algo", "")
        write_run_block(folder, descriptor, events, budget)
        (parsed,) = parse_logs(folder)
        assert parsed.descriptor == descriptor
        assert parsed.events == tuple(events)
        assert parsed.budget_used == budget

    def test_filtered_suite_indices_round_trip(self, tmp_path):
        observer = make_observer(tmp_path)
        suite = suite_create("bbob-lite", dimensions=[3, 5], instances=[2, 4])
        for problem in suite:
            wrapper = observer.observe(problem)
            wrapper.evaluate(problem.initial_solution)
            wrapper.finalize()
        parsed = parse_logs(observer.folder)
        assert [r.descriptor.suite_index for r in parsed] == list(range(32))
        assert parsed[5].descriptor == suite[5].descriptor


class TestByteIdentity:
    def run_once(self, tmp_path, tag):
        observer = Observer(ObserverConfig(tmp_path / tag, "algo", "info"))
        for problem in suite_create("bbob-lite", dimensions=[2], instances=[1]):
            wrapper = observer.observe(problem)
            rng = np.random.default_rng(problem.descriptor.suite_index)
            for _ in range(15):
                wrapper.evaluate(rng.uniform(-5, 5, 2))
            wrapper.finalize()
        return observer.folder

    def test_identical_runs_byte_identical_apart_from_timestamp(self, tmp_path):
        a = self.run_once(tmp_path, "a")
        b = self.run_once(tmp_path, "b")
        dats_a = sorted(p.name for p in a.glob("*.dat"))
        dats_b = sorted(p.name for p in b.glob("*.dat"))
        assert dats_a == dats_b and dats_a
        for name in dats_a:
            assert (a / name).read_bytes() == (b / name).read_bytes()
        info_a = [l for l in (a / "suite.info").read_text().splitlines()
                  if not l.startswith("timestamp")]
        info_b = [l for l in (b / "suite.info").read_text().splitlines()
                  if not l.startswith("timestamp")]
        assert info_a == info_b


class TestParseErrors:
    def test_missing_metadata(self, tmp_path):
        empty = tmp_path / "empty"
        empty.mkdir()
        with pytest.raises(ParseError, match="missing metadata"):
            parse_logs(empty)

    def test_version_mismatch(self, tmp_path):
        folder = tmp_path / "old"
        folder.mkdir()
        (folder / "suite.info").write_text("format_version = 99\nsuite = bbob-lite\n")
        with pytest.raises(ParseError, match="format version"):
            parse_logs(folder)

    def test_malformed_metadata_line(self, tmp_path):
        folder = tmp_path / "bad"
        folder.mkdir()
        (folder / "suite.info").write_text("format_version: 1\n")
        with pytest.raises(ParseError, match="malformed metadata"):
            parse_logs(folder)

    def test_malformed_run_header(self, tmp_path):
        folder = tmp_path / "badrun"
        folder.mkdir()
        write_info(folder, "bbob-lite", SPEC, "a", "")
        (folder / "f1_d2.dat").write_text("# run i=1 n=2\n# end budget=1\n")
        with pytest.raises(ParseError, match="malformed line"):
            parse_logs(folder)

    def test_trailing_partial_line_dropped_with_warning(self, tmp_path, caplog):
        folder = tmp_path / "partial"
        folder.mkdir()
        write_info(folder, "bbob-lite", SPEC, "a", "")
        descriptor = ProblemDescriptor(1, 2, 1, 0)
        write_run_block(folder, descriptor, ((1, 2.5),), 5)
        with open(folder / "f1_d2.dat", "a") as fh:
            fh.write("# run i=1 n=2 j=2\n17\t3.0000000")  # crashed mid-write
        with caplog.at_level(logging.WARNING):
            logs = parse_logs(folder)
        assert len(logs) == 1
        assert "dropped" in caplog.text

    def test_unterminated_final_block_dropped(self, tmp_path, caplog):
        folder = tmp_path / "crash"
        folder.mkdir()
        write_info(folder, "bbob-lite", SPEC, "a", "")
        write_run_block(folder, ProblemDescriptor(1, 2, 1, 0), ((1, 2.5),), 5)
        with open(folder / "f1_d2.dat", "a") as fh:
            fh.write("# run i=1 n=2 j=2\n17\t3.000000000e+00\n")
        with caplog.at_level(logging.WARNING):
            logs = parse_logs(folder)
        assert len(logs) == 1

    def test_info_format_version_constant(self):
        assert FORMAT_VERSION == "1"
