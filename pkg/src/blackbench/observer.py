"""Experiment logging: improvement trajectories in a line-based format.

Layout of a result folder:

  suite.info              key = value metadata, one experiment per folder
  f<i>_d<n>.dat           one file per (function, dimension); each run is
                          a block:  "# run i=<i> n=<n> j=<j>", one
                          "<evaluations>\\t<best_offset %.9e>" line per
                          strict improvement, "# end budget=<total>"

Offsets are stored as f(x) - f_opt. The improvement trigger compares
values after %.9e quantization so parsed trajectories keep the strictly
decreasing invariant; log size is proportional to the improvement
count, never to the evaluation count.
"""

from __future__ import annotations

import datetime as _dt
import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Union

from .suite import Problem, ProblemDescriptor, SuiteSpec, triple_to_index

log = logging.getLogger(__name__)

FORMAT_VERSION = "1"
INFO_FILENAME = "suite.info"

_RUN_HEADER = re.compile(r"^# run i=(\d+) n=(\d+) j=(\d+)$")
_RUN_END = re.compile(r"^# end budget=(\d+)$")
_EVENT = re.compile(r"^(\d+)\t(-?\d\.\d{9}e[+-]\d{2,3})$")


class ParseError(ValueError):
    """Result folder is missing, truncated, or from another format version."""


def quantize_offset(value: float) -> float:
    """The value an offset becomes after a write/parse round trip."""
    return float(f"{value:.9e}")


@dataclass(frozen=True)
class RunLog:
    """Improvement trajectory of one run on one problem."""

    descriptor: ProblemDescriptor
    events: tuple[tuple[int, float], ...]
    budget_used: int

    def __post_init__(self):
        last_evals = 0
        last_offset = None
        for evals, offset in self.events:
            if evals <= last_evals:
                raise ValueError("event evaluation counts must strictly increase")
            if last_offset is not None and offset >= last_offset:
                raise ValueError("event offsets must strictly decrease")
            last_evals, last_offset = evals, offset
        if self.events and self.events[-1][0] > self.budget_used:
            raise ValueError("last event exceeds budget_used")
        if self.budget_used < 0:
            raise ValueError("budget_used must be nonnegative")


@dataclass
class ObserverConfig:
    result_folder: Union[str, Path]
    algorithm_name: str
    algorithm_info: str = ""


def _unique_folder(base: Path) -> Path:
    candidate = base
    k = 0
    while candidate.exists():
        k += 1
        candidate = base.with_name(f"{base.name}-{k:03d}")
    candidate.mkdir(parents=True)
    return candidate


def _axis_csv(values: Iterable[int]) -> str:
    return ",".join(str(v) for v in values)


def write_info(folder: Path, suite_name: str, spec: SuiteSpec,
               algorithm_name: str, algorithm_info: str) -> None:
    path = folder / INFO_FILENAME
    lines = [
        f"format_version = {FORMAT_VERSION}",
        f"suite = {suite_name}",
        f"functions = {_axis_csv(spec.function_ids)}",
        f"dimensions = {_axis_csv(spec.dimensions)}",
        f"instances = {_axis_csv(spec.instance_ids)}",
        f"algorithm_name = {algorithm_name}",
        f"algorithm_info = {algorithm_info}",
        f"timestamp = {_dt.datetime.now().isoformat(timespec='seconds')}",
    ]
    try:
        with open(path, "w", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write experiment metadata {path}: {exc}") from exc


def data_filename(function_id: int, dimension: int) -> str:
    return f"f{function_id}_d{dimension}.dat"


def write_run_block(folder: Path, descriptor: ProblemDescriptor,
                    events: Iterable[tuple[int, float]], budget_used: int) -> None:
    """Append one run block to the (i, n) data file."""
    path = folder / data_filename(descriptor.function_id, descriptor.dimension)
    lines = [f"# run i={descriptor.function_id} n={descriptor.dimension} j={descriptor.instance_id}"]
    for evals, offset in events:
        lines.append(f"{evals}\t{offset:.9e}")
    lines.append(f"# end budget={budget_used}")
    try:
        with open(path, "a", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise OSError(f"cannot append run data to {path}: {exc}") from exc


class ObservedProblem:
    """Problem wrapper that records the improvement trajectory.

    Every evaluate passes straight through to the wrapped problem; an
    event is buffered whenever the quantized best offset strictly
    improves, and the block is written on finalize.
    """

    def __init__(self, observer: "Observer", problem: Problem):
        self._observer = observer
        self._problem = problem
        self._events: list[tuple[int, float]] = []
        self._finalized = False

    @property
    def problem(self) -> Problem:
        return self._problem

    @property
    def descriptor(self) -> ProblemDescriptor:
        return self._problem.descriptor

    @property
    def dimension(self) -> int:
        return self._problem.dimension

    @property
    def lower_bounds(self):
        return self._problem.lower_bounds

    @property
    def upper_bounds(self):
        return self._problem.upper_bounds

    @property
    def initial_solution(self):
        return self._problem.initial_solution

    @property
    def evaluations(self) -> int:
        return self._problem.evaluations

    @property
    def best_observed_offset(self) -> float:
        return self._problem.best_observed_offset

    @property
    def final_target_offset(self) -> float:
        return self._problem.final_target_offset

    @property
    def final_target_hit(self) -> bool:
        return self._problem.final_target_hit

    def evaluate(self, x) -> float:
        if self._finalized:
            raise ValueError(f"{self._problem.name}: evaluate after finalize")
        value = self._problem.evaluate(x)
        recorded = quantize_offset(self._problem.best_observed_offset)
        if not self._events or recorded < self._events[-1][1]:
            self._events.append((self._problem.evaluations, recorded))
        return value

    __call__ = evaluate

    def finalize(self) -> Optional[RunLog]:
        if self._finalized:
            return None
        self._finalized = True
        runlog = RunLog(
            descriptor=self._problem.descriptor,
            events=tuple(self._events),
            budget_used=self._problem.evaluations,
        )
        self._observer._finish(self, runlog)
        return runlog


class Observer:
    """Owns one result folder and the wrappers writing into it."""

    def __init__(self, config: ObserverConfig):
        self.config = config
        self.folder = _unique_folder(Path(config.result_folder))
        self.runlogs: list[RunLog] = []
        self._live: dict[tuple[int, int, int], ObservedProblem] = {}
        self._suite_name: Optional[str] = None

    def observe(self, problem: Problem) -> ObservedProblem:
        if self._suite_name is None:
            self._suite_name = problem.suite_name
            write_info(self.folder, problem.suite_name, problem.suite_spec,
                       self.config.algorithm_name, self.config.algorithm_info)
        elif problem.suite_name != self._suite_name:
            raise ValueError(
                f"observer already bound to suite {self._suite_name!r}, "
                f"got problem from {problem.suite_name!r}"
            )
        d = problem.descriptor
        key = (d.function_id, d.dimension, d.instance_id)
        live = self._live.get(key)
        if live is not None:
            if live.problem is problem:
                raise ValueError(f"{problem.name} is already observed and still live")
            live.finalize()
        wrapper = ObservedProblem(self, problem)
        self._live[key] = wrapper
        return wrapper

    def _finish(self, wrapper: ObservedProblem, runlog: RunLog) -> None:
        write_run_block(self.folder, runlog.descriptor, runlog.events, runlog.budget_used)
        self.runlogs.append(runlog)
        d = runlog.descriptor
        key = (d.function_id, d.dimension, d.instance_id)
        if self._live.get(key) is wrapper:
            del self._live[key]

    def record_error(self, suite_index: int, message: str) -> None:
        """Append a non-fatal per-problem failure to the metadata file."""
        path = self.folder / INFO_FILENAME
        sanitized = message.replace("\n", " ")
        try:
            with open(path, "a", newline="\n") as fh:
                fh.write(f"error_{suite_index} = {sanitized}\n")
        except OSError as exc:
            raise OSError(f"cannot append error metadata to {path}: {exc}") from exc

    def finalize(self) -> None:
        for key in sorted(self._live):
            self._live[key].finalize()


def _parse_info(path: Path) -> dict[str, str]:
    meta: dict[str, str] = {}
    for line in path.read_text().splitlines():
        if not line.strip():
            continue
        key, sep, value = line.partition(" = ")
        if not sep:
            raise ParseError(f"{path}: malformed metadata line {line!r}")
        meta[key] = value
    return meta


def _axis_from_csv(meta: dict[str, str], key: str, path: Path) -> tuple[int, ...]:
    if key not in meta:
        raise ParseError(f"{path}: metadata is missing the {key!r} key")
    try:
        return tuple(int(v) for v in meta[key].split(","))
    except ValueError as exc:
        raise ParseError(f"{path}: bad {key!r} value {meta[key]!r}") from exc


def parse_logs(folder: Union[str, Path]) -> list[RunLog]:
    """Read every run in a result folder back into RunLogs.

    Trailing partial lines and unterminated final blocks (a crashed
    experiment) are dropped with a logged warning count; anything
    malformed earlier in a file is an error.
    """
    folder = Path(folder)
    info_path = folder / INFO_FILENAME
    if not info_path.is_file():
        raise ParseError(f"missing metadata file {info_path}")
    meta = _parse_info(info_path)
    version = meta.get("format_version")
    if version != FORMAT_VERSION:
        raise ParseError(
            f"{info_path}: format version {version!r} (expected {FORMAT_VERSION!r})"
        )
    if "suite" not in meta:
        raise ParseError(f"{info_path}: metadata is missing the 'suite' key")
    spec = SuiteSpec(
        name=meta["suite"],
        function_ids=_axis_from_csv(meta, "functions", info_path),
        dimensions=_axis_from_csv(meta, "dimensions", info_path),
        instance_ids=_axis_from_csv(meta, "instances", info_path),
    )

    logs: list[RunLog] = []
    dropped = 0
    for path in sorted(folder.glob("f*_d*.dat")):
        raw = path.read_text()
        lines = raw.split("\n")
        incomplete_tail = bool(lines and lines[-1] != "")
        if lines and lines[-1] == "":
            lines.pop()
        block: Optional[dict] = None
        for pos, line in enumerate(lines):
            is_last = pos == len(lines) - 1
            truncated = is_last and incomplete_tail
            header = _RUN_HEADER.match(line)
            if header:
                if block is not None:
                    raise ParseError(f"{path}: run block without end marker")
                i, n, j = (int(g) for g in header.groups())
                block = {"i": i, "n": n, "j": j, "events": []}
                continue
            end = _RUN_END.match(line)
            if end and block is not None and not truncated:
                try:
                    suite_index = triple_to_index(spec, block["n"], block["i"], block["j"])
                    descriptor = ProblemDescriptor(
                        function_id=block["i"], dimension=block["n"],
                        instance_id=block["j"], suite_index=suite_index,
                    )
                    logs.append(RunLog(descriptor, tuple(block["events"]),
                                       int(end.group(1))))
                except ValueError as exc:
                    raise ParseError(f"{path}: invalid run block: {exc}") from exc
                block = None
                continue
            event = _EVENT.match(line)
            if event and block is not None and not truncated:
                block["events"].append((int(event.group(1)), float(event.group(2))))
                continue
            if truncated:
                dropped += 1
                block = None
                break
            raise ParseError(f"{path}: malformed line {line!r}")
        if block is not None:
            # header seen but no end marker before EOF: crashed run
            dropped += 1
    if dropped:
        log.warning("parse_logs(%s): dropped %d incomplete trailing record(s)", folder, dropped)
    logs.sort(key=lambda r: r.descriptor.suite_index)
    return logs
