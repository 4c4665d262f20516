"""JSON-lines stdio service exposing suites, problems, and the observer.

This is the function surface foreign-language bindings talk to: spawn
`python -m blackbench.bridge`, read the one-line greeting, then send one
request object per line and read one response per line. Floats cross
the boundary via shortest-round-trip decimal repr, so evaluation
results are bit-identical to in-process calls.

Requests:  {"id": <any>, "op": <str>, ...params}
Responses: {"id": <any>, "ok": true, "result": {...}}
           {"id": <any>, "ok": false, "error": "<message>"}

Ops: suite, descriptors, problem, observer, observe, evaluate, attrs,
finalize, finalize_all, shutdown.
"""

from __future__ import annotations

import json
import sys
from typing import Optional

from .backend import BACKEND_NAME
from .observer import ObservedProblem, Observer, ObserverConfig
from .suite import Suite, index_to_triple, suite_create

PROTOCOL_VERSION = 1


class BridgeSession:
    def __init__(self):
        self.suite: Optional[Suite] = None
        self.observer: Optional[Observer] = None
        self.problems: dict[int, object] = {}

    # each op_* returns the "result" payload

    def op_suite(self, params: dict) -> dict:
        self.suite = suite_create(
            params["name"],
            dimensions=params.get("dimensions"),
            instances=params.get("instances"),
        )
        self.problems.clear()
        return {"name": self.suite.name, "count": len(self.suite)}

    def _require_suite(self) -> Suite:
        if self.suite is None:
            raise ValueError("no suite loaded (send a 'suite' request first)")
        return self.suite

    def op_descriptors(self, params: dict) -> dict:
        suite = self._require_suite()
        spec = suite.spec
        descriptors = []
        for idx in range(len(suite)):
            n, i, j = index_to_triple(spec, idx)
            descriptors.append({"suite_index": idx, "function_id": i,
                                "dimension": n, "instance_id": j})
        return {"descriptors": descriptors}

    def _get_problem(self, index: int):
        suite = self._require_suite()
        handle = self.problems.get(index)
        if handle is None:
            handle = suite.problem(index)
            self.problems[index] = handle
        return handle

    def _attrs(self, handle) -> dict:
        return {
            "dimension": handle.dimension,
            "lower_bounds": list(handle.lower_bounds),
            "upper_bounds": list(handle.upper_bounds),
            "initial_solution": list(handle.initial_solution),
            "evaluations": handle.evaluations,
            "final_target_hit": handle.final_target_hit,
            "final_target_offset": handle.final_target_offset,
        }

    def op_problem(self, params: dict) -> dict:
        handle = self._get_problem(int(params["index"]))
        return self._attrs(handle)

    def op_observer(self, params: dict) -> dict:
        self.observer = Observer(ObserverConfig(
            result_folder=params["result_folder"],
            algorithm_name=params.get("algorithm_name", "external"),
            algorithm_info=params.get("algorithm_info", ""),
        ))
        return {"folder": str(self.observer.folder)}

    def op_observe(self, params: dict) -> dict:
        if self.observer is None:
            raise ValueError("no observer configured (send an 'observer' request first)")
        index = int(params["index"])
        problem = self._get_problem(index)
        if isinstance(problem, ObservedProblem):
            raise ValueError(f"problem {index} is already observed")
        wrapper = self.observer.observe(problem)
        self.problems[index] = wrapper
        return self._attrs(wrapper)

    def op_evaluate(self, params: dict) -> dict:
        handle = self._get_problem(int(params["index"]))
        value = handle.evaluate(params["x"])
        return {
            "f": value,
            "evaluations": handle.evaluations,
            "best_offset": handle.best_observed_offset,
            "final_target_hit": handle.final_target_hit,
        }

    def op_attrs(self, params: dict) -> dict:
        return self._attrs(self._get_problem(int(params["index"])))

    def op_finalize(self, params: dict) -> dict:
        index = int(params["index"])
        handle = self.problems.get(index)
        if not isinstance(handle, ObservedProblem):
            raise ValueError(f"problem {index} is not observed")
        handle.finalize()
        return {"budget_used": handle.evaluations}

    def op_finalize_all(self, params: dict) -> dict:
        if self.observer is not None:
            self.observer.finalize()
        return {}


def serve(stdin=None, stdout=None) -> None:
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    session = BridgeSession()

    def emit(payload: dict) -> None:
        stdout.write(json.dumps(payload) + "\n")
        stdout.flush()

    emit({"blackbench_bridge": PROTOCOL_VERSION, "backend": BACKEND_NAME})
    for line in stdin:
        line = line.strip()
        if not line:
            continue
        request_id = None
        try:
            request = json.loads(line)
            request_id = request.get("id")
            op = request.get("op")
            if op == "shutdown":
                emit({"id": request_id, "ok": True, "result": {}})
                break
            handler = getattr(session, f"op_{op}", None)
            if handler is None:
                raise ValueError(f"unknown op {op!r}")
            emit({"id": request_id, "ok": True, "result": handler(request)})
        except Exception as exc:
            emit({"id": request_id, "ok": False, "error": f"{type(exc).__name__}: {exc}"})


if __name__ == "__main__":
    serve()
