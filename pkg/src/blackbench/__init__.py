"""blackbench: benchmarking platform for continuous black-box optimizers.

Experiments side: scalable instanced test problems (`Suite`, `Problem`),
trajectory logging (`Observer`). Post-processing side: first-hit runtime
extraction, simulated-restart bootstrap, ECDF curves and runtime
averages (`perf`), and a static report (`blackbench postprocess`).
"""

from .backend import BACKEND_NAME, available_backends
from .functions import RawFunction, raw_function_registry
from .harness import (
    ExperimentConfig,
    Optimizer,
    builtin_optimizers,
    get_optimizer,
    run_experiment,
)
from .observer import (
    ObservedProblem,
    Observer,
    ObserverConfig,
    ParseError,
    RunLog,
    parse_logs,
)
from .perf import (
    AggregateStats,
    EcdfCurve,
    GroupResult,
    RuntimeRecord,
    TargetSet,
    aggregate_suite,
    averages,
    ecdf,
    extract_runtimes,
    fill_simulated,
    simulated_restarts,
)
from .report import ReportBundle, build_report, render_ecdf_svg
from .suite import (
    Problem,
    ProblemDescriptor,
    Suite,
    SuiteSpec,
    index_to_triple,
    registered_suites,
    suite_create,
    triple_to_index,
)
from .transforms import InstanceTransform, make_transform, orthogonality_error

__version__ = "0.1.0"

__all__ = [
    "AggregateStats",
    "BACKEND_NAME",
    "EcdfCurve",
    "ExperimentConfig",
    "GroupResult",
    "InstanceTransform",
    "ObservedProblem",
    "Observer",
    "ObserverConfig",
    "Optimizer",
    "ParseError",
    "Problem",
    "ProblemDescriptor",
    "RawFunction",
    "ReportBundle",
    "RunLog",
    "RuntimeRecord",
    "Suite",
    "SuiteSpec",
    "TargetSet",
    "aggregate_suite",
    "available_backends",
    "averages",
    "build_report",
    "builtin_optimizers",
    "ecdf",
    "extract_runtimes",
    "fill_simulated",
    "get_optimizer",
    "index_to_triple",
    "make_transform",
    "orthogonality_error",
    "parse_logs",
    "raw_function_registry",
    "registered_suites",
    "render_ecdf_svg",
    "run_experiment",
    "simulated_restarts",
    "suite_create",
    "triple_to_index",
    "__version__",
]
