"""Static report generation: ECDF plots as SVG, stats CSV, HTML index.

SVG is emitted directly (no plotting dependency); everything except the
provenance timestamp is a pure function of the input folder and the
report seed.
"""

from __future__ import annotations

import datetime as _dt
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Union

from .observer import FORMAT_VERSION, INFO_FILENAME, ParseError, parse_logs
from .perf import (
    GROUPINGS,
    EcdfCurve,
    GroupResult,
    TargetSet,
    aggregate_suite,
    extract_runtimes,
    fill_simulated,
)

CSV_SCHEMA = (
    "grouping", "group", "dimension", "success_count", "record_count",
    "arithmetic_mean_runtime", "geometric_mean_runtime", "expected_runtime",
)
CSV_SCHEMA_VERSION = 1
REPORT_VERSION = 1

_PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
)

_WIDTH, _HEIGHT = 720, 480
_MARGIN_L, _MARGIN_R, _MARGIN_T, _MARGIN_B = 72, 180, 42, 56


def _fmt(value: float) -> str:
    return f"{value:.6g}"


def render_ecdf_svg(curves: Sequence[tuple[str, EcdfCurve]], title: str = "") -> str:
    """Step-rendered ECDF curves on a log10 budget axis, legend included."""
    if not curves:
        raise ValueError("no curves to render")

    lo = math.floor(min(math.log10(c.budgets[0]) for _, c in curves))
    hi = math.ceil(max(math.log10(c.budgets[-1]) for _, c in curves))
    if hi <= lo:
        hi = lo + 1

    plot_w = _WIDTH - _MARGIN_L - _MARGIN_R
    plot_h = _HEIGHT - _MARGIN_T - _MARGIN_B

    def sx(budget: float) -> float:
        return _MARGIN_L + (math.log10(budget) - lo) / (hi - lo) * plot_w

    def sy(proportion: float) -> float:
        return _MARGIN_T + (1.0 - proportion) * plot_h

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_WIDTH}" height="{_HEIGHT}" viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
    ]
    if title:
        out.append(
            f'<text x="{_MARGIN_L}" y="{_MARGIN_T - 16}" font-family="sans-serif" '
            f'font-size="15" font-weight="bold">{_escape(title)}</text>'
        )

    # axes, decade grid, proportion grid
    for decade in range(lo, hi + 1):
        x = sx(10.0 ** decade)
        out.append(f'<line x1="{x:.2f}" y1="{_MARGIN_T}" x2="{x:.2f}" '
                   f'y2="{_MARGIN_T + plot_h}" stroke="#dddddd"/>')
        out.append(f'<text x="{x:.2f}" y="{_MARGIN_T + plot_h + 18}" '
                   f'font-family="sans-serif" font-size="11" '
                   f'text-anchor="middle">1e{decade}</text>')
    for tick in (0.0, 0.25, 0.5, 0.75, 1.0):
        y = sy(tick)
        out.append(f'<line x1="{_MARGIN_L}" y1="{y:.2f}" '
                   f'x2="{_MARGIN_L + plot_w}" y2="{y:.2f}" stroke="#dddddd"/>')
        out.append(f'<text x="{_MARGIN_L - 8}" y="{y + 4:.2f}" font-family="sans-serif" '
                   f'font-size="11" text-anchor="end">{tick:g}</text>')
    out.append(f'<rect x="{_MARGIN_L}" y="{_MARGIN_T}" width="{plot_w}" '
               f'height="{plot_h}" fill="none" stroke="#333333"/>')
    out.append(f'<text x="{_MARGIN_L + plot_w / 2:.2f}" y="{_HEIGHT - 14}" '
               f'font-family="sans-serif" font-size="12" text-anchor="middle">'
               f'evaluations / dimension (log scale)</text>')
    out.append(f'<text x="18" y="{_MARGIN_T + plot_h / 2:.2f}" font-family="sans-serif" '
               f'font-size="12" text-anchor="middle" '
               f'transform="rotate(-90 18 {_MARGIN_T + plot_h / 2:.2f})">'
               f'proportion of (problem, target) pairs solved</text>')

    # step curves: horizontal run to the next budget, vertical jump there
    for pos, (label, curve) in enumerate(curves):
        color = _PALETTE[pos % len(_PALETTE)]
        path = [f"M {sx(curve.budgets[0]):.2f} {sy(curve.proportions[0]):.2f}"]
        for (b, p_prev), p_next in zip(
            zip(curve.budgets[1:], curve.proportions[:-1]), curve.proportions[1:]
        ):
            path.append(f"H {sx(b):.2f}")
            if p_next != p_prev:
                path.append(f"V {sy(p_next):.2f}")
        path.append(f"H {_MARGIN_L + plot_w:.2f}")
        out.append(f'<path d="{" ".join(path)}" fill="none" stroke="{color}" '
                   f'stroke-width="1.8"/>')
        ly = _MARGIN_T + 14 + 18 * pos
        lx = _MARGIN_L + plot_w + 12
        out.append(f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 22}" y2="{ly - 4}" '
                   f'stroke="{color}" stroke-width="2.5"/>')
        out.append(f'<text x="{lx + 28}" y="{ly}" font-family="sans-serif" '
                   f'font-size="12">{_escape(label)} '
                   f'({curve.final_proportion:.2f})</text>')

    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(text: str) -> str:
    return (text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;"))


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        if math.isinf(value):
            return "inf"
        return _fmt(value)
    return str(value)


def write_stats_csv(path: Path, results: Sequence[GroupResult]) -> None:
    lines = [",".join(CSV_SCHEMA)]
    for r in results:
        stats = r.stats
        lines.append(",".join(_csv_cell(v) for v in (
            r.grouping, r.key, r.dimension,
            stats.success_count, stats.record_count,
            stats.arithmetic_mean_runtime, stats.geometric_mean_runtime,
            stats.expected_runtime,
        )))
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


@dataclass(frozen=True)
class ReportBundle:
    folder: Path
    index_file: Path
    plot_files: tuple[Path, ...]
    csv_file: Path
    provenance_file: Path


def _index_html(meta: dict, plot_files: Sequence[Path], csv_name: str,
                provenance_name: str) -> str:
    parts = [
        "<!DOCTYPE html>",
        "<html><head><meta charset='utf-8'><title>blackbench report</title>",
        "<style>body{font-family:sans-serif;margin:2em;}h2{margin-top:1.5em;}"
        "img{border:1px solid #ccc;margin:4px;}</style></head><body>",
        "<h1>blackbench report</h1>",
        f"<p>algorithm: <b>{_escape(meta.get('algorithm_name', '?'))}</b> "
        f"on suite <b>{_escape(meta.get('suite', '?'))}</b></p>",
        f"<p><a href='{csv_name}'>aggregate statistics (CSV)</a> &middot; "
        f"<a href='{provenance_name}'>provenance</a></p>",
    ]
    by_dim: dict[int, list[Path]] = {}
    for path in plot_files:
        dim = int(path.stem.rsplit("_d", 1)[1])
        by_dim.setdefault(dim, []).append(path)
    for dim in sorted(by_dim):
        parts.append(f"<h2>dimension {dim}</h2>")
        for path in by_dim[dim]:
            parts.append(f"<img src='{path.name}' alt='{path.stem}' width='640'>")
    parts.append("</body></html>")
    return "\n".join(parts) + "\n"


def build_report(data_folder: Union[str, Path], out_folder: Union[str, Path],
                 report_seed: int) -> ReportBundle:
    """Post-process one result folder into a static report."""
    data_folder = Path(data_folder)
    out = Path(out_folder)
    out.mkdir(parents=True, exist_ok=True)

    logs = parse_logs(data_folder)
    if not logs:
        raise ParseError(f"{data_folder}: no run data found")
    meta = {}
    for line in (data_folder / INFO_FILENAME).read_text().splitlines():
        key, sep, value = line.partition(" = ")
        if sep:
            meta[key] = value

    targets = TargetSet.default()
    records = extract_runtimes(logs, targets)
    filled = fill_simulated(records, report_seed)

    plot_files: list[Path] = []
    csv_rows: list[GroupResult] = []
    for grouping in GROUPINGS:
        csv_rows.extend(aggregate_suite(records, grouping))
        for_plots = aggregate_suite(filled, grouping)
        by_dim: dict[int, list[GroupResult]] = {}
        for result in for_plots:
            by_dim.setdefault(result.dimension, []).append(result)
        for dim, results in sorted(by_dim.items()):
            labeled = [(r.key, r.curve) for r in results]
            svg = render_ecdf_svg(
                labeled, title=f"{grouping} ECDFs, dimension {dim}"
            )
            path = out / f"ecdf_{grouping}_d{dim}.svg"
            path.write_text(svg)
            plot_files.append(path)

    csv_file = out / "stats.csv"
    write_stats_csv(csv_file, csv_rows)

    provenance_file = out / "provenance.json"
    provenance = {
        "report_version": REPORT_VERSION,
        "csv_schema_version": CSV_SCHEMA_VERSION,
        "observer_format_version": FORMAT_VERSION,
        "source_folder": str(data_folder),
        "report_seed": report_seed,
        "suite": meta.get("suite"),
        "algorithm_name": meta.get("algorithm_name"),
        "algorithm_info": meta.get("algorithm_info"),
        "target_count": len(targets),
        "generated_at": _dt.datetime.now().isoformat(timespec="seconds"),
    }
    provenance_file.write_text(json.dumps(provenance, indent=2, sort_keys=True) + "\n")

    index_file = out / "index.html"
    index_file.write_text(_index_html(meta, plot_files, csv_file.name,
                                      provenance_file.name))
    return ReportBundle(
        folder=out,
        index_file=index_file,
        plot_files=tuple(plot_files),
        csv_file=csv_file,
        provenance_file=provenance_file,
    )
