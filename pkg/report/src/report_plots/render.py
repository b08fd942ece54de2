"""CSV reading and panel rendering.

The input contract is the results CSV of the estimation harness: a first
line `# schema=bohrlab.results/1`, then a header with the columns
quantity, p, n, m, lambda, operator, lower, lower_source, upper,
upper_source, tol, capped, seed.  Files with any other schema tag are
refused outright.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

EXPECTED_SCHEMA = "bohrlab.results/1"
REQUIRED_COLUMNS = ("quantity", "p", "n", "m", "lambda", "operator", "lower",
                    "lower_source", "upper", "upper_source", "tol", "capped",
                    "seed")
CURVE_KINDS = ("lower", "upper", "envelopes")


class SchemaError(ValueError):
    """The input file is not a results CSV this renderer understands."""


@dataclass(frozen=True)
class PlotSpec:
    inputs: tuple[str, ...]
    group: tuple[str, ...] = ("p", "lambda", "operator")
    out_dir: str = "figures"
    fmt: str = "png"
    curves: tuple[str, ...] = CURVE_KINDS

    def __post_init__(self):
        if self.fmt not in ("png", "svg"):
            raise ValueError(f"format must be png or svg, got {self.fmt!r}")
        bad = set(self.group) - set(REQUIRED_COLUMNS)
        if bad:
            raise ValueError(f"unknown grouping columns: {sorted(bad)}")
        bad = set(self.curves) - set(CURVE_KINDS)
        if bad:
            raise ValueError(f"unknown curve kinds: {sorted(bad)}")


@dataclass
class PanelReport:
    path: str
    group: dict
    series: list = field(default_factory=list)      # (label, xs, ys)
    reference_lines: list = field(default_factory=list)  # (label, y)


def read_results(path: str | Path) -> list[dict]:
    """Rows of a results CSV, schema-checked."""
    lines = Path(path).read_text().splitlines()
    if not lines or not lines[0].startswith("# schema="):
        raise SchemaError(f"{path}: missing schema tag line")
    tag = lines[0].removeprefix("# schema=").strip()
    if tag != EXPECTED_SCHEMA:
        raise SchemaError(f"{path}: schema {tag!r} does not match {EXPECTED_SCHEMA!r}")
    reader = csv.DictReader(lines[1:])
    missing = set(REQUIRED_COLUMNS) - set(reader.fieldnames or ())
    if missing:
        raise SchemaError(f"{path}: missing columns {sorted(missing)}")
    rows = list(reader)
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    return rows


def _num(row: dict, col: str) -> float | None:
    raw = (row.get(col) or "").strip()
    if not raw:
        return None
    return float(raw)


def _slug(value: str) -> str:
    return "".join(c if c.isalnum() or c in "._-" else "-" for c in value)


def _source_label(sources: set[str]) -> str:
    sources = {s for s in sources if s}
    if not sources:
        return "unlabeled"
    if len(sources) == 1:
        return next(iter(sources))
    return f"{len(sources)} sources"


def _collect_series(rows: list[dict], endpoint: str, quantities: set[str]):
    """Per quantity: (label, sorted xs, ys) for one endpoint column."""
    out = []
    for q in sorted(quantities):
        pts = []
        sources = set()
        for row in rows:
            if row["quantity"] != q:
                continue
            val = _num(row, endpoint)
            if val is None:
                continue
            pts.append((int(row["n"]), val))
            sources.add(row[f"{endpoint}_source"])
        if not pts:
            continue
        pts.sort()
        label = f"{q} {endpoint} [{_source_label(sources)}]"
        out.append((label, [x for x, _ in pts], [y for _, y in pts]))
    return out


def render(spec: PlotSpec) -> list[PanelReport]:
    """One figure per panel group; returns what was drawn.

    Estimate endpoints are drawn as marker series over n, envelope rows as
    dashed curves, and any closed-form lower bound additionally as a
    horizontal reference line.  Axes go log-log once the panel spans
    several dimensions.
    """
    rows: list[dict] = []
    for path in spec.inputs:
        rows.extend(read_results(path))

    panels: dict[tuple, list[dict]] = {}
    for row in rows:
        key = tuple(row[g] for g in spec.group)
        panels.setdefault(key, []).append(row)

    out_dir = Path(spec.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    reports: list[PanelReport] = []
    for key in sorted(panels):
        panel_rows = panels[key]
        group = dict(zip(spec.group, key))
        estimates = [r for r in panel_rows if not r["quantity"].startswith("env:")]
        envelopes = [r for r in panel_rows if r["quantity"].startswith("env:")]
        quantities = {r["quantity"] for r in estimates}

        report = PanelReport(path="", group=group)
        fig, ax = plt.subplots(figsize=(6.4, 4.4))
        if "upper" in spec.curves:
            for label, xs, ys in _collect_series(estimates, "upper", quantities):
                ax.plot(xs, ys, marker="o", label=label)
                report.series.append((label, xs, ys))
        if "lower" in spec.curves:
            for label, xs, ys in _collect_series(estimates, "lower", quantities):
                ax.plot(xs, ys, marker="s", linestyle=":", label=label)
                report.series.append((label, xs, ys))
            for row in estimates:
                if "closed-form" in row["lower_source"]:
                    y = _num(row, "lower")
                    if y is not None:
                        label = row["lower_source"]
                        if all(lbl != label for lbl, _ in report.reference_lines):
                            ax.axhline(y, color="gray", linewidth=1.0,
                                       linestyle="--", label=label)
                            report.reference_lines.append((label, y))
        if "envelopes" in spec.curves and envelopes:
            env_quantities = {r["quantity"] for r in envelopes}
            for endpoint in ("lower", "upper"):
                for label, xs, ys in _collect_series(envelopes, endpoint,
                                                     env_quantities):
                    ax.plot(xs, ys, linestyle="--", alpha=0.7, label=label)
                    report.series.append((label, xs, ys))

        ns = sorted({int(r["n"]) for r in panel_rows})
        positive = all(y > 0 for _, _, ys in report.series for y in ys)
        if len(ns) >= 2 and min(ns) >= 2 and positive:
            ax.set_xscale("log")
            ax.set_yscale("log")
        ax.set_xlabel("n")
        ax.set_ylabel("radius")
        ax.set_title(", ".join(f"{g}={v}" for g, v in group.items()))
        ax.legend(fontsize=7, loc="best")
        fname = "panel_" + _slug("_".join(f"{g}-{v}" for g, v in group.items()))
        path = out_dir / f"{fname}.{spec.fmt}"
        fig.savefig(path, dpi=120)
        plt.close(fig)
        report.path = str(path)
        reports.append(report)
    return reports
