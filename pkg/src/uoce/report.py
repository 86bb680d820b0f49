"""Rendering of score reports and sweep grids as aligned text and CSV."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from math import sqrt
from typing import Mapping, Sequence

from uoce.metrics import ScoreReport
from uoce.model import SLOT_ORDER


def mean_std(values: Sequence[float]) -> tuple[float, float]:
    """Mean and sample standard deviation (n-1 divisor; 0.0 when n <= 1)."""
    n = len(values)
    if n == 0:
        return 0.0, 0.0
    mu = sum(values) / n
    if n == 1:
        return mu, 0.0
    variance = sum((v - mu) ** 2 for v in values) / (n - 1)
    return mu, sqrt(variance)


def _pct(fraction: float) -> str:
    return f"{100 * fraction:.2f}"


def render_score_text(report: ScoreReport) -> str:
    """One headline line plus the per-slot agreement table when available."""
    lines = [
        f"P {_pct(report.precision)} R {_pct(report.recall)} F1 {_pct(report.f1)}",
        f"TP {float(report.true_positive_mass):.4f}  "
        f"gold {report.gold_count}  predicted {report.predicted_count}",
    ]
    slots = [
        s
        for s in SLOT_ORDER
        if s in report.per_slot_agreement or s in report.per_slot_spurious
    ]
    if slots:
        lines.append("")
        lines.append("slot  agreement  spurious")
        for slot in slots:
            rate = report.per_slot_agreement.get(slot)
            rendered = _pct(rate) if rate is not None else "-"
            spurious = report.per_slot_spurious.get(slot, 0)
            lines.append(f"{slot.value:<4}  {rendered:>9}  {spurious:>8}")
    return "\n".join(lines) + "\n"


def render_score_csv(report: ScoreReport) -> str:
    out = io.StringIO()
    writer = csv.writer(out)
    writer.writerow(["measure", "value"])
    writer.writerow(["precision", _pct(report.precision)])
    writer.writerow(["recall", _pct(report.recall)])
    writer.writerow(["f1", _pct(report.f1)])
    writer.writerow(["gold_count", report.gold_count])
    writer.writerow(["predicted_count", report.predicted_count])
    for slot in SLOT_ORDER:
        if slot in report.per_slot_agreement:
            writer.writerow([f"slot_{slot.value}", _pct(report.per_slot_agreement[slot])])
    return out.getvalue()


@dataclass(frozen=True)
class SweepCell:
    """One grid cell: an F1 fraction, or the failure that prevented it."""

    f1: float | None = None
    error: str | None = None


@dataclass(frozen=True)
class SweepReport:
    """F1 grid over models (rows) and prompt variants (columns).

    Row and column mean/sd aggregate the unrounded percentage values of the
    cells that produced a score; rendering rounds to 2 decimals.
    """

    models: tuple[str, ...]
    variants: tuple[str, ...]
    cells: Mapping[tuple[str, str], SweepCell]
    task: str = "uoce"
    metric: str = "component"

    def _row(self, model: str) -> list[float]:
        return [
            100 * cell.f1
            for variant in self.variants
            if (cell := self.cells[(model, variant)]).f1 is not None
        ]

    def _column(self, variant: str) -> list[float]:
        return [
            100 * cell.f1
            for model in self.models
            if (cell := self.cells[(model, variant)]).f1 is not None
        ]

    def row_stats(self, model: str) -> tuple[float, float]:
        return mean_std(self._row(model))

    def column_stats(self, variant: str) -> tuple[float, float]:
        return mean_std(self._column(variant))

    def render_text(self) -> str:
        header = ["Model", *self.variants, "mu+/-sigma"]
        rows: list[list[str]] = [header]
        failures: list[str] = []
        for model in self.models:
            row = [model]
            for variant in self.variants:
                cell = self.cells[(model, variant)]
                if cell.f1 is None:
                    row.append("FAIL")
                    failures.append(f"FAIL {model}/{variant}: {cell.error}")
                else:
                    row.append(f"{100 * cell.f1:.2f}")
            mu, sigma = self.row_stats(model)
            row.append(f"{mu:.2f} +/- {sigma:.2f}")
            rows.append(row)
        mu_row, sigma_row = ["mu"], ["sigma"]
        for variant in self.variants:
            mu, sigma = self.column_stats(variant)
            mu_row.append(f"{mu:.2f}")
            sigma_row.append(f"{sigma:.2f}")
        rows.append(mu_row + [""])
        rows.append(sigma_row + [""])

        widths = [max(len(row[i]) for row in rows) for i in range(len(header))]
        lines = [f"F1 scores (task={self.task}, metric={self.metric})"]
        for row in rows:
            lines.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip())
        body = "\n".join(lines)
        if failures:
            body += "\n" + "\n".join(failures)
        return body + "\n"

    def render_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out)
        writer.writerow(["model", *self.variants, "mu", "sigma"])
        for model in self.models:
            row: list[str] = [model]
            for variant in self.variants:
                cell = self.cells[(model, variant)]
                row.append("" if cell.f1 is None else f"{100 * cell.f1:.2f}")
            mu, sigma = self.row_stats(model)
            row += [f"{mu:.2f}", f"{sigma:.2f}"]
            writer.writerow(row)
        mu_row, sigma_row = ["mu"], ["sigma"]
        for variant in self.variants:
            mu, sigma = self.column_stats(variant)
            mu_row.append(f"{mu:.2f}")
            sigma_row.append(f"{sigma:.2f}")
        writer.writerow(mu_row + ["", ""])
        writer.writerow(sigma_row + ["", ""])
        return out.getvalue()
