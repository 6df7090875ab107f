"""The two period-2 autocovariance figures and the qualitative claims made about them."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import defaults
from .acvf import AcvfTable, acvf_table
from .model import PtvArfimaModel
from .svg import line_chart

FIGURES: dict[str, PtvArfimaModel] = {"fig1": defaults.FIG1, "fig2": defaults.FIG2}


@dataclass(frozen=True)
class CurveChecks:
    positive: bool
    residue_monotone: bool
    ordering_violations: tuple[int, ...]  # lags h >= 1 where gamma_1(h) >= gamma_2(h)
    gaps: np.ndarray  # |gamma_2(h) - gamma_1(h)| for h = 1..max_lag

    @property
    def ordering_holds(self) -> bool:
        return not self.ordering_violations

    @property
    def max_gap(self) -> float:
        return float(self.gaps.max())


def figure_table(name: str, max_lag: int = defaults.MAX_LAG) -> AcvfTable:
    return acvf_table(FIGURES[name], max_lag, "exact")


def check_curves(table: AcvfTable) -> CurveChecks:
    """Positivity, per-residue strict decrease for h >= 1, season ordering, season gap."""
    p = table.model.period
    vals = table.values
    lags = table.lags
    positive = bool((vals > 0).all())
    monotone = True
    for i in range(p):
        for k in range(p):
            sel = vals[i, (lags >= 1) & (lags % p == k)]
            if len(sel) > 1 and not (np.diff(sel) < 0).all():
                monotone = False
    pos = lags >= 1
    violations = tuple(int(h) for h in lags[pos][vals[0, pos] >= vals[1, pos]]) if p >= 2 else ()
    gaps = np.abs(vals[1, pos] - vals[0, pos]) if p >= 2 else np.zeros(pos.sum())
    return CurveChecks(positive, monotone, violations, gaps)


@dataclass(frozen=True)
class FigureReport:
    checks: dict[str, CurveChecks]

    @property
    def fig2_gap_exceeds_fig1(self) -> bool:
        g1, g2 = self.checks["fig1"].gaps, self.checks["fig2"].gaps
        return bool((g2 > g1).all() and g2.max() > g1.max())

    def lines(self) -> list[tuple[str, bool, str]]:
        c1, c2 = self.checks["fig1"], self.checks["fig2"]
        n_viol = len(c1.ordering_violations)
        return [
            ("fig1 positive", c1.positive, ""),
            ("fig2 positive", c2.positive, ""),
            ("fig1 per-residue strictly decreasing", c1.residue_monotone, ""),
            ("fig2 per-residue strictly decreasing", c2.residue_monotone, ""),
            (
                "fig1 gamma_1(h) < gamma_2(h), 1 <= h <= 100",
                c1.ordering_holds,
                f"{n_viol} violating lags" + (f", first {c1.ordering_violations[:5]}" if n_viol else ""),
            ),
            (
                "fig2 season gap exceeds fig1 at every lag >= 1",
                self.fig2_gap_exceeds_fig1,
                f"max gap fig1={c1.max_gap:.6g}, fig2={c2.max_gap:.6g}",
            ),
        ]

    @property
    def all_passed(self) -> bool:
        return all(ok for _, ok, _ in self.lines())


def write_figures(out_dir: str | Path, max_lag: int = defaults.MAX_LAG) -> tuple[list[Path], FigureReport]:
    """Write ``fig1.csv``, ``fig2.csv`` and matching SVG plots into ``out_dir``."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    checks = {}
    for name, model in FIGURES.items():
        table = figure_table(name, max_lag)
        checks[name] = check_curves(table)
        csv_path = out / f"{name}.csv"
        with open(csv_path, "w", newline="") as fh:
            table.write_csv(fh)
        d1, d2 = model.d
        svg = line_chart(
            table.lags,
            {f"season {i}": table.season(i) for i in model.seasons()},
            title=f"Periodic autocovariance, p=2, d1={d1:g}, d2={d2:g}",
            xlabel="lag h",
            ylabel="gamma_i(h)",
        )
        svg_path = out / f"{name}.svg"
        svg_path.write_text(svg)
        written += [csv_path, svg_path]
    return written, FigureReport(checks)
