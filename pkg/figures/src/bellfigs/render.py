"""Figure rendering for sweep CSVs: depth-shaded QFI curves, derivative scans.

Rendering is a pure function of the CSV contents.  Band edges come from the
depth column alone: the plotting layer never recomputes a threshold.
"""

from __future__ import annotations

from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .io import FIGURE_KINDS, SchemaError, group_by_size, read_many

matplotlib.rcParams["svg.hashsalt"] = "bellqfi-figures"


@dataclass(frozen=True)
class FigureSpec:
    csv_paths: tuple[str, ...]
    figure_kind: str
    out_path: str

    def __post_init__(self):
        if self.figure_kind not in FIGURE_KINDS:
            raise SchemaError(f"unknown figure kind {self.figure_kind!r}")
        if not self.csv_paths:
            raise SchemaError("no CSV paths given")


def depth_bands(rows) -> dict[int, tuple[float, float]]:
    """|u| interval covered by each depth level, straight from the depth column.

    For every level d >= 3 present in the rows, returns (min |u|, max |u|)
    over the rows whose reported depth is at least d.  Nested levels therefore
    produce nested intervals by construction.
    """
    bands: dict[int, tuple[float, float]] = {}
    depths = sorted({r["depth"] for r in rows if r["depth"] and r["depth"] >= 3})
    for level in depths:
        covered = [abs(r["u"]) for r in rows if r["depth"] is not None and r["depth"] >= level]
        bands[level] = (min(covered), max(covered))
    return bands


def _shade(level: int, top: int) -> float:
    # deeper regions darker; keep the shallowest visibly grey
    if top <= 3:
        return 0.25
    return 0.75 - 0.65 * (level - 3) / (top - 3)


def _render_depth_curves(rows, axis):
    groups = group_by_size(rows)
    for size, group in sorted(groups.items()):
        x = np.array([abs(r["u"]) for r in group])
        y = np.array([r["qfi_over_sn"] for r in group])
        axis.plot(x, y, color="steelblue", linewidth=1.0,
                  label=f"N = {size}", zorder=2)
        levels = sorted({r["depth"] for r in group if r["depth"] and r["depth"] >= 3})
        top = max(levels, default=3)
        for level in levels:
            mask = np.array([(r["depth"] or 0) >= level for r in group])
            axis.plot(np.where(mask, x, np.nan), np.where(mask, y, np.nan),
                      color=str(_shade(level, top)), linewidth=3.0, zorder=3)
    axis.axhline(1.0, color="grey", linewidth=0.8, zorder=1)   # shot-noise reference
    axis.set_xlabel("|u|")
    axis.set_ylabel("QFI / N")
    axis.set_yscale("log")
    axis.legend(loc="upper left", fontsize=8)


def _render_derivative(rows, axis):
    groups = group_by_size(rows)
    for size, group in sorted(groups.items()):
        usable = [r for r in group if r["dqfi_d_abs_u"] is not None]
        x = np.array([abs(r["u"]) for r in usable])
        y = np.array([r["dqfi_d_abs_u"] for r in usable])
        axis.plot(x, y, linewidth=1.2, label=f"N = {size}")
        for r in group:
            if r["bell_onset_flag"] == 1:
                axis.annotate("Bell onset", xy=(abs(r["u"]), 0.0),
                              xytext=(abs(r["u"]), 0.12 * float(np.max(np.abs(y)))),
                              arrowprops={"color": "red", "arrowstyle": "->"},
                              color="red", fontsize=8, ha="center")
    axis.set_xlabel("|u|")
    axis.set_ylabel("d(QFI) / d|u|")
    axis.legend(loc="upper right", fontsize=8)


def render(spec: FigureSpec) -> str:
    """Render one figure; returns the output path.

    Raises SchemaError before any file is created when the CSVs do not match
    the expected schema or carry no plottable rows.
    """
    rows = read_many(spec.csv_paths, spec.figure_kind)
    fig, axis = plt.subplots(figsize=(6.0, 4.0))
    try:
        if spec.figure_kind in ("ising_depth", "twomode_depth"):
            _render_depth_curves(rows, axis)
        else:
            _render_derivative(rows, axis)
        fig.tight_layout()
        metadata = {"Date": None} if spec.out_path.endswith(".svg") else None
        fig.savefig(spec.out_path, metadata=metadata)
    finally:
        plt.close(fig)
    return spec.out_path
