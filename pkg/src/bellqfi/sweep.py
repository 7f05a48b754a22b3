"""Model sweeps over the coupling grid, with deterministic CSV output.

Every sweep emits one row per (N, u) point in N-major, u-ascending order.
Output is schema-versioned CSV: a `# schema=1` comment line, a fixed header,
comma separation, floats printed with 17 significant digits (round-trip
exact), missing values as empty strings.  A failing solve never aborts a
sweep; the offending row carries the error message in its last column.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields, replace

import numpy as np

from . import ising as ising_mod
from . import qfi as qfi_mod
from . import twomode as twomode_mod
from .correlators import CorrelatorSpec, bell_correlator, exceeds, nonlocality_depth
from .lanczos import ConvergenceError

CSV_SCHEMA_LINE = "# schema=1"
SWEEP_COLUMNS = ("n", "u", "qfi", "qfi_over_sn", "e_full", "depth", "bound_coherence",
                 "bound_correlator_sum", "heisenberg_floor", "delta_theta", "error")
DERIVATIVE_COLUMNS = ("n", "u", "dqfi_d_abs_u", "e_full", "bell_onset_flag", "error")


@dataclass(frozen=True)
class SweepConfig:
    """Flat configuration mirroring the CLI flags; JSON config files share the keys."""

    model: str = "ising"
    n: tuple[int, ...] = ()
    u_min: float = -3.0
    u_max: float = 0.0
    steps: int = 121
    out: str = "sweep.csv"
    threads: int = 1
    seed: int = 0
    correlator_bound_cap: int = 14
    bound_max_order: int | None = None
    convention: str = "scaled"

    def u_grid(self) -> np.ndarray:
        if self.steps < 1:
            raise ValueError("steps must be positive")
        return np.linspace(self.u_min, self.u_max, self.steps)


def load_config(path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError("config file must hold a flat JSON object")
    known = {f.name for f in fields(SweepConfig)}
    unknown = set(data) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    if "n" in data:
        data["n"] = tuple(int(x) for x in data["n"])
    return data


def config_from(sources: dict) -> SweepConfig:
    cfg = SweepConfig()
    return replace(cfg, **sources)


@dataclass(frozen=True)
class SweepRecord:
    """One row of a model sweep."""

    n: int
    u: float
    qfi: float | None = None
    qfi_over_sn: float | None = None
    e_full: float | None = None
    depth: int | None = None
    bound_coherence: float | None = None
    bound_correlator_sum: float | None = None
    heisenberg_floor: float | None = None
    delta_theta: float | None = None
    error: str = ""


def format_value(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def write_csv(path, columns, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(CSV_SCHEMA_LINE + "\n")
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(format_value(v) for v in row) + "\n")


def _record_to_row(rec: SweepRecord) -> tuple:
    return (rec.n, rec.u, rec.qfi, rec.qfi_over_sn, rec.e_full, rec.depth,
            rec.bound_coherence, rec.bound_correlator_sum, rec.heisenberg_floor,
            rec.delta_theta, rec.error.replace(",", ";"))


def _finish_record(n: int, u: float, qfi: float, e_full: float,
                   coherence: float, corr_sum: float | None) -> SweepRecord:
    return SweepRecord(
        n=n,
        u=float(u),
        qfi=qfi,
        qfi_over_sn=qfi / n,
        e_full=e_full,
        depth=nonlocality_depth(e_full, n),
        bound_coherence=coherence,
        bound_correlator_sum=corr_sum,
        heisenberg_floor=qfi_mod.heisenberg_implication(e_full, n),
        delta_theta=qfi ** -0.5 if qfi > 0 else None,
    )


def _ising_point(n: int, u: float, correlator_bound_cap: int,
                 bound_max_order: int | None, solver: dict) -> SweepRecord:
    try:
        _, state = ising_mod.ising_ground_state(ising_mod.IsingParams(n, u), **solver)
        qfi = qfi_mod.qfi_pure(state)
        e_full = bell_correlator(state, CorrelatorSpec.full(n)).value
        coherence = qfi_mod.bound_coherence(state)
        corr_sum = None
        if n <= correlator_bound_cap:
            corr_sum = qfi_mod.bound_correlator_sum(state, max_order=bound_max_order)
        return _finish_record(n, u, qfi, e_full, coherence, corr_sum)
    except (ConvergenceError, ValueError, FloatingPointError) as exc:
        return SweepRecord(n=n, u=float(u), error=f"{type(exc).__name__}: {exc}")


def _two_mode_point(n: int, u: float, convention: str,
                    bound_max_order: int | None) -> SweepRecord:
    try:
        params = twomode_mod.TwoModeParams(n, u, convention)
        _, state = twomode_mod.two_mode_ground_state(params)
        qfi = qfi_mod.qfi_pure(state)
        e_full = twomode_mod.symmetric_correlator(state, n, 0).value
        coherence = qfi_mod.bound_coherence(state)
        corr_sum = None
        if n <= twomode_mod.SYMMETRIC_SUM_MAX_ATOMS:
            corr_sum = twomode_mod.symmetric_bound_correlator_sum(
                state, max_order=bound_max_order)
        return _finish_record(n, u, qfi, e_full, coherence, corr_sum)
    except (ConvergenceError, ValueError, FloatingPointError) as exc:
        return SweepRecord(n=n, u=float(u), error=f"{type(exc).__name__}: {exc}")


def _run_pool(tasks, threads: int):
    """Evaluate tasks (callables) preserving order; the pool size never changes results."""
    if threads <= 1:
        return [task() for task in tasks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda task: task(), tasks))


def run_ising_sweep(n_list, u_grid, out_path, *, threads: int = 1,
                    correlator_bound_cap: int = 14, bound_max_order: int | None = None,
                    solver: dict | None = None) -> list[SweepRecord]:
    """Ground-state sweep of the Ising chain; writes CSV and returns the records."""
    solver = dict(solver or {})
    tasks = [
        (lambda n=n, u=u: _ising_point(n, float(u), correlator_bound_cap,
                                       bound_max_order, solver))
        for n in n_list for u in u_grid
    ]
    records = _run_pool(tasks, threads)
    write_csv(out_path, SWEEP_COLUMNS, [_record_to_row(r) for r in records])
    return records


def run_two_mode_sweep(n_list, u_grid, out_path, *, threads: int = 1,
                       convention: str = "scaled",
                       bound_max_order: int | None = None) -> list[SweepRecord]:
    """Ground-state sweep of the two-mode model in the Dicke subspace."""
    tasks = [
        (lambda n=n, u=u: _two_mode_point(n, float(u), convention, bound_max_order))
        for n in n_list for u in u_grid
    ]
    records = _run_pool(tasks, threads)
    write_csv(out_path, SWEEP_COLUMNS, [_record_to_row(r) for r in records])
    return records


def run_derivative_scan(n_list, u_grid, out_path, *, model: str = "twomode",
                        threads: int = 1, convention: str = "scaled",
                        solver: dict | None = None) -> list[tuple]:
    """QFI derivative with respect to |u| plus the Bell-correlation onset flag.

    The onset flag marks the first grid point, scanning in increasing |u|,
    whose full-N correlator exceeds 2^-N.  Derivatives are computed per
    contiguous run of successful points; runs shorter than three points leave
    the column empty.
    """
    u_grid = np.asarray(list(u_grid), dtype=float)
    if len(u_grid) < 3:
        raise ValueError("need at least three grid points")
    rows: list[tuple] = []
    for n in n_list:
        if model == "ising":
            solver_args = dict(solver or {})
            tasks = [(lambda n=n, u=u: _ising_point(n, float(u), 0, None, solver_args))
                     for u in u_grid]
        elif model == "twomode":
            tasks = [(lambda n=n, u=u: _two_mode_point(n, float(u), convention, 0))
                     for u in u_grid]
        else:
            raise ValueError(f"unknown model {model!r}")
        records = _run_pool(tasks, threads)

        deriv: list[float | None] = [None] * len(records)
        good = [i for i, r in enumerate(records) if not r.error]
        for segment in _contiguous(good):
            if len(segment) < 3:
                continue
            series = [(records[i].u, records[i].qfi) for i in segment]
            for i, (_, d) in zip(segment, qfi_mod.derivative_scan(series)):
                deriv[i] = d

        onset_index = None
        for i in sorted(good, key=lambda i: abs(records[i].u)):
            if exceeds(records[i].e_full, 2.0 ** (-n)):
                onset_index = i
                break
        for i, rec in enumerate(records):
            flag = 1 if i == onset_index else 0
            rows.append((rec.n, rec.u, deriv[i], rec.e_full, flag,
                         rec.error.replace(",", ";")))
    write_csv(out_path, DERIVATIVE_COLUMNS, rows)
    return rows


def _contiguous(indices):
    run: list[int] = []
    for i in indices:
        if run and i != run[-1] + 1:
            yield run
            run = []
        run.append(i)
    if run:
        yield run
