"""Self-contained property batteries with a machine-readable report.

Each check re-derives its expectations independently (dense operator
products, explicit double sums, random-state fuzzing) and reports a single
pass/fail with a short detail string.  The report is a deterministic function
of the seed: no timestamps, no paths, fixed key order.
"""

from __future__ import annotations

import itertools
import json
import os
import tempfile

import numpy as np

from . import qfi as qfi_mod
from . import twomode as twomode_mod
from .correlators import CorrelatorSpec, bell_correlator, depth_threshold
from .hilbert import (
    DensityMatrix,
    PureState,
    SIGMA_X,
    SIGMA_Z,
    dimension,
    ghz_state,
    ladder_apply,
    pauli_apply,
    product_plus_state,
    random_density_matrix,
    random_pure_state,
)
from .ising import IsingParams, ising_ground_state, ising_matvec, parity_expectation
from .sweep import run_ising_sweep, run_two_mode_sweep
from .twomode import TwoModeParams, dicke_to_full, two_mode_ground_state

REPORT_SCHEMA = 1


def _rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence((seed, index)))


def _detail(value: float) -> str:
    return format(float(value), ".3e")


# --- individual checks; each returns (ok, detail) ---

def check_pauli_algebra(seed):
    rng = _rng(seed, 1)
    worst = 0.0
    for n in range(1, 5):
        state = random_pure_state(n, rng)
        for site in range(n):
            for axis in "xyz":
                twice = pauli_apply(axis, site, pauli_apply(axis, site, state))
                worst = max(worst, float(np.max(np.abs(twice.amplitudes - state.amplitudes))))
            xy = pauli_apply("x", site, pauli_apply("y", site, state))
            yx = pauli_apply("y", site, pauli_apply("x", site, state))
            zz = pauli_apply("z", site, state)
            comm = xy.amplitudes - yx.amplitudes - 2j * zz.amplitudes
            worst = max(worst, float(np.max(np.abs(comm))))
    return worst < 1e-12, f"max deviation {_detail(worst)}"


def check_ladder_projector(seed):
    worst = 0.0
    for n in (1, 2):
        specs = []
        sites = range(n)
        for k_plus in range(n + 1):
            for plus in itertools.combinations(sites, k_plus):
                rest = [s for s in sites if s not in plus]
                for k_minus in range(len(rest) + 1):
                    for minus in itertools.combinations(rest, k_minus):
                        if plus or minus:
                            specs.append((plus, minus))
        for plus, minus in specs:
            for b in range(dimension(n)):
                amps = np.zeros(dimension(n), dtype=complex)
                amps[b] = 1.0
                state = PureState(n, amps)
                once = ladder_apply(ladder_apply(state, plus, minus), minus, plus)
                twice = ladder_apply(ladder_apply(once, plus, minus), minus, plus)
                worst = max(worst, float(np.max(np.abs(twice.amplitudes - once.amplitudes))))
    return worst < 1e-12, f"max projector deviation {_detail(worst)}"


def check_generator_trace(seed):
    from .hilbert import generator_eigenvalue
    worst = 0.0
    for n in range(1, 11):
        total = sum(generator_eigenvalue(b, n) for b in range(dimension(n)))
        worst = max(worst, abs(total))
    return worst == 0.0, f"max eigenvalue sum {_detail(worst)}"


def check_correlator_range(seed):
    rng = _rng(seed, 4)
    worst = -1.0
    for _ in range(200):
        n = int(rng.integers(1, 6))
        state = random_pure_state(n, rng)
        sites = list(range(n))
        rng.shuffle(sites)
        cut = int(rng.integers(1, n + 1))
        chosen = sorted(sites[:cut])
        split = int(rng.integers(0, len(chosen) + 1))
        plus, minus = tuple(chosen[:split]), tuple(chosen[split:])
        if not plus and not minus:
            continue
        value = bell_correlator(state, CorrelatorSpec(plus, minus)).value
        if value < -1e-15 or value > 0.25 + 1e-12:
            return False, f"correlator {value} outside [0, 1/4]"
        worst = max(worst, value)
    return True, f"max correlator {_detail(worst)}"


def check_correlator_site_independence(seed):
    worst = 0.0
    for n in range(2, 7):
        for state in (product_plus_state(n), ghz_state(n)):
            for n_plus in range(n + 1):
                for n_minus in range(n - n_plus + 1):
                    if n_plus + n_minus == 0:
                        continue
                    values = []
                    for plus in itertools.combinations(range(n), n_plus):
                        rest = [s for s in range(n) if s not in plus]
                        for minus in itertools.combinations(rest, n_minus):
                            spec = CorrelatorSpec(tuple(plus), tuple(minus))
                            values.append(bell_correlator(state, spec).value)
                    worst = max(worst, max(values) - min(values))
    return worst < 1e-12, f"max spread over site choices {_detail(worst)}"


def check_depth_thresholds(seed):
    ok = True
    for n in range(4, 17):
        ok &= depth_threshold(n, n) == 0.125
        ok &= depth_threshold(n - 1, n) == 0.0625
        ok &= depth_threshold(3, n) == 2.0 ** (-n)
    return ok, "ladder endpoints 1/8, 1/16, 2^-N"


def check_correlator_swap_symmetry(seed):
    rng = _rng(seed, 7)
    worst = 0.0
    for _ in range(50):
        n = int(rng.integers(2, 5))
        state = random_pure_state(n, rng, real=True)
        sites = list(range(n))
        rng.shuffle(sites)
        cut = int(rng.integers(2, n + 1))
        chosen = sorted(sites[:cut])
        split = int(rng.integers(0, len(chosen) + 1))
        plus, minus = tuple(chosen[:split]), tuple(chosen[split:])
        if not plus and not minus:
            continue
        fwd = bell_correlator(state, CorrelatorSpec(plus, minus)).value
        rev = bell_correlator(state, CorrelatorSpec(minus, plus)).value
        worst = max(worst, abs(fwd - rev))
    return worst < 1e-12, f"max |E(S+,S-) - E(S-,S+)| {_detail(worst)}"


def check_bound_chain(seed):
    rng = _rng(seed, 8)
    worst_qfi = np.inf
    worst_eq = 0.0
    worst_sum = np.inf
    for trial in range(500):
        n = int(rng.integers(2, 7))
        if trial % 2 == 0:
            state = random_pure_state(n, rng)
            rho = DensityMatrix.from_pure(state)
            qfi = qfi_mod.qfi_pure(state)
            corr = qfi_mod.bound_correlator_sum(state)
        else:
            rho = random_density_matrix(n, rng)
            qfi = qfi_mod.qfi_spectral(rho)
            corr = qfi_mod.bound_correlator_sum(rho)
        trace = qfi_mod.bound_trace(rho)
        coher = qfi_mod.bound_coherence(rho)
        worst_qfi = min(worst_qfi, qfi - trace)
        worst_eq = max(worst_eq, abs(trace - coher))
        worst_sum = min(worst_sum, trace - corr)
        if qfi - trace < -1e-9 or abs(trace - coher) > 1e-10 or trace - corr < -1e-9:
            return False, (f"chain violated: qfi-trace={_detail(qfi - trace)} "
                           f"|trace-coherence|={_detail(worst_eq)} "
                           f"trace-sum={_detail(trace - corr)}")
    return True, (f"min qfi-trace {_detail(worst_qfi)}, max |trace-coherence| "
                  f"{_detail(worst_eq)}, min trace-sum {_detail(worst_sum)}")


def check_pure_consistency(seed):
    rng = _rng(seed, 9)
    worst = 0.0
    for _ in range(50):
        n = int(rng.integers(2, 7))
        state = random_pure_state(n, rng)
        direct = qfi_mod.qfi_pure(state)
        spectral = qfi_mod.qfi_spectral(DensityMatrix.from_pure(state))
        worst = max(worst, abs(direct - spectral))
    return worst < 1e-9, f"max |pure - spectral| {_detail(worst)}"


def check_complex_sum_inequality(seed):
    rng = _rng(seed, 10)
    for n in range(1, 9):
        size = 1 << n
        for _ in range(1000):
            vals = rng.normal(size=size) + 1j * rng.normal(size=size)
            lhs = float(np.sum(np.abs(vals) ** 2))
            rhs = float(abs(np.sum(vals)) ** 2) / size
            if lhs < rhs - 1e-9 * max(1.0, rhs):
                return False, f"inequality violated at n={n}"
        constant = np.full(size, 0.3 - 0.4j)
        lhs = float(np.sum(np.abs(constant) ** 2))
        rhs = float(abs(np.sum(constant)) ** 2) / size
        if abs(lhs - rhs) > 1e-12 * max(1.0, lhs):
            return False, f"equality case violated at n={n}"
    return True, "8000 random sets plus equality cases"


def check_product_saturation(seed):
    worst = 0.0
    for n in range(2, 11):
        state = product_plus_state(n)
        qfi = qfi_mod.qfi_pure(state)
        corr = qfi_mod.bound_correlator_sum(state)
        worst = max(worst, abs(qfi - n), abs(corr - n))
    return worst < 1e-9, f"max deviation from N {_detail(worst)}"


def _sweep_rows(seed, tmpdir):
    ising_rows = run_ising_sweep(
        (6, 8), np.linspace(-3.0, 0.0, 13), os.path.join(tmpdir, "ising.csv"))
    two_rows = run_two_mode_sweep(
        (50,), np.linspace(-3.0, 0.0, 21), os.path.join(tmpdir, "twomode.csv"))
    return ising_rows + two_rows


def check_heisenberg_floor(seed):
    with tempfile.TemporaryDirectory() as tmpdir:
        rows = _sweep_rows(seed, tmpdir)
    worst = np.inf
    for rec in rows:
        if rec.error:
            return False, f"sweep error at n={rec.n}, u={rec.u}: {rec.error}"
        worst = min(worst, rec.qfi - rec.heisenberg_floor)
    return worst > -1e-6, f"min qfi - floor {_detail(worst)}"


def check_row_bound_chain(seed):
    with tempfile.TemporaryDirectory() as tmpdir:
        rows = _sweep_rows(seed, tmpdir)
    worst = np.inf
    for rec in rows:
        if rec.error:
            return False, f"sweep error at n={rec.n}, u={rec.u}"
        worst = min(worst, rec.qfi - rec.bound_coherence)
        if rec.bound_correlator_sum is not None:
            worst = min(worst, rec.bound_coherence - rec.bound_correlator_sum)
    return worst > -1e-6, f"min successive bound gap {_detail(worst)}"


def check_ising_parity(seed):
    worst = 0.0
    for n in (6, 9, 10):
        for u in (-2.5, -1.0, -0.2):
            _, state = ising_ground_state(IsingParams(n, u))
            worst = max(worst, abs(parity_expectation(state) - 1.0))
    return worst < 1e-9, f"max |<parity> - 1| {_detail(worst)}"


def check_ising_variational(seed):
    rng = _rng(seed, 14)
    for n, u in ((6, -1.3), (8, -0.6)):
        params = IsingParams(n, u)
        energy, state = ising_ground_state(params)
        expect = float(np.real(np.vdot(state.amplitudes,
                                       ising_matvec(params, state).amplitudes)))
        if abs(expect - energy) > 1e-9:
            return False, f"<H> differs from eigenvalue by {_detail(expect - energy)}"
        for _ in range(100):
            probe = random_pure_state(n, rng)
            probe_energy = float(np.real(np.vdot(probe.amplitudes,
                                                 ising_matvec(params, probe).amplitudes)))
            if probe_energy < energy - 1e-9:
                return False, "random state found below the reported ground energy"
    return True, "eigenvalue matches <H>; 200 random states lie above"


def check_ising_dense_lanczos(seed):
    worst = 0.0
    for n in (10, 12):
        params = IsingParams(n, -2.0)
        e_dense, s_dense = ising_ground_state(params, method="dense")
        e_iter, s_iter = ising_ground_state(params, method="lanczos")
        spec = CorrelatorSpec.full(n)
        corr_dense = bell_correlator(s_dense, spec).value
        corr_iter = bell_correlator(s_iter, spec).value
        worst = max(worst, abs(e_dense - e_iter), abs(corr_dense - corr_iter))
    return worst < 1e-8, f"max dense/iterative gap {_detail(worst)}"


def check_dicke_full_agreement(seed):
    n, u = 6, -1.5
    params = TwoModeParams(n, u)
    energy_d, dicke = two_mode_ground_state(params)
    full = dicke_to_full(dicke)
    # oracle: dense Hamiltonian on the full 2^N space assembled from Pauli products
    dim = dimension(n)
    jx = np.zeros((dim, dim), dtype=complex)
    jz = np.zeros((dim, dim), dtype=complex)
    for k in range(n):
        jx += _site_operator(SIGMA_X, k, n)
        jz += _site_operator(SIGMA_Z, k, n)
    ham = -0.5 * jx + (u / n) * (0.5 * jz) @ (0.5 * jz)
    energy_full = float(np.real(np.vdot(full.amplitudes, ham @ full.amplitudes)))
    gap_energy = abs(energy_full - energy_d)
    gap_qfi = abs(qfi_mod.qfi_pure(dicke) - qfi_mod.qfi_pure(full))
    corr_d = twomode_mod.symmetric_correlator(dicke, n, 0).value
    corr_f = bell_correlator(full, CorrelatorSpec.full(n)).value
    gap_corr = abs(corr_d - corr_f)
    gap_sum = abs(twomode_mod.symmetric_bound_correlator_sum(dicke)
                  - qfi_mod.bound_correlator_sum(full))
    worst = max(gap_energy, gap_qfi, gap_corr, gap_sum)
    return worst < 1e-9, f"max Dicke/full gap {_detail(worst)}"


def _site_operator(matrix, site, n_qubits):
    out = np.array([[1.0 + 0.0j]])
    for k in range(n_qubits):
        out = np.kron(matrix, out) if k == site else np.kron(np.eye(2, dtype=complex), out)
    return out


def check_ising_monotonic(seed):
    for n in (6, 8, 10):
        grid = np.linspace(-3.0, 0.0, 21)
        qfis = []
        for u in grid:
            _, state = ising_ground_state(IsingParams(n, float(u)))
            qfis.append(qfi_mod.qfi_pure(state))
        diffs = np.diff(qfis)       # u ascending = |u| descending
        if np.any(diffs > 1e-6):
            return False, f"QFI not monotone in |u| at n={n}"
    return True, "QFI non-decreasing in |u| for N=6,8,10"


def check_depth_monotonic(seed):
    with tempfile.TemporaryDirectory() as tmpdir:
        rows = run_ising_sweep((6, 10), np.linspace(-3.0, 0.0, 25),
                               os.path.join(tmpdir, "ising.csv"))
    by_n: dict[int, list] = {}
    for rec in rows:
        by_n.setdefault(rec.n, []).append(rec)
    for n, recs in by_n.items():
        depths = [r.depth for r in recs]       # u ascending
        if any(b > a for a, b in zip(depths, depths[1:])):
            return False, f"depth not monotone in |u| at n={n}"
    return True, "depth bands nested along |u|"


def check_csv_determinism(seed):
    with tempfile.TemporaryDirectory() as tmpdir:
        paths = [os.path.join(tmpdir, f"out{i}.csv") for i in range(3)]
        grid = np.linspace(-2.0, 0.0, 7)
        run_ising_sweep((4, 5), grid, paths[0], threads=1)
        run_ising_sweep((4, 5), grid, paths[1], threads=1)
        run_ising_sweep((4, 5), grid, paths[2], threads=4)
        blobs = [open(p, "rb").read() for p in paths]
    if blobs[0] != blobs[1]:
        return False, "repeated run differs"
    if blobs[0] != blobs[2]:
        return False, "thread count changed the output"
    return True, "byte-identical across repeats and thread counts"


CHECKS = (
    ("pauli-algebra", check_pauli_algebra),
    ("ladder-projector", check_ladder_projector),
    ("generator-trace-zero", check_generator_trace),
    ("correlator-range", check_correlator_range),
    ("correlator-site-independence", check_correlator_site_independence),
    ("depth-ladder-thresholds", check_depth_thresholds),
    ("correlator-swap-symmetry", check_correlator_swap_symmetry),
    ("qfi-bound-chain", check_bound_chain),
    ("qfi-pure-consistency", check_pure_consistency),
    ("complex-sum-inequality", check_complex_sum_inequality),
    ("product-state-saturation", check_product_saturation),
    ("heisenberg-floor", check_heisenberg_floor),
    ("row-bound-chain", check_row_bound_chain),
    ("ising-parity", check_ising_parity),
    ("ising-variational", check_ising_variational),
    ("ising-dense-vs-lanczos", check_ising_dense_lanczos),
    ("dicke-vs-full", check_dicke_full_agreement),
    ("ising-qfi-monotone", check_ising_monotonic),
    ("depth-monotone", check_depth_monotonic),
    ("csv-determinism", check_csv_determinism),
)


def verify_suite(seed: int = 0, out_path=None,
                 inject_failure: bool = False) -> tuple[bool, dict]:
    """Run every property battery; returns (all_passed, report).

    `inject_failure` adds a deliberately failing check, as a negative control
    for pipelines that gate on the exit code.
    """
    results = []
    for name, func in CHECKS:
        ok, detail = func(seed)
        results.append({"check": name, "passed": bool(ok), "detail": detail})
    if inject_failure:
        results.append({"check": "injected-failure", "passed": False,
                        "detail": "negative control requested"})
    report = {
        "schema": REPORT_SCHEMA,
        "seed": int(seed),
        "passed": all(r["passed"] for r in results),
        "checks": results,
    }
    if out_path is not None:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    return report["passed"], report
