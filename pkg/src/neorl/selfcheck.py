"""Built-in verification suites, runnable from the CLI.

Three independent oracles cross-check the core machinery:
  * value iteration on a small deterministic grid, against the learner bank
    driven to convergence by exhaustive transition sweeps;
  * brute-force receptive-field membership, against the one-hot index math;
  * analytic frequency/impulse properties of the first-order low-pass filter.
The oracle code deliberately avoids the code paths it is checking.
"""

from __future__ import annotations

import cmath
import math
import random
import time

import numpy as np

from .encoding import (
    CellIndex,
    Modality,
    NresMap,
    UNIT_SQUARE,
    Vec2,
    axis_edge,
    cell_index,
    ovc_vector,
)
from .harness import FilterConfig, ProficiencySeries, butter_coefficients, butterworth_lowpass
from .learners import LearnerBank, Transition

# Test-world move deltas per action index (N, S, E, W) on a (row, col) grid.
_GRID_DELTAS = ((1, 0), (-1, 0), (0, 1), (0, -1))


def grid_moves(n: int) -> list[tuple[int, int, int]]:
    """All (state, action, next_state) triples that actually move on an n x n grid."""
    moves = []
    for row in range(n):
        for col in range(n):
            for a, (dr, dc) in enumerate(_GRID_DELTAS):
                r2, c2 = row + dr, col + dc
                if 0 <= r2 < n and 0 <= c2 < n:
                    moves.append((row * n + col, a, r2 * n + c2))
    return moves


def value_iteration_q(n: int, target_flat: int, gamma: float, tol: float = 1e-12) -> np.ndarray:
    """Optimal q(s, a) toward one target cell: reward 1 on arrival, then stop.

    Entries whose action bumps a wall (no state change, so never learned)
    are left at 0, matching a zero-initialized bank.
    """
    moves = grid_moves(n)
    n_cells = n * n
    v = np.zeros(n_cells)
    while True:
        q = np.zeros((n_cells, 4))
        for s, a, s2 in moves:
            q[s, a] = 1.0 if s2 == target_flat else gamma * v[s2]
        v_new = q.max(axis=1)
        if np.abs(v_new - v).max() < tol:
            return q
        v = v_new


def _cell_of_flat(flat: int, n: int) -> CellIndex:
    return CellIndex(flat // n, flat % n, flat)


def check_oracle_equivalence(n: int = 5, gamma: float = 0.95, alpha: float = 0.5):
    """Drive a bank to convergence by sweeps; compare every target to the oracle."""
    start = time.perf_counter()
    n_cells = n * n
    bank = LearnerBank("grid_check", n_cells, alpha=alpha, gamma=gamma)
    moves = grid_moves(n)
    transitions = [
        Transition(0, _cell_of_flat(s, n), a, _cell_of_flat(s2, n)) for s, a, s2 in moves
    ]
    for _ in range(100_000):
        before = bank.q.copy()
        for t in transitions:
            bank.update(t)
        if np.abs(bank.q - before).max() < 1e-9:
            break
    else:
        return False, "bank never converged"
    worst = 0.0
    for d in range(n_cells):
        oracle = value_iteration_q(n, d, gamma)
        worst = max(worst, float(np.abs(bank.q[:, d, :] - oracle).max()))
    elapsed = time.perf_counter() - start
    ok = worst < 1e-6 and elapsed < 10.0
    return ok, f"max |q - value_iteration| = {worst:.3g}, {elapsed:.2f}s"


def _axis_cells_containing(v: float, lo: float, hi: float, n: int) -> list[int]:
    """Brute-force scan of all n half-open intervals (last one closed at hi)."""
    out = []
    for k in range(n):
        left = axis_edge(lo, hi, n, k)
        right = axis_edge(lo, hi, n, k + 1)
        if v >= left and (v < right or (k == n - 1 and v <= hi)):
            out.append(k)
    return out


def cells_containing(p: Vec2, nmap: NresMap) -> list[CellIndex]:
    """All cells whose receptive field contains p, by exhaustive axis scan."""
    n = nmap.resolution
    b = nmap.bounds
    cols = _axis_cells_containing(p[0], b.min.x, b.max.x, n)
    rows = _axis_cells_containing(p[1], b.min.y, b.max.y, n)
    return [CellIndex(r, c, r * n + c) for r in rows for c in cols]


def check_encoding_partition(resolutions=(2, 3, 5, 7, 11, 13, 20, 40), per_cell: int = 3):
    """Sub-cell sampling: every point sits in exactly one receptive field."""
    for n in resolutions:
        nmap = NresMap(n, UNIT_SQUARE, Modality.PC)
        steps = n * per_cell
        coords = [i / steps for i in range(steps + 1)]
        for x in coords:
            cols = _axis_cells_containing(x, 0.0, 1.0, n)
            if len(cols) != 1:
                return False, f"N{n}: x={x} sits in {len(cols)} column intervals"
        for y in coords:
            rows = _axis_cells_containing(y, 0.0, 1.0, n)
            if len(rows) != 1:
                return False, f"N{n}: y={y} sits in {len(rows)} row intervals"
        # Index function must agree with brute-force membership on a 2D sample.
        for x in coords[:: max(1, per_cell - 1)]:
            for y in coords[:: max(1, per_cell - 1)]:
                hits = cells_containing(Vec2(x, y), nmap)
                if len(hits) != 1 or cell_index(Vec2(x, y), nmap) != hits[0]:
                    return False, f"N{n}: membership mismatch at ({x}, {y})"
    rng = random.Random(1234)
    for _ in range(10_000):
        a = Vec2(rng.random(), rng.random())
        b = Vec2(rng.random(), rng.random())
        fwd = ovc_vector(a, b)
        rev = ovc_vector(b, a)
        if fwd.x != -rev.x or fwd.y != -rev.y:
            return False, f"antisymmetry broken for {a}, {b}"
        zero = ovc_vector(a, a)
        if zero != (0.0, 0.0):
            return False, f"identity broken for {a}"
    return True, f"N in {tuple(resolutions)}, 10k vector pairs"


def check_filter_response(cutoff: float = 0.01):
    """Analytic first-order low-pass properties, no filtering library involved."""
    b0, b1, a1 = butter_coefficients(cutoff)
    if b0 != b1:
        return False, "asymmetric numerator"
    dc_gain = (b0 + b1) / (1.0 + a1)
    if abs(dc_gain - 1.0) > 1e-12:
        return False, f"DC gain {dc_gain}"
    z = cmath.exp(2j * math.pi * cutoff)
    mag = abs((b0 + b1 / z) / (1.0 + a1 / z))
    if abs(mag - 1.0 / math.sqrt(2.0)) > 1e-12:
        return False, f"cutoff magnitude {mag}, want -3 dB"
    # Constant input passes through from the very first sample.
    const = ProficiencySeries(0.2, np.full(200, 5.0), 1)
    out = butterworth_lowpass(const, FilterConfig(cutoff_normalized=cutoff))
    if np.abs(out.values - 5.0).max() > 1e-9:
        return False, "constant input not preserved"
    # Impulse tail decays geometrically with ratio -a1.
    impulse = np.zeros(50)
    impulse[0] = 1.0
    out = butterworth_lowpass(ProficiencySeries(0.2, impulse, 1), FilterConfig(cutoff_normalized=cutoff))
    y = out.values
    for i in range(1, len(y) - 1):
        if abs(y[i + 1] - (-a1) * y[i]) > 1e-12:
            return False, f"impulse tail breaks at sample {i}"
    return True, f"cutoff {cutoff}: unity DC, -3 dB at cutoff, geometric tail"


CHECKS = (
    ("oracle_equivalence", check_oracle_equivalence),
    ("encoding_partition", check_encoding_partition),
    ("filter_response", check_filter_response),
)


def run_all(verbose: bool = True) -> bool:
    all_ok = True
    for name, fn in CHECKS:
        ok, detail = fn()
        all_ok &= ok
        if verbose:
            print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
    return all_ok
