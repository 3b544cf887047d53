"""Pair scanning and derivative-free refinement shared by kconstant and oracle."""

from __future__ import annotations

import heapq
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Optional, Sequence

import numpy as np

from .analytic_fn import SWITCH_EPS, AnalyticFn, Disk, _evaluate_shifted, deriv, evaluate

THREADS_ENV = "UNIVALENT_THREADS"
_ROW_CHUNK = 128


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def smallest_pairs(
    f: AnalyticFn,
    points: np.ndarray,
    keep: int = 8,
    include_diagonal: bool = True,
    min_separation: float = 0.0,
    switch_eps: float = SWITCH_EPS,
) -> tuple[list[tuple[float, int, int]], int]:
    """The ``keep`` pairs ``i <= j`` with the smallest difference-quotient modulus.

    Returns ``(pairs, pairs_scanned)`` where each pair is ``(modulus, i, j)``
    sorted ascending, ties broken by index so the result is deterministic.
    """
    pts = np.asarray(points, dtype=complex)
    n = len(pts)
    shifted = _evaluate_shifted(f, pts)
    dfn = deriv(f)
    dvals = evaluate(dfn, pts) if include_diagonal else None

    def chunk(i0: int) -> tuple[list[tuple[float, int, int]], int]:
        i1 = min(n, i0 + _ROW_CHUNK)
        rows = np.arange(i0, i1)
        a = pts[i0:i1, None]
        diff = a - pts[None, :]
        valid = np.arange(n)[None, :] > rows[:, None]
        sep = np.abs(diff)
        if min_separation > 0:
            valid &= sep >= min_separation
        q = np.full(diff.shape, np.inf)
        far = valid & (sep >= switch_eps)
        num = shifted[i0:i1, None] - shifted[None, :]
        q[far] = np.abs(num[far] / diff[far])
        near = valid & ~far
        if near.any():
            ii, jj = np.nonzero(near)
            mid = 0.5 * (pts[ii + i0] + pts[jj])
            q[ii, jj] = np.abs(evaluate(dfn, mid))
        scanned = int(valid.sum())
        flat = q.ravel()
        k = min(keep, flat.size)
        idx = np.argpartition(flat, k - 1)[:k] if k < flat.size else np.arange(flat.size)
        out = []
        for t in idx:
            v = float(flat[t])
            if np.isfinite(v):
                r, col = divmod(int(t), n)
                out.append((v, r + i0, col))
        if include_diagonal:
            dv = np.abs(dvals[i0:i1])
            for r in np.argsort(dv, kind="stable")[:keep]:
                out.append((float(dv[r]), int(r) + i0, int(r) + i0))
            scanned += i1 - i0
        return out, scanned

    starts = range(0, n, _ROW_CHUNK)
    workers = thread_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(chunk, starts))
    else:
        parts = [chunk(i0) for i0 in starts]
    candidates = [c for part, _ in parts for c in part]
    total = sum(s for _, s in parts)
    return heapq.nsmallest(keep, candidates), total


def pattern_search(
    objective: Callable[[Sequence[float]], float],
    x0: Sequence[float],
    step: float,
    rounds: int,
    project: Optional[Callable[[list[float]], Optional[list[float]]]] = None,
    shrink: float = 0.5,
    min_step: float = 1e-10,
    max_walk: int = 32,
) -> tuple[list[float], float, int]:
    """Coordinate-wise compass search with geometric step reduction.

    Each round tries ``+step`` then ``-step`` along every coordinate, walking
    in a direction for as long as it strictly improves.  A round without any
    improvement multiplies the step by ``shrink``.  ``project`` maps a trial
    point back into the feasible set, or returns None to reject it.

    Returns ``(x, fx, rounds_used)``.  ``fx`` never exceeds ``objective(x0)``.
    """
    x = list(x0)
    fx = objective(x)
    used = 0
    for used in range(1, rounds + 1):
        if step < min_step:
            used -= 1
            break
        improved = False
        for i in range(len(x)):
            for direction in (1.0, -1.0):
                walked = 0
                while walked < max_walk:
                    trial = list(x)
                    trial[i] += direction * step
                    if project is not None:
                        trial = project(trial)
                        if trial is None:
                            break
                    ft = objective(trial)
                    if ft < fx:
                        x, fx = trial, ft
                        improved = True
                        walked += 1
                    else:
                        break
                if walked:
                    break
        if not improved:
            step *= shrink
    return x, fx, used


def pair_projector(disk: Disk, min_separation: float = 0.0):
    """Projection for ``[Re a, Im a, Re b, Im b]`` onto the closed disk squared."""

    def project(x: list[float]) -> Optional[list[float]]:
        a = disk.project(complex(x[0], x[1]))
        b = disk.project(complex(x[2], x[3]))
        if min_separation > 0 and abs(a - b) < min_separation:
            return None
        return [a.real, a.imag, b.real, b.imag]

    return project


def golden_max(fn: Callable[[float], float], lo: float, hi: float,
               iterations: int = 20) -> tuple[float, float]:
    """Golden-section search for a maximum of ``fn`` on ``[lo, hi]``.

    Returns ``(argmax, max)`` over every point evaluated, endpoints included.
    """
    invphi = (np.sqrt(5.0) - 1) / 2
    best_x, best_v = lo, fn(lo)
    v_hi = fn(hi)
    if v_hi > best_v:
        best_x, best_v = hi, v_hi
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = fn(c), fn(d)
    for _ in range(iterations):
        for x, v in ((c, fc), (d, fd)):
            if v > best_v:
                best_x, best_v = x, v
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = fn(d)
    for x, v in ((c, fc), (d, fd)):
        if v > best_v:
            best_x, best_v = x, v
    return float(best_x), float(best_v)
