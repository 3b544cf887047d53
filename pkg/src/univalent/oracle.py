"""Brute-force evidence about injectivity.

A clean scan means "no collision found at this resolution", never "univalent".
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .analytic_fn import (
    AnalyticFn,
    Disk,
    Polar,
    SampleGrid,
    deriv,
    difference_quotient,
    evaluate,
    make_grid,
    polar_spacing,
)
from ._search import pair_projector, pattern_search, smallest_pairs
from .errors import DomainExceeded, ResolutionTooLow, ZeroParameter

MIN_SEPARATION = 1e-3
COLLISION_TOL = 1e-8


@dataclass(frozen=True)
class CollisionReport:
    found: bool
    z1: complex
    z2: complex
    residual: float
    separation: float
    quotient_modulus: float
    pairs_scanned: int


def pairwise_scan(
    f: AnalyticFn,
    disk: Disk,
    rings: int = 48,
    spokes: int = 48,
    refine_iters: int = 60,
    min_separation: float = MIN_SEPARATION,
    collision_tol: float = COLLISION_TOL,
) -> CollisionReport:
    """Look for ``z1 != z2`` with ``f(z1) = f(z2)``.

    Pairs closer than ``min_separation`` are excluded from both the scan and
    the refinement, so zeros of ``f'`` are not mistaken for collisions; those
    are the business of :func:`local_univalence`.
    """
    if not disk.radius < f.analyticity_radius:
        raise DomainExceeded(f"disk radius {disk.radius} must be below {f.analyticity_radius}")
    if rings * spokes < 4:
        raise ResolutionTooLow(f"rings * spokes = {rings * spokes} < 4")
    pts = make_grid(disk, Polar(rings, spokes)).points
    best, scanned = smallest_pairs(f, pts, keep=8, include_diagonal=False,
                                   min_separation=min_separation)
    if not best:
        raise ResolutionTooLow("no grid pair satisfies the minimum separation")

    def objective(x):
        return abs(difference_quotient(f, complex(x[0], x[1]), complex(x[2], x[3])))

    project = pair_projector(disk, min_separation)
    step = polar_spacing(disk, rings, spokes)
    winner = None
    for _, i, j in best:
        a, b = complex(pts[i]), complex(pts[j])
        x, fx, _ = pattern_search(objective, [a.real, a.imag, b.real, b.imag], step,
                                  refine_iters, project)
        if winner is None or fx < winner[0]:
            winner = (fx, x)
    qm, x = winner
    z1, z2 = complex(x[0], x[1]), complex(x[2], x[3])
    residual = abs(evaluate(f, z1) - evaluate(f, z2))
    return CollisionReport(
        found=qm <= collision_tol,
        z1=z1,
        z2=z2,
        residual=float(residual),
        separation=abs(z1 - z2),
        quotient_modulus=float(qm),
        pairs_scanned=scanned,
    )


def local_univalence(f: AnalyticFn, disk: Disk, grid: Optional[SampleGrid] = None,
                     polish: bool = True) -> tuple[float, complex]:
    """Smallest ``|f'|`` over the samples and its location.

    With ``polish`` the best sample is improved by compass search and a few
    Newton steps on ``f' = 0`` inside the disk, so a critical point between
    grid nodes is still located to roundoff.
    """
    if grid is None:
        grid = make_grid(disk, Polar(32, 64))
    df = deriv(f)
    pts = np.asarray(grid.points)
    vals = np.abs(evaluate(df, pts))
    k = int(np.argmin(vals))
    best, w = float(vals[k]), complex(pts[k])
    if not polish:
        return best, w

    def objective(x):
        return abs(evaluate(df, complex(x[0], x[1])))

    def project(x):
        z = disk.project(complex(x[0], x[1]))
        return [z.real, z.imag]

    x, fx, _ = pattern_search(objective, [w.real, w.imag], disk.radius / 32, 80, project)
    if fx < best:
        best, w = fx, complex(x[0], x[1])
    d2 = deriv(df)
    z = w
    for _ in range(8):
        slope = evaluate(d2, z)
        if slope == 0:
            break
        z = z - evaluate(df, z) / slope
        if abs(z) > disk.radius:
            break
        v = abs(evaluate(df, z))
        if v < best:
            best, w = v, z
    return float(best), w


def quadratic_collision(a: complex) -> Optional[tuple[complex, complex]]:
    """A collision pair in the unit disk for ``z + a z^2``, or None if there is none.

    ``f(z1) = f(z2)`` with ``z1 != z2`` iff ``z1 + z2 = -1/a``; such a pair fits
    in the open unit disk iff the midpoint ``m = -1/(2a)`` does, i.e. iff
    ``|a| > 1/2``.  The pair is ``m +- i t m/|m|`` with ``t = (1 - |m|)/2``,
    which keeps both points inside because ``|m|^2 + t^2 < 1``.
    """
    a = complex(a)
    if a == 0:
        raise ZeroParameter("a must be nonzero")
    m = -1 / (2 * a)
    r = abs(m)
    if r >= 1:
        return None
    t = 0.5 * (1 - r)
    u = 1j * m / r
    return m + t * u, m - t * u


def unit_disk_margin(z: complex) -> float:
    """Distance from ``z`` to the unit circle (positive inside)."""
    return 1.0 - math.hypot(z.real, z.imag)
