"""Univalence criteria as decision procedures returning certificates.

Status is three-valued.  ``CERTIFIED`` requires an exact K (closed form or
supplied by the caller); a nonnegative margin obtained with a sampled K is
only ``HEURISTIC``, since a sampled K overestimates the true infimum.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence, Union

import numpy as np

from .analytic_fn import (
    AnalyticFn,
    Disk,
    Polar,
    SampleGrid,
    boundary_points,
    deriv,
    evaluate,
    linear,
    make_grid,
)
from ._search import golden_max
from .errors import (
    ConstantFunction,
    DomainExceeded,
    DomainError,
    NonpositiveC,
    NonpositiveK,
    NwwViolated,
)
from .kconstant import KSource, estimate_K, k_lower_bound_certified
from .zeta import zeta

log = logging.getLogger(__name__)

DEFAULT_BOUNDARY_SAMPLES = 256
GOLDEN_ITERATIONS = 20
INTERIOR_SLACK = 1e-9
ENCLOSING_INFLATION = 1e-6


class Criterion(str, Enum):
    PERTURBATION = "perturbation"
    LINEAR_DISK = "linear_disk"
    NWW = "nww"
    TAYLOR_SUM = "taylor_sum"
    ZETA_TAIL = "zeta_tail"


class Status(str, Enum):
    CERTIFIED = "certified"
    HEURISTIC = "heuristic_certified"
    NOT_CERTIFIED = "not_certified"


Witness = Union[complex, int, None]


@dataclass(frozen=True)
class Certificate:
    criterion: Criterion
    status: Status
    margin: float
    witness: Witness
    k_source: Optional[KSource]
    k_value: Optional[float] = None
    measure: Optional[float] = None  # the quantity compared against K
    notes: tuple[str, ...] = field(default=())


def _status(ok: bool, k_source: Optional[KSource]) -> Status:
    if not ok:
        return Status.NOT_CERTIFIED
    if k_source in (KSource.CLOSED_FORM, KSource.USER_SUPPLIED):
        return Status.CERTIFIED
    return Status.HEURISTIC


def _boundary_extremum(values, disk: Disk, samples: int, sign: float):
    """Max of ``sign * values(z)`` on ``|z| = r``: sampling then golden refinement."""
    pts = boundary_points(disk, samples)
    vals = sign * values(pts)
    k = int(np.argmax(vals))
    h = 2 * math.pi / samples
    theta0 = 2 * math.pi * k / samples

    def along(theta: float) -> float:
        return float(sign * values(disk.radius * complex(math.cos(theta), math.sin(theta))))

    theta, best = golden_max(along, theta0 - h, theta0 + h, GOLDEN_ITERATIONS)
    if best < vals[k]:
        theta, best = theta0, float(vals[k])
    w = disk.radius * complex(math.cos(theta), math.sin(theta))
    return sign * best, w


def sup_deriv_gap(f: AnalyticFn, g: AnalyticFn, disk: Disk,
                  boundary_samples: int = DEFAULT_BOUNDARY_SAMPLES) -> tuple[float, complex]:
    """Supremum of ``|f' - g'|`` over the closed disk, and where it occurs.

    ``f' - g'`` is analytic across the closed disk, so the maximum modulus
    sits on the boundary circle.  Interior grid points are checked anyway and
    included if they exceed the boundary value by more than 1e-9.
    """
    for h in (f, g):
        if not disk.radius < h.analyticity_radius:
            raise DomainExceeded(
                f"disk radius {disk.radius} must be strictly below {h.analyticity_radius}"
            )
    if boundary_samples < 64:
        raise DomainError("boundary_samples must be >= 64")
    gap = deriv(f) - deriv(g)

    def modulus(z):
        return np.abs(evaluate(gap, z))

    s, w = _boundary_extremum(modulus, disk, boundary_samples, 1.0)
    interior = make_grid(disk, Polar(8, max(8, boundary_samples // 4))).points
    iv = modulus(interior)
    k = int(np.argmax(iv))
    if iv[k] > s + INTERIOR_SLACK:
        log.warning("interior sample exceeds boundary maximum: %r > %r", iv[k], s)
        s, w = float(iv[k]), complex(interior[k])
    return float(s), w


def certify_perturbation(f: AnalyticFn, g: AnalyticFn, disk: Disk,
                         k: Optional[float] = None,
                         boundary_samples: int = DEFAULT_BOUNDARY_SAMPLES,
                         **k_options) -> Certificate:
    """Perturbation criterion: ``sup |f' - g'| <= K(g)`` with ``g`` univalent.

    K comes from ``k`` when given, else the closed form, else a sampled
    estimate (which can at best give a heuristic certificate).
    """
    if f.is_constant():
        raise ConstantFunction("f must be non-constant")
    if k is not None:
        if not k > 0:
            raise NonpositiveK(f"K must be positive, got {k!r}")
        k_value, source = float(k), KSource.USER_SUPPLIED
    else:
        exact = k_lower_bound_certified(g, disk)
        if exact is not None:
            k_value, source = exact, KSource.CLOSED_FORM
        else:
            k_value, source = estimate_K(g, disk, **k_options).value, KSource.GRID_REFINED
    s, w = sup_deriv_gap(f, g, disk, boundary_samples)
    margin = k_value - s
    notes: tuple[str, ...] = ()
    if margin == 0 and not g.is_affine():
        notes = ("boundary_case_nonlinear_reference",)
    return Certificate(Criterion.PERTURBATION, _status(margin >= 0, source), margin, w,
                       source, k_value, s, notes)


def _nww_samples(disk: Disk, grid: Optional[SampleGrid], boundary_samples: int) -> np.ndarray:
    pts = [boundary_points(disk, boundary_samples)]
    if grid is not None:
        pts.append(np.asarray(grid.points))
    return np.concatenate(pts)


def check_nww(f: AnalyticFn, disk: Disk, grid: Optional[SampleGrid] = None,
              boundary_samples: int = DEFAULT_BOUNDARY_SAMPLES) -> Certificate:
    """Sampled check of ``Re f' > 0``.

    The margin is the smallest ``Re f'`` over the grid and the boundary
    circle, the latter refined by golden section (``Re f'`` is harmonic, so
    its minimum lies on the boundary).  Only affine ``f`` certify outright.
    """
    if not disk.radius < f.analyticity_radius:
        raise DomainExceeded(f"disk radius {disk.radius} must be below {f.analyticity_radius}")
    df = deriv(f)

    def re_d(z):
        return np.real(evaluate(df, z))

    margin, w = _boundary_extremum(re_d, disk, boundary_samples, -1.0)
    pts = _nww_samples(disk, grid, boundary_samples)
    vals = re_d(pts)
    k = int(np.argmin(vals))
    if vals[k] < margin:
        margin, w = float(vals[k]), complex(pts[k])
    source = KSource.CLOSED_FORM if f.is_affine() else KSource.GRID_REFINED
    return Certificate(Criterion.NWW, _status(margin > 0, source), float(margin), w, source,
                       measure=float(margin))


def enclosing_disk_parameter(f: AnalyticFn, disk: Disk, grid: Optional[SampleGrid] = None,
                             boundary_samples: int = DEFAULT_BOUNDARY_SAMPLES) -> float:
    """A ``c`` with every sampled ``w = f'(z)`` inside ``|w - c| < c``.

    ``|w - c| < c`` holds iff ``c > |w|^2 / (2 Re w)``; the largest such ratio
    over the samples (boundary refined by golden section) is inflated by a
    relative 1e-6.
    """
    df = deriv(f)
    pts = _nww_samples(disk, grid, boundary_samples)
    w = evaluate(df, pts)
    if np.any(w.real <= 0):
        k = int(np.argmin(w.real))
        raise NwwViolated(f"Re f' = {w.real[k]!r} <= 0 at z = {complex(pts[k])!r}")

    def ratio(z):
        v = evaluate(df, z)
        re = np.real(v)
        return np.where(re > 0, np.abs(v) ** 2 / (2 * np.where(re > 0, re, 1.0)), np.inf)

    best = float(np.max(ratio(pts)))
    edge, _ = _boundary_extremum(ratio, disk, boundary_samples, 1.0)
    if not math.isfinite(edge):
        raise NwwViolated("Re f' <= 0 on the boundary circle")
    return (1 + ENCLOSING_INFLATION) * max(best, edge)


def certify_linear_disk(f: AnalyticFn, disk: Disk, c: float,
                        boundary_samples: int = DEFAULT_BOUNDARY_SAMPLES) -> Certificate:
    """``|f' - c| <= c`` on the disk: the perturbation criterion against ``c z``."""
    if f.is_constant():
        raise ConstantFunction("f must be non-constant")
    if not c > 0:
        raise NonpositiveC(f"c must be positive, got {c!r}")
    s, w = sup_deriv_gap(f, linear(c), disk, boundary_samples)
    margin = c - s
    return Certificate(Criterion.LINEAR_DISK, _status(margin >= 0, KSource.USER_SUPPLIED),
                       margin, w, KSource.USER_SUPPLIED, float(c), s)


def _coefficient_gaps(a: Sequence[complex], b: Sequence[complex]) -> list[float]:
    """``|a_n - b_n|`` for ``n = 0..max(len)-1``; absent entries count as zero."""
    n = max(len(a), len(b))
    return [abs((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) for i in range(n)]


def taylor_sum_criterion(a: Sequence[complex], b: Sequence[complex], k: float) -> Certificate:
    """Coefficient criterion ``sum_{n>=1} n |a_n - b_n| < K`` (strict)."""
    if not k > 0:
        raise NonpositiveK(f"K must be positive, got {k!r}")
    gaps = _coefficient_gaps(a, b)
    terms = [n * gaps[n] for n in range(1, len(gaps))]
    total = math.fsum(terms)
    witness = 1 + int(np.argmax(terms)) if terms else None
    margin = k - total
    return Certificate(Criterion.TAYLOR_SUM, _status(total < k, KSource.USER_SUPPLIED),
                       margin, witness, KSource.USER_SUPPLIED, float(k), total)


def zeta_bound(n: int, k: float, p: float) -> float:
    """Coefficient allowance ``K / (zeta(p) n^(p+1))``.

    Summing ``n`` times this allowance over ``n >= 1`` gives exactly ``K``,
    so strict compliance at every index implies the Taylor-sum criterion.
    """
    return k / (zeta(p) * n ** (p + 1))


def zeta_criterion(a: Sequence[complex], b: Sequence[complex], k: float,
                   p: float) -> Certificate:
    """Termwise criterion ``|a_n - b_n| < K / (zeta(p) n^(p+1))`` for every n >= 1."""
    if not k > 0:
        raise NonpositiveK(f"K must be positive, got {k!r}")
    zp = zeta(p)
    gaps = _coefficient_gaps(a, b)
    n_max = max(len(gaps) - 1, 1)
    slack = [k / (zp * n ** (p + 1)) - (gaps[n] if n < len(gaps) else 0.0)
             for n in range(1, n_max + 1)]
    j = int(np.argmin(slack))
    margin = float(slack[j])
    return Certificate(Criterion.ZETA_TAIL, _status(margin > 0, KSource.USER_SUPPLIED),
                       margin, j + 1, KSource.USER_SUPPLIED, float(k), zp)
