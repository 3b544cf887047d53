"""The K constant: infimum of the difference-quotient modulus over a disk.

Sampled values are upper bounds of the true infimum (a minimum over fewer
pairs).  Only the closed forms are exact and only they certify.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

from .analytic_fn import (
    SWITCH_EPS,
    AnalyticFn,
    Disk,
    Kind,
    Polar,
    difference_quotient,
    make_grid,
    polar_spacing,
)
from ._search import pair_projector, pattern_search, smallest_pairs
from .errors import DomainExceeded, ResolutionTooLow

DEFAULT_RINGS = 48
DEFAULT_SPOKES = 48
DEFAULT_REFINE = 60
N_STARTS = 8


class KSource(str, Enum):
    CLOSED_FORM = "closed_form"
    GRID_REFINED = "sampled"
    USER_SUPPLIED = "user"


@dataclass(frozen=True)
class KEstimate:
    value: float
    argmin_a: complex
    argmin_b: complex
    grid_resolution: tuple[int, int]
    refine_iterations: int
    source: KSource
    grid_value: Optional[float] = None


def _require_inside(f: AnalyticFn, disk: Disk) -> None:
    if not disk.radius < f.analyticity_radius:
        raise DomainExceeded(
            f"disk radius {disk.radius} must be strictly below the radius of "
            f"analyticity {f.analyticity_radius}"
        )


def estimate_K(
    f: AnalyticFn,
    disk: Disk,
    rings: int = DEFAULT_RINGS,
    spokes: int = DEFAULT_SPOKES,
    refine_iters: int = DEFAULT_REFINE,
    starts: Sequence[tuple[complex, complex]] = (),
    switch_eps: float = SWITCH_EPS,
) -> KEstimate:
    """Best-found infimum of ``|F(a, b)|`` over the closed disk.

    All unordered pairs of a polar grid are scanned, the diagonal included
    through ``f'``.  The eight smallest pairs, together with any extra
    ``starts``, are then polished by compass search on
    ``(Re a, Im a, Re b, Im b)``.  The result never exceeds the grid minimum.
    """
    _require_inside(f, disk)
    if rings * spokes < 4:
        raise ResolutionTooLow(f"rings * spokes = {rings * spokes} < 4")
    grid = make_grid(disk, Polar(rings, spokes))
    best, _ = smallest_pairs(f, grid.points, keep=N_STARTS, switch_eps=switch_eps)
    pts = grid.points

    def objective(x):
        return abs(difference_quotient(f, complex(x[0], x[1]), complex(x[2], x[3]), switch_eps))

    seeds = [(complex(pts[i]), complex(pts[j])) for _, i, j in best]
    grid_value = min(objective([a.real, a.imag, b.real, b.imag]) for a, b in seeds)
    seeds += [(disk.project(complex(a)), disk.project(complex(b))) for a, b in starts]

    project = pair_projector(disk)
    step = polar_spacing(disk, rings, spokes)
    winner = None
    used_max = 0
    for a, b in seeds:
        x0 = [a.real, a.imag, b.real, b.imag]
        if refine_iters > 0:
            x, fx, used = pattern_search(objective, x0, step, refine_iters, project)
        else:
            x, fx, used = x0, objective(x0), 0
        used_max = max(used_max, used)
        if winner is None or fx < winner[0]:
            winner = (fx, x)
    fx, x = winner
    return KEstimate(
        value=float(fx),
        argmin_a=complex(x[0], x[1]),
        argmin_b=complex(x[2], x[3]),
        grid_resolution=(rings, spokes),
        refine_iterations=used_max,
        source=KSource.GRID_REFINED,
        grid_value=float(grid_value),
    )


def closed_form_K(f: AnalyticFn, disk: Disk) -> Optional[float]:
    """Exact K where one is known, otherwise None.

    * ``c z + d``: the quotient is identically ``c``, so K = |c|.
    * ``z/(1-z)``: the quotient modulus is ``1/(|1-a||1-b|)``, smallest at
      ``a = b = -r``, so K = 1/(1+r)^2 (the value 1/4 on the unit disk).
    """
    if f.is_affine():
        return abs(f.c)
    if f.kind is Kind.HALF_PLANE:
        return 1.0 / (1.0 + disk.radius) ** 2
    return None


def closed_form_estimate(f: AnalyticFn, disk: Disk) -> Optional[KEstimate]:
    """:func:`closed_form_K` packaged as a KEstimate with an attaining pair."""
    value = closed_form_K(f, disk)
    if value is None:
        return None
    if f.kind is Kind.HALF_PLANE:
        a = b = complex(-disk.radius, 0.0)
    else:
        a = b = 0j
    return KEstimate(value, a, b, (0, 0), 0, KSource.CLOSED_FORM)


def k_lower_bound_certified(f: AnalyticFn, disk: Disk) -> Optional[float]:
    """A value guaranteed not to exceed the true K, or None.

    Sampled estimates never qualify: they bound K from above.
    """
    return closed_form_K(f, disk)


def trend_to_unit_disk(f: AnalyticFn, radii: Sequence[float]) -> list[tuple[float, Optional[float]]]:
    """Closed-form K on a sequence of subdisks, for reporting the r -> 1 trend."""
    return [(r, closed_form_K(f, Disk(r))) for r in radii]

