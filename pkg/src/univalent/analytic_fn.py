"""Analytic functions on origin-centred disks.

Every function is stored as a polynomial part plus a pole part at ``z = 1``::

    f(z) = c0 + c1 z + ... + cN z^N + q1 (1-z)^-1 + ... + qM (1-z)^-M

which is closed under differentiation, addition and scaling.  The two named
rational maps ``z/(1-z)`` and ``z^2/(1-z)`` keep their own kind so that they
are evaluated from the direct formula and can be recognised by the closed-form
K table.

All evaluation routines accept either a Python scalar or a numpy array.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum
from numbers import Number
from typing import Sequence, Union

import numpy as np

from .errors import DomainError, DomainExceeded, PoleProximity

ENTIRE_RADIUS = 1e6  # sentinel radius of analyticity for polynomials
POLE_GUARD = 1e-12
SWITCH_EPS = 1e-6

ComplexLike = Union[complex, float, int, np.ndarray]


class Kind(str, Enum):
    POWER_SERIES = "poly"
    LINEAR = "linear"
    HALF_PLANE = "halfplane"
    HALF_PLANE_SQ = "halfplane2"
    RATIONAL = "rational"


def _as_tuple(values: Sequence[complex]) -> tuple[complex, ...]:
    out = tuple(complex(v) for v in values)
    for v in out:
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise DomainError(f"non-finite coefficient {v!r}")
    return out


def _trim(values: tuple[complex, ...]) -> tuple[complex, ...]:
    n = len(values)
    while n > 1 and values[n - 1] == 0:
        n -= 1
    return values[:n]


@dataclass(frozen=True)
class AnalyticFn:
    kind: Kind
    poly: tuple[complex, ...]
    poles: tuple[complex, ...] = ()
    analyticity_radius: float = ENTIRE_RADIUS

    def __post_init__(self):
        if not self.poly:
            raise DomainError("coefficient list must be nonempty")

    # construction helpers -------------------------------------------------

    @property
    def c(self) -> complex:
        """Slope of a linear map (the coefficient of ``z``)."""
        return self.poly[1] if len(self.poly) > 1 else 0j

    @property
    def d(self) -> complex:
        return self.poly[0]

    @property
    def degree(self) -> int:
        return len(_trim(self.poly)) - 1

    def is_constant(self) -> bool:
        return all(v == 0 for v in self.poly[1:]) and all(q == 0 for q in self.poles)

    def is_affine(self) -> bool:
        """True when the function is ``c z + d`` (possibly stored as a series)."""
        return not any(self.poles) and self.degree <= 1

    def __call__(self, z: ComplexLike) -> ComplexLike:
        return evaluate(self, z)

    def __add__(self, other):
        if isinstance(other, Number):
            other = constant(complex(other))
        if not isinstance(other, AnalyticFn):
            return NotImplemented
        return _combine(self, other, 1.0)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Number):
            other = constant(complex(other))
        if not isinstance(other, AnalyticFn):
            return NotImplemented
        return _combine(self, other, -1.0)

    def __mul__(self, k):
        if not isinstance(k, Number):
            return NotImplemented
        k = complex(k)
        poly = tuple(k * v for v in self.poly)
        poles = tuple(k * v for v in self.poles)
        if self.kind is Kind.LINEAR:
            return AnalyticFn(Kind.LINEAR, poly)
        kind = Kind.RATIONAL if any(poles) else Kind.POWER_SERIES
        return AnalyticFn(kind, poly, poles if any(poles) else (), self.analyticity_radius)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0


def power_series(coeffs: Sequence[complex], radius: float = ENTIRE_RADIUS) -> AnalyticFn:
    """Truncated power series ``sum coeffs[n] z^n``."""
    return AnalyticFn(Kind.POWER_SERIES, _as_tuple(coeffs), (), float(radius))


def linear(c: complex, d: complex = 0.0) -> AnalyticFn:
    return AnalyticFn(Kind.LINEAR, _as_tuple((d, c)))


def constant(w: complex) -> AnalyticFn:
    return power_series((w,))


def half_plane() -> AnalyticFn:
    """``z/(1-z)``, stored as ``-1 + 1/(1-z)``."""
    return AnalyticFn(Kind.HALF_PLANE, (-1 + 0j,), (1 + 0j,), 1.0)


def half_plane_sq() -> AnalyticFn:
    """``z^2/(1-z)``, stored as ``-1 - z + 1/(1-z)``."""
    return AnalyticFn(Kind.HALF_PLANE_SQ, (-1 + 0j, -1 + 0j), (1 + 0j,), 1.0)


def _combine(f: AnalyticFn, g: AnalyticFn, sign: float) -> AnalyticFn:
    n = max(len(f.poly), len(g.poly))
    poly = tuple(
        (f.poly[i] if i < len(f.poly) else 0j) + sign * (g.poly[i] if i < len(g.poly) else 0j)
        for i in range(n)
    )
    m = max(len(f.poles), len(g.poles))
    poles = tuple(
        (f.poles[i] if i < len(f.poles) else 0j) + sign * (g.poles[i] if i < len(g.poles) else 0j)
        for i in range(m)
    )
    radius = min(f.analyticity_radius, g.analyticity_radius)
    if any(poles):
        return AnalyticFn(Kind.RATIONAL, poly, _trim(poles), radius)
    if f.kind is Kind.LINEAR and g.kind is Kind.LINEAR:
        return AnalyticFn(Kind.LINEAR, poly)
    return AnalyticFn(Kind.POWER_SERIES, poly, (), radius)


# evaluation --------------------------------------------------------------


def _check_domain(f: AnalyticFn, z: ComplexLike) -> None:
    if isinstance(z, np.ndarray):
        if z.size and np.max(np.abs(z)) >= f.analyticity_radius:
            raise DomainExceeded(
                f"|z| reaches the radius of analyticity {f.analyticity_radius}"
            )
        if any(f.poles) and z.size and np.min(np.abs(1 - z)) < POLE_GUARD:
            raise PoleProximity("evaluation point within 1e-12 of the pole at z = 1")
    else:
        if abs(z) >= f.analyticity_radius:
            raise DomainExceeded(
                f"|z| = {abs(z)!r} reaches the radius of analyticity {f.analyticity_radius}"
            )
        if any(f.poles) and abs(1 - z) < POLE_GUARD:
            raise PoleProximity("evaluation point within 1e-12 of the pole at z = 1")


def _horner(coeffs: tuple[complex, ...], z):
    acc = coeffs[-1] + 0 * z
    for c in reversed(coeffs[:-1]):
        acc = acc * z + c
    return acc


def _pole_part(poles: tuple[complex, ...], z):
    if not any(poles):
        return 0j
    w = 1 / (1 - z)
    return _horner((0j,) + poles, w)


def evaluate(f: AnalyticFn, z: ComplexLike) -> ComplexLike:
    """Value of ``f`` at ``z``; polynomial parts use Horner order, highest first."""
    _check_domain(f, z)
    if f.kind is Kind.HALF_PLANE:
        return z / (1 - z)
    if f.kind is Kind.HALF_PLANE_SQ:
        return z * z / (1 - z)
    return _horner(f.poly, z) + _pole_part(f.poles, z)


def _evaluate_shifted(f: AnalyticFn, z: ComplexLike) -> ComplexLike:
    """``f(z) - c0`` with the constant term never entering the arithmetic.

    Differences ``f(a) - f(b)`` are formed from this so that adding a constant
    to ``f`` leaves every difference quotient bit-for-bit unchanged.
    """
    _check_domain(f, z)
    if len(f.poly) > 1:
        poly_part = _horner(f.poly[1:], z) * z
    else:
        poly_part = 0 * z
    return poly_part + _pole_part(f.poles, z)


def deriv(f: AnalyticFn) -> AnalyticFn:
    """Exact formal derivative."""
    if len(f.poly) > 1:
        dpoly = tuple(n * f.poly[n] for n in range(1, len(f.poly)))
    else:
        dpoly = (0j,)
    if not any(f.poles):
        return AnalyticFn(Kind.POWER_SERIES, dpoly, (), f.analyticity_radius)
    # d/dz (1-z)^-k = k (1-z)^-(k+1)
    dpoles = (0j,) + tuple((k + 1) * q for k, q in enumerate(f.poles))
    return AnalyticFn(Kind.RATIONAL, dpoly, _trim(dpoles), f.analyticity_radius)


def sub_deriv(f: AnalyticFn, g: AnalyticFn, z: ComplexLike) -> ComplexLike:
    """``f'(z) - g'(z)``.

    The derivatives are subtracted coefficient-wise before evaluation, so
    common pole parts cancel exactly (``z^2/(1-z)`` against ``z/(1-z)`` gives
    the constant ``-1`` with no rounding).
    """
    return evaluate(deriv(f) - deriv(g), z)


def difference_quotient(f: AnalyticFn, a: ComplexLike, b: ComplexLike,
                        switch_eps: float = SWITCH_EPS) -> ComplexLike:
    """``(f(a) - f(b))/(a - b)``, continued by ``f'((a+b)/2)`` near the diagonal."""
    if switch_eps <= 0:
        raise DomainError("switch_eps must be positive")
    if f.is_affine():
        # exact: the quotient of c z + d is c for every pair
        _check_domain(f, a)
        _check_domain(f, b)
        if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
            shape = np.broadcast_shapes(np.shape(a), np.shape(b))
            return np.full(shape, f.c, dtype=complex)
        return complex(f.c)
    if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
        a, b = np.broadcast_arrays(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))
        diff = a - b
        far = np.abs(diff) >= switch_eps
        out = np.empty(a.shape, dtype=complex)
        if far.any():
            out[far] = (_evaluate_shifted(f, a[far]) - _evaluate_shifted(f, b[far])) / diff[far]
        if (~far).any():
            out[~far] = evaluate(deriv(f), 0.5 * (a[~far] + b[~far]))
        return out
    a = complex(a)
    b = complex(b)
    diff = a - b
    if abs(diff) >= switch_eps:
        return (_evaluate_shifted(f, a) - _evaluate_shifted(f, b)) / diff
    return evaluate(deriv(f), 0.5 * (a + b))


# disks and grids ---------------------------------------------------------


@dataclass(frozen=True)
class Disk:
    """Closed origin-centred disk ``|z| <= radius`` with ``0 < radius <= 1``."""

    radius: float

    def __post_init__(self):
        r = float(self.radius)
        if not (math.isfinite(r) and 0 < r <= 1):
            raise DomainError(f"disk radius must lie in (0, 1], got {self.radius!r}")
        object.__setattr__(self, "radius", r)

    def project(self, z: complex) -> complex:
        """Nearest point of the closed disk."""
        m = abs(z)
        if m > self.radius:
            return z * (self.radius / m)
        return z


@dataclass(frozen=True)
class Polar:
    rings: int
    spokes: int


@dataclass(frozen=True)
class Boundary:
    samples: int


@dataclass(frozen=True)
class SampleGrid:
    points: np.ndarray = field(compare=False)
    scheme: object
    disk: Disk

    def with_points(self, extra: Sequence[complex]) -> "SampleGrid":
        """Copy of the grid with additional points appended (projected into the disk)."""
        extra_pts = np.array([self.disk.project(complex(z)) for z in extra], dtype=complex)
        pts = np.concatenate([self.points, extra_pts])
        pts.flags.writeable = False
        return SampleGrid(pts, self.scheme, self.disk)

    def __len__(self):
        return len(self.points)


def boundary_points(disk: Disk, samples: int) -> np.ndarray:
    theta = 2 * np.pi * np.arange(samples) / samples
    return disk.radius * (np.cos(theta) + 1j * np.sin(theta))


def make_grid(disk: Disk, scheme: Union[Polar, Boundary]) -> SampleGrid:
    """Sample points of the closed disk.

    ``Polar(rings, spokes)`` gives the origin followed by ``rings * spokes``
    points at radii ``radius * i / rings`` on equally spaced spokes;
    ``Boundary(samples)`` gives equally spaced points on ``|z| = radius``.
    """
    if isinstance(scheme, Polar):
        if scheme.rings < 1 or scheme.spokes < 1:
            raise DomainError("rings and spokes must be >= 1")
        radii = disk.radius * np.arange(1, scheme.rings + 1) / scheme.rings
        theta = 2 * np.pi * np.arange(scheme.spokes) / scheme.spokes
        unit = np.cos(theta) + 1j * np.sin(theta)
        pts = np.concatenate([[0j], (radii[:, None] * unit[None, :]).ravel()])
    elif isinstance(scheme, Boundary):
        if scheme.samples < 1:
            raise DomainError("sample count must be >= 1")
        pts = boundary_points(disk, scheme.samples)
    else:
        raise TypeError(f"unknown grid scheme {scheme!r}")
    pts = np.asarray(pts, dtype=complex)
    pts.flags.writeable = False
    return SampleGrid(pts, scheme, disk)


def polar_spacing(disk: Disk, rings: int, spokes: int) -> float:
    """Smallest of the radial and outer-ring angular spacings of a polar grid."""
    return disk.radius * min(1.0 / rings, 2 * math.pi / spokes)


def unit(theta: float) -> complex:
    return cmath.exp(1j * theta)
