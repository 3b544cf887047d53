"""Reproduction suite for the worked examples: one row per checked claim.

Each row function returns ``(criterion, passed, detail)`` tuples.  Rows are
deterministic (fixed seeds) so that demo reports are reproducible.
"""

from __future__ import annotations

import cmath
import math
import time
from typing import Callable, Iterable, Optional

import numpy as np

from .analytic_fn import (
    AnalyticFn,
    Disk,
    Polar,
    half_plane,
    half_plane_sq,
    linear,
    make_grid,
    power_series,
    sub_deriv,
)
from .certify import (
    Status,
    certify_linear_disk,
    certify_perturbation,
    check_nww,
    enclosing_disk_parameter,
    taylor_sum_criterion,
    zeta_bound,
    zeta_criterion,
)
from .kconstant import closed_form_K, estimate_K
from .oracle import pairwise_scan, quadratic_collision
from .zeta import zeta

Row = tuple[str, bool, str]

NWW_PROBE = 1 - 0.1 * cmath.exp(1j * math.pi / 3)


def linear_k_rows() -> list[Row]:
    rows = []
    for c in (1.0, 2.0, 0.5 * cmath.exp(1j * math.pi / 4)):
        f = linear(c)
        disk = Disk(0.9)
        t = time.perf_counter()
        est = estimate_K(f, disk)
        dt = time.perf_counter() - t
        exact = closed_form_K(f, disk)
        ok = abs(est.value - abs(c)) <= 1e-9 and exact == abs(c) and dt < 2.0
        rows.append(("1 linear K exactness", ok,
                     f"c={c:.6g} estimate={est.value!r} closed_form={exact!r} time={dt:.2f}s"))
    return rows


def halfplane_brute_force(r: float, n_boundary: int = 1000, n_interior: int = 500,
                          seed: int = 0) -> float:
    """Independent minimum of ``|(g(a)-g(b))/(a-b)|`` for ``g = z/(1-z)`` over ~10^6 pairs."""
    rng = np.random.default_rng(seed)
    theta = 2 * np.pi * np.arange(n_boundary) / n_boundary
    rad = r * np.sqrt(rng.random(n_interior))
    phi = 2 * np.pi * rng.random(n_interior)
    pts = np.concatenate([r * np.exp(1j * theta), rad * np.exp(1j * phi)])
    g = pts / (1 - pts)
    best = float(np.min(np.abs(1 / (1 - pts) ** 2)))
    for i in range(len(pts) - 1):
        q = np.abs((g[i] - g[i + 1:]) / (pts[i] - pts[i + 1:]))
        best = min(best, float(q.min()))
    return best


def halfplane_k_rows() -> list[Row]:
    rows = []
    values = []
    for r in (0.5, 0.9, 0.99):
        est = estimate_K(half_plane(), Disk(r)).value
        target = 1 / (1 + r) ** 2
        brute = halfplane_brute_force(r)
        values.append(est)
        ok = abs(est - target) <= 1e-4 and abs(brute - target) <= 1e-4
        rows.append(("2 half-plane K", ok,
                     f"r={r} estimate={est:.9f} 1/(1+r)^2={target:.9f} brute_force={brute:.9f}"))
    toward_one = abs(values[-1] - 1) < abs(values[0] - 1)
    rows.append(("2 half-plane K trends to 1 as r->1", toward_one,
                 f"K(r=0.5,0.9,0.99)={[round(v, 6) for v in values]}; limit of 1/(1+r)^2 is 0.25"))
    return rows


def sharpness_rows(a_values: Iterable[float] = (0.5, 0.51)) -> list[Row]:
    rows = []
    disk = Disk(0.999)
    for a in a_values:
        t = time.perf_counter()
        f = power_series([0, 1, a])
        cert = certify_perturbation(f, linear(1), disk)
        if abs(a) <= 0.5:
            ok = cert.status is Status.CERTIFIED
            detail = f"a={a} status={cert.status.value} margin={cert.margin:.3g}"
        else:
            pair = quadratic_collision(a)
            resid = abs(f(pair[0]) - f(pair[1])) if pair else math.inf
            scan = pairwise_scan(f, disk, 64, 64)
            dt = time.perf_counter() - t
            ok = (cert.status is Status.NOT_CERTIFIED and pair is not None
                  and resid <= 1e-12 and scan.found and scan.quotient_modulus <= 1e-8
                  and dt < 10.0)
            detail = (f"a={a} status={cert.status.value} analytic_residual={resid:.2e} "
                      f"scan_quotient={scan.quotient_modulus:.2e} time={dt:.2f}s")
        rows.append(("3 sharpness z+az^2", ok, detail))
    return rows


def example2_rows(seed: int = 1) -> list[Row]:
    f, g = half_plane_sq(), half_plane()
    rng = np.random.default_rng(seed)
    z = 0.999999 * np.sqrt(rng.random(1000)) * np.exp(2j * np.pi * rng.random(1000))
    err = float(np.max(np.abs(np.abs(sub_deriv(f, g, z)) - 1)))
    rows = [("4 |f'-g'| = 1", err <= 1e-12, f"max deviation {err:.1e} over 1000 points")]
    cert = certify_perturbation(f, g, Disk(0.9))
    rows.append(("4 perturbation certificate at r=0.9", cert.status is Status.CERTIFIED
                 and cert.margin == 0,
                 f"status={cert.status.value} K={cert.k_value:.6f} sup|f'-g'|={cert.measure:.6f} "
                 f"margin={cert.margin:.6f}"))
    disk = Disk(0.97)
    grid = make_grid(disk, Polar(16, 64)).with_points([NWW_PROBE])
    nww = check_nww(f, disk, grid)
    rows.append(("4 NWW fails near z=1", nww.margin <= -50,
                 f"min Re f' = {nww.margin:.3f} at {nww.witness:.4f}"))
    return rows


def taylor_rows() -> list[Row]:
    b = [0.0] + [1.0] * 10
    a = list(b)
    a[2] = 1.4
    cert = taylor_sum_criterion(a, b, 1.0)
    rows = [("5 Taylor sum criterion", cert.status is Status.CERTIFIED
             and abs(cert.measure - 0.8) <= 1e-12, f"sum={cert.measure!r} margin={cert.margin:.3g}")]
    z2 = zeta(2)
    rows.append(("5 zeta(2) = pi^2/6", abs(z2 - math.pi ** 2 / 6) <= 1e-10
                 and round(z2, 3) == 1.645, f"zeta(2)={z2!r}"))
    a_z = [0.0] + [1.0 + 0.99 * zeta_bound(n, 1.0, 2.0) for n in range(1, 11)]
    zc = zeta_criterion(a_z, b, 1.0, 2.0)
    ts = taylor_sum_criterion(a_z, b, 1.0)
    rows.append(("5 zeta coefficient criterion", zc.status is Status.CERTIFIED
                 and ts.status is Status.CERTIFIED,
                 f"zeta margin={zc.margin:.3g} implied sum={ts.measure:.6f} < 1"))
    return rows


def random_series(rng: np.random.Generator, degree: int = 5, scale: float = 1.0) -> AnalyticFn:
    coeffs = [0.0, 1.0]
    for n in range(2, degree + 1):
        v = complex(rng.normal(), rng.normal())
        coeffs.append(scale * v / n ** 2)
    return power_series(coeffs)


def equivalence_rows(count: int = 30, seed: int = 2) -> list[Row]:
    rng = np.random.default_rng(seed)
    disk = Disk(0.9)
    grid = make_grid(disk, Polar(16, 64))
    forward_bad = 0
    accepted = 0
    tried = 0
    while accepted < count:
        tried += 1
        f = random_series(rng, scale=rng.uniform(0.1, 1.2))
        if check_nww(f, disk, grid).margin <= 0:
            continue
        accepted += 1
        c = enclosing_disk_parameter(f, disk, grid)
        if certify_linear_disk(f, disk, c).status is not Status.CERTIFIED:
            forward_bad += 1
    converse_bad = 0
    passes = 0
    for _ in range(4 * count):
        f = random_series(rng, scale=rng.uniform(0.1, 1.2))
        c = float(rng.uniform(0.3, 3.0))
        if certify_linear_disk(f, disk, c).status is Status.CERTIFIED:
            passes += 1
            if check_nww(f, disk, grid).margin < 0:
                converse_bad += 1
    return [
        ("6 NWW => enclosing disk certifies", forward_bad == 0,
         f"{accepted} NWW-positive series of {tried} drawn, {forward_bad} violations"),
        ("6 linear-disk pass => NWW margin >= 0", converse_bad == 0,
         f"{passes} passes, {converse_bad} violations"),
    ]


def soundness_corpus(count: int = 100, seed: int = 3):
    """Random ``f = g + eps h`` around ``g`` = linear map or ``z/(1-z)``."""
    rng = np.random.default_rng(seed)
    disk = Disk(0.9)
    cases = []
    for i in range(count):
        if i % 2 == 0:
            g = linear(cmath.rect(rng.uniform(0.5, 2.0), rng.uniform(0, 2 * math.pi)))
        else:
            g = half_plane()
        h = power_series([0.0] + [complex(rng.normal(), rng.normal()) for _ in range(4)])
        k = closed_form_K(g, disk)
        # scale eps so that (a bound on) sup |eps h'| / K spans [0.2, 4]
        dh = sum(n * abs(h.poly[n]) * disk.radius ** (n - 1) for n in range(1, 5))
        ratio = math.exp(rng.uniform(math.log(0.2), math.log(4.0)))
        eps = ratio * k / max(dh, 1e-12)
        cases.append((g, g + h * eps, disk))
    return cases


def soundness_rows(count: int = 100) -> list[Row]:
    t = time.perf_counter()
    violations = 0
    certified = collisions = 0
    for g, f, disk in soundness_corpus(count):
        cert = certify_perturbation(f, g, disk)
        scan = pairwise_scan(f, disk, 32, 32)
        certified += cert.status is Status.CERTIFIED
        collisions += scan.found
        if scan.found and cert.status is not Status.NOT_CERTIFIED:
            violations += 1
    dt = time.perf_counter() - t
    return [("7 soundness sweep", violations == 0 and dt < 120,
             f"{count} cases: {certified} certified, {collisions} collisions, "
             f"{violations} violations, {dt:.1f}s")]


SUITE: list[Callable[[], list[Row]]] = [
    linear_k_rows,
    halfplane_k_rows,
    sharpness_rows,
    example2_rows,
    taylor_rows,
    equivalence_rows,
    soundness_rows,
]


def run_demo(inject_a: Optional[float] = None) -> list[Row]:
    rows: list[Row] = []
    for section in SUITE:
        rows.extend(section())
    if inject_a is not None:
        rows.extend(sharpness_rows((inject_a,)))
    return rows
