"""Acceptance gate: one check per criterion, each at its stated tolerance.

Run under pytest (a PASS/FAIL line per criterion is printed in the terminal
summary) or directly with ``python tests/test_acceptance.py``.
"""

import cmath
import math
import time

import numpy as np
import pytest

from univalent.analytic_fn import (
    Disk,
    Polar,
    half_plane,
    half_plane_sq,
    linear,
    make_grid,
    power_series,
    sub_deriv,
)
from univalent.certify import (
    Status,
    certify_linear_disk,
    certify_perturbation,
    check_nww,
    enclosing_disk_parameter,
    taylor_sum_criterion,
)
from univalent.demo import halfplane_brute_force, random_series, soundness_corpus
from univalent.kconstant import closed_form_K, estimate_K
from univalent.oracle import pairwise_scan, quadratic_collision
from univalent.zeta import zeta

RESULTS: dict[str, tuple[bool, str]] = {}


def c1_linear_exactness():
    details, ok = [], True
    for c in (1.0, 2.0, 0.5 * cmath.exp(1j * math.pi / 4)):
        t = time.perf_counter()
        est = estimate_K(linear(c), Disk(0.9))
        dt = time.perf_counter() - t
        exact = closed_form_K(linear(c), Disk(0.9))
        ok &= abs(est.value - abs(c)) <= 1e-9 and exact == abs(c) and dt < 2
        details.append(f"|c|={abs(c):.4g}: {est.value!r} in {dt:.2f}s")
    return ok, "; ".join(details)


def c2a_halfplane_values():
    details, ok = [], True
    for r in (0.5, 0.9, 0.99):
        target = 1 / (1 + r) ** 2
        est = estimate_K(half_plane(), Disk(r)).value
        brute = halfplane_brute_force(r)
        ok &= abs(est - target) <= 1e-4 and abs(brute - target) <= 1e-4
        details.append(f"r={r}: {est:.7f} vs {target:.7f} (brute {brute:.7f})")
    return ok, "; ".join(details)


def c2b_halfplane_trend_to_one():
    values = [estimate_K(half_plane(), Disk(r)).value for r in (0.5, 0.9, 0.99)]
    toward_one = abs(values[2] - 1) < abs(values[1] - 1) < abs(values[0] - 1)
    return toward_one, f"K = {[round(v, 6) for v in values]} decreases toward 1/4, not 1"


def c3_sharpness():
    t = time.perf_counter()
    disk = Disk(0.999)
    half = certify_perturbation(power_series([0, 1, 0.5]), linear(1), disk)
    f = power_series([0, 1, 0.51])
    over = certify_perturbation(f, linear(1), disk)
    pair = quadratic_collision(0.51)
    resid = abs(f(pair[0]) - f(pair[1])) if pair else math.inf
    scan = pairwise_scan(f, disk, 64, 64)
    dt = time.perf_counter() - t
    ok = (half.status is Status.CERTIFIED and over.status is Status.NOT_CERTIFIED
          and resid <= 1e-12 and scan.found and scan.quotient_modulus <= 1e-8 and dt < 10)
    return ok, (f"a=0.5 {half.status.value}; a=0.51 {over.status.value}, residual {resid:.1e}, "
                f"scan quotient {scan.quotient_modulus:.1e}, {dt:.2f}s")


def c4a_derivative_gap():
    rng = np.random.default_rng(4)
    z = 0.999 * np.sqrt(rng.random(1000)) * np.exp(2j * np.pi * rng.random(1000))
    err = float(np.max(np.abs(np.abs(sub_deriv(half_plane_sq(), half_plane(), z)) - 1)))
    return err <= 1e-12, f"max ||f'-g'| - 1| = {err:.1e}"


def c4b_example2_certificate():
    cert = certify_perturbation(half_plane_sq(), half_plane(), Disk(0.9))
    ok = cert.status is Status.CERTIFIED and cert.margin == 0
    return ok, (f"{cert.status.value}: K={cert.k_value:.6f} ({cert.k_source.value}), "
                f"sup={cert.measure:.6f}, margin={cert.margin:.6f}")


def c4c_nww_negative():
    disk = Disk(0.97)
    probe = 1 - 0.1 * cmath.exp(1j * math.pi / 3)
    grid = make_grid(disk, Polar(16, 64)).with_points([probe])
    cert = check_nww(half_plane_sq(), disk, grid)
    return cert.margin <= -50, f"min Re f' = {cert.margin:.2f}"


def c5_taylor():
    b = [0.0] + [1.0] * 10
    a = list(b)
    a[2] = 1.4
    cert = taylor_sum_criterion(a, b, 1.0)
    z2 = zeta(2)
    ok = (cert.status is Status.CERTIFIED and abs(cert.measure - 0.8) <= 1e-12
          and abs(z2 - math.pi ** 2 / 6) <= 1e-10)
    return ok, f"sum={cert.measure!r} {cert.status.value}; |zeta(2)-pi^2/6|={abs(z2 - math.pi**2/6):.1e}"


def c6_equivalence():
    rng = np.random.default_rng(6)
    disk = Disk(0.9)
    grid = make_grid(disk, Polar(16, 64))
    accepted = forward_bad = converse_bad = passes = 0
    while accepted < 30:
        f = random_series(rng, scale=rng.uniform(0.1, 1.5))
        if check_nww(f, disk, grid).margin > 0:
            accepted += 1
            c = enclosing_disk_parameter(f, disk, grid)
            forward_bad += certify_linear_disk(f, disk, c).status is not Status.CERTIFIED
    for _ in range(120):
        f = random_series(rng, scale=rng.uniform(0.1, 1.5))
        if certify_linear_disk(f, disk, float(rng.uniform(0.3, 3))).status is Status.CERTIFIED:
            passes += 1
            converse_bad += check_nww(f, disk, grid).margin < 0
    ok = forward_bad == 0 and converse_bad == 0
    return ok, f"forward violations {forward_bad}/30, converse violations {converse_bad}/{passes}"


def c7_soundness():
    t = time.perf_counter()
    violations = certified = collisions = 0
    for g, f, disk in soundness_corpus(100, seed=7):
        cert = certify_perturbation(f, g, disk)
        scan = pairwise_scan(f, disk, 32, 32)
        certified += cert.status is Status.CERTIFIED
        collisions += scan.found
        if cert.status is Status.CERTIFIED and scan.found:
            violations += 1
        if scan.found and cert.status is not Status.NOT_CERTIFIED:
            violations += 1
    dt = time.perf_counter() - t
    return violations == 0 and dt < 120, (f"{certified} certified, {collisions} collisions, "
                                          f"{violations} violations, {dt:.1f}s")


CRITERIA = {
    "1 linear K exactness": c1_linear_exactness,
    "2a half-plane K = 1/(1+r)^2": c2a_halfplane_values,
    "2b half-plane K trends to 1": c2b_halfplane_trend_to_one,
    "3 sharpness at |a| = 1/2": c3_sharpness,
    "4a |f'-g'| = 1": c4a_derivative_gap,
    "4b certificate, margin 0 at r=0.9": c4b_example2_certificate,
    "4c NWW margin <= -50": c4c_nww_negative,
    "5 Taylor sum and zeta(2)": c5_taylor,
    "6 equivalence suite": c6_equivalence,
    "7 soundness sweep": c7_soundness,
}


def summary_lines():
    return [f"{'PASS' if ok else 'FAIL'}  {name}: {detail}" for name, (ok, detail) in RESULTS.items()]


@pytest.mark.parametrize("name", list(CRITERIA))
def test_criterion(name):
    ok, detail = CRITERIA[name]()
    RESULTS[name] = (ok, detail)
    print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
    assert ok, detail


if __name__ == "__main__":
    for name, fn in CRITERIA.items():
        RESULTS[name] = fn()
    print("\n".join(summary_lines()))
