import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from univalent.analytic_fn import (
    Disk,
    Polar,
    deriv,
    difference_quotient,
    evaluate,
    half_plane,
    linear,
    make_grid,
    power_series,
)
from univalent.errors import DomainExceeded, ResolutionTooLow
from univalent.kconstant import (
    KSource,
    closed_form_estimate,
    closed_form_K,
    estimate_K,
    k_lower_bound_certified,
    trend_to_unit_disk,
)
from univalent.oracle import pairwise_scan

SMALL = dict(rings=12, spokes=16, refine_iters=20)

coeff = st.builds(complex, st.floats(-1, 1), st.floats(-1, 1))
small_series = st.lists(coeff, min_size=3, max_size=5).map(lambda c: power_series([0, 1] + c[2:]))


@pytest.mark.parametrize("c", [1.0, 2.0, 0.5 * cmath.exp(1j * math.pi / 4)])
def test_linear_k_exact(c):
    est = estimate_K(linear(c, 0.3), Disk(0.9))
    assert abs(est.value - abs(c)) <= 1e-9
    assert closed_form_K(linear(c), Disk(0.9)) == abs(c)
    assert est.source is KSource.GRID_REFINED


def test_linear_k_any_resolution():
    for rings, spokes in [(2, 2), (5, 7), (30, 3)]:
        assert estimate_K(linear(2), Disk(1), rings, spokes, 5).value == 2


def test_square_has_vanishing_k():
    est = estimate_K(power_series([0, 0, 1]), Disk(1), 64, 64, 40)
    assert est.value <= 1e-3


@pytest.mark.parametrize("r", [0.5, 0.9, 0.99])
def test_halfplane_k_matches_closed_form(r):
    est = estimate_K(half_plane(), Disk(r))
    assert est.value == pytest.approx(1 / (1 + r) ** 2, abs=1e-4)
    assert abs(est.argmin_a + r) < 0.05 and abs(est.argmin_b + r) < 0.05


def test_halfplane_k_against_dense_random_pairs(rng):
    """Independent oracle: plain quotient over random pairs biased to the boundary."""
    r = 0.9
    n = 1500
    rad = r * (1 - rng.random(n) ** 4)
    z = rad * np.exp(2j * np.pi * rng.random(n))
    g = z / (1 - z)
    a, b = np.triu_indices(n, 1)
    q = np.abs((g[a] - g[b]) / (z[a] - z[b]))
    target = 1 / (1 + r) ** 2
    assert q.min() >= target - 1e-12
    assert q.min() <= target + 5e-3


def test_closed_forms():
    assert closed_form_K(linear(0.5 * cmath.exp(1j * math.pi / 4)), Disk(0.3)) == pytest.approx(0.5)
    assert closed_form_K(half_plane(), Disk(0.5)) == pytest.approx(1 / 2.25)
    assert closed_form_K(half_plane(), Disk(1.0)) == 0.25
    assert closed_form_K(power_series([0, 1, 0.25]), Disk(0.5)) is None
    assert k_lower_bound_certified(linear(1), Disk(1)) == 1
    assert k_lower_bound_certified(power_series([0, 1, 0.25]), Disk(0.5)) is None


def test_closed_form_estimate_attains_value():
    est = closed_form_estimate(half_plane(), Disk(0.8))
    assert est.source is KSource.CLOSED_FORM and est.refine_iterations == 0
    q = abs(difference_quotient(half_plane(), est.argmin_a, est.argmin_b))
    assert q == pytest.approx(est.value, rel=1e-12)
    assert closed_form_estimate(power_series([0, 1, 0.2]), Disk(0.8)) is None


def test_closed_form_decreasing_in_radius():
    radii = np.linspace(0.05, 1.0, 40)
    vals = [v for _, v in trend_to_unit_disk(half_plane(), radii)]
    assert all(x > y for x, y in zip(vals, vals[1:]))


def test_halfplane_k_unit_disk_is_quarter(rng):
    # quotient modulus 1/(|1-a||1-b|) with a, b -> -1
    a = -1 + 1e-9
    assert abs(difference_quotient(half_plane(), a, a)) == pytest.approx(0.25, rel=1e-8)


def test_errors():
    with pytest.raises(ResolutionTooLow):
        estimate_K(power_series([0, 1, 0.1]), Disk(0.5), 1, 3)
    with pytest.raises(DomainExceeded):
        estimate_K(half_plane(), Disk(1.0))
    with pytest.raises(DomainExceeded):
        estimate_K(power_series([0, 1], radius=0.5), Disk(0.5))


@given(small_series)
def test_estimate_invariants(f):
    disk = Disk(0.8)
    est = estimate_K(f, disk, **SMALL)
    assert est.value >= 0
    assert abs(est.argmin_a) <= disk.radius * (1 + 1e-12)
    assert abs(est.argmin_b) <= disk.radius * (1 + 1e-12)
    q = abs(difference_quotient(f, est.argmin_a, est.argmin_b))
    assert q == pytest.approx(est.value, rel=1e-12, abs=1e-300)
    assert est.value <= est.grid_value


@given(small_series)
def test_estimate_below_grid_derivative_minimum(f):
    disk = Disk(0.8)
    est = estimate_K(f, disk, **SMALL)
    pts = make_grid(disk, Polar(SMALL["rings"], SMALL["spokes"])).points
    assert est.value <= np.min(np.abs(evaluate(deriv(f), pts)))


@given(small_series)
def test_nested_grids_are_monotone(f):
    disk = Disk(0.9)
    coarse = estimate_K(f, disk, 6, 8, refine_iters=0)
    fine = estimate_K(f, disk, 12, 16, refine_iters=0)
    assert fine.value <= coarse.value


@given(small_series, st.sampled_from([2.0, -0.5j, 4j, -0.25]))
def test_scaling(f, c):
    disk = Disk(0.8)
    base = estimate_K(f, disk, **SMALL)
    scaled = estimate_K(f * c, disk, **SMALL)
    assert scaled.value == pytest.approx(abs(c) * base.value, rel=1e-12, abs=1e-300)
    assert (scaled.argmin_a, scaled.argmin_b) == (base.argmin_a, base.argmin_b)


@given(st.sampled_from(["series", "halfplane"]), small_series,
       st.builds(complex, st.floats(-10, 10), st.floats(-10, 10)))
def test_translation_bit_identical(which, f, w0):
    if which == "halfplane":
        f, disk = half_plane(), Disk(0.9)
    else:
        disk = Disk(0.8)
    base = estimate_K(f, disk, **SMALL)
    moved = estimate_K(f + w0, disk, **SMALL)
    assert moved.value == base.value
    assert (moved.argmin_a, moved.argmin_b) == (base.argmin_a, base.argmin_b)


def test_collision_neighbourhood_gives_tiny_k():
    f = power_series([0, 1, 0.75])
    disk = Disk(0.95)
    scan = pairwise_scan(f, disk, 24, 24)
    assert scan.found
    est = estimate_K(f, disk, 8, 8, 60, starts=[(scan.z1, scan.z2)])
    assert est.value <= 1e-6


def test_thread_count_does_not_change_result(monkeypatch):
    f = power_series([0, 1, 0.3 + 0.2j, -0.1j])
    disk = Disk(0.9)
    monkeypatch.setenv("UNIVALENT_THREADS", "1")
    one = estimate_K(f, disk, 24, 24, 10)
    monkeypatch.setenv("UNIVALENT_THREADS", "4")
    four = estimate_K(f, disk, 24, 24, 10)
    assert one == four
