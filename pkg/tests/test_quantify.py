import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slabeig.grid import Discretization, partition
from slabeig.potentials import harmonic, square_well
from slabeig.quantify import (
    coupling,
    quantification,
    recurrence_factor,
    shoot_many,
    shoot_real,
    wavenumber,
)


def test_wavenumber_examples():
    assert wavenumber(0.25, 1.0) == pytest.approx(0.8660254037844386j)
    assert wavenumber(4.0, 0.0) == 2.0
    assert wavenumber(1.0, 1.0) == 0.0


def test_coupling_examples():
    # k_i / k_j with k = sqrt(V - E)
    assert coupling(4.0, 1.0, 0.0) == pytest.approx(2.0)
    assert coupling(0.0, 1.0, 2.0) == pytest.approx(math.sqrt(2.0))
    assert coupling(0.0, 3.0, 2.0) == pytest.approx(1j * math.sqrt(2.0))
    assert coupling(0.0, 2.0, 2.0) is None


@pytest.mark.parametrize("n", [0, 1, 7, 100])
@pytest.mark.parametrize("E", [0.3, 2.0, 7.5])
def test_square_well_B_closed_form(n, E):
    disc = partition(square_well(-5, 5), n)
    k = cmath.sqrt(-E)
    expect = -2 * cmath.sinh(k * 10)
    assert abs(quantification(disc, E).B - expect) <= 1e-10 * max(1, abs(expect))


def _literal_two_slab(V0, V1, h, E):
    """Unnormalized recurrence written out for two slabs."""
    k0 = cmath.sqrt(V0 - E)
    k1 = cmath.sqrt(V1 - E)
    c = k1 / k0
    a, b = cmath.exp(-k0 * h), cmath.exp(k0 * h)
    P0, Q0 = 1.0, -1.0
    P1 = (c + 1) * a * P0 + (c - 1) * b * Q0
    Q1 = (c - 1) * a * P0 + (c + 1) * b * Q0
    return cmath.exp(-k1 * h) * P1 + cmath.exp(k1 * h) * Q1


@given(st.floats(-20, 20), st.floats(-20, 20), st.floats(-30, 30))
def test_one_step_recurrence_matches_literal(V0, V1, E):
    if min(abs(V0 - E), abs(V1 - E)) < 1e-3:
        return
    disc = Discretization.from_samples([V0, V1], -1.0, 1.0)
    lit = _literal_two_slab(V0, V1, 1.0, E)
    got = quantification(disc, E).B * recurrence_factor(disc, E)
    assert abs(got - lit) <= 1e-9 * max(1.0, abs(lit))


@given(
    st.lists(st.floats(-10, 10), min_size=1, max_size=30),
    st.floats(-50, 50),
)
def test_B_is_scaled_shooting_value(samples, E):
    disc = Discretization.from_samples(samples, -1.0, 1.5)
    q = quantification(disc, E)
    k0 = wavenumber(samples[0], E)
    if abs(k0) < 1e-6:
        return
    s, lg = shoot_real(disc, E)
    lhs = q.B
    rhs = -2 * k0 * s * math.exp(lg)
    assert abs(lhs - rhs) <= 1e-9 * max(abs(lhs), abs(rhs), 1e-300)


@settings(max_examples=60)
@given(
    st.lists(st.floats(-10, 10), min_size=1, max_size=31),
    st.floats(-50, 50),
)
def test_rescaling_is_neutral(samples, E):
    disc = Discretization.from_samples(samples, -1.0, 1.0)
    on = quantification(disc, E, rescale=True)
    off = quantification(disc, E, rescale=False)
    assert abs(on.B - off.B) <= 1e-12 * max(1.0, abs(off.B))
    assert abs(on.shoot_value - off.shoot_value) <= 1e-12 * max(1.0, abs(off.shoot_value))


@pytest.mark.parametrize("E", [0.1, 1.0, 4.4, 25.0])
def test_square_well_shooting_value(E):
    disc = partition(square_well(-5, 5), 50)
    k = math.sqrt(E)
    s, lg = shoot_real(disc, E)
    assert s * math.exp(lg) == pytest.approx(math.sin(10 * k) / k, rel=1e-10, abs=1e-13)


def test_harmonic_sign_change_brackets_ground_state(harmonic10):
    lo, _ = shoot_real(harmonic10, 0.5)
    hi, _ = shoot_real(harmonic10, 1.5)
    assert lo * hi < 0


def test_no_root_below_potential_minimum(harmonic10):
    E = np.linspace(-50, float(np.min(harmonic10.samples)) - 1e-6, 200)
    s, _ = shoot_many(harmonic10, E)
    assert np.all(s > 0)


def test_huge_values_stay_finite(harmonic10):
    # |B| ~ exp(integral of sqrt(x^2 + 5)) ~ e^113
    q = quantification(harmonic10, -5.0)
    assert math.isfinite(q.log_abs_B) and q.log_abs_B > 100
    assert math.isfinite(abs(q.B_scaled))


@pytest.mark.parametrize("side", [-1, 1])
def test_continuity_through_degenerate_slab(side):
    samples = [3.0, 1.0, 2.0, 0.5, 1.7]
    disc = Discretization.from_samples(samples, 0.0, 2.0)
    E = 1.0
    exact = quantification(disc, E)
    near = quantification(disc, E + side * 1e-7)
    assert abs(near.B - exact.B) <= 1e-5 * max(1.0, abs(exact.B))
    # within the degeneracy band the two branches are indistinguishable
    inside = quantification(disc, E + side * 1e-11)
    assert abs(inside.B - exact.B) <= 1e-9 * max(1.0, abs(exact.B))


def test_degenerate_first_slab():
    disc = Discretization.from_samples([1.0, 3.0, 0.0], 0.0, 3.0)
    exact = quantification(disc, 1.0)
    near = quantification(disc, 1.0 + 1e-8)
    s, lg = shoot_real(disc, 1.0)
    assert math.isfinite(abs(exact.B))
    assert abs(near.shoot_value - s * math.exp(lg)) <= 1e-6 * max(1.0, abs(s * math.exp(lg)))


@settings(max_examples=40)
@given(
    st.lists(st.floats(-10, 10), min_size=1, max_size=25),
    st.floats(-30, 30),
)
def test_reversal_preserves_zeros(samples, E):
    """Shooting from either wall vanishes at the same energies."""
    disc = Discretization.from_samples(samples, -1.0, 1.0)
    f = shoot_real(disc, E)
    g = shoot_real(disc.reversed(), E)
    # the two shooting values agree exactly (Wronskian identity)
    a = f[0] * math.exp(f[1])
    b = g[0] * math.exp(g[1])
    assert abs(a - b) <= 1e-8 * max(abs(a), abs(b), 1e-300)
