import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from slabeig import _backend, _pykernels

BACKENDS = _backend.available()

samples_st = st.lists(st.floats(-20, 20), min_size=1, max_size=40)


def test_selected_backend_is_available():
    assert _backend.NAME in BACKENDS


@pytest.mark.skipif("compiled" not in BACKENDS, reason="extension not built")
@settings(max_examples=80, deadline=None)
@given(samples_st, st.lists(st.floats(-40, 40), min_size=1, max_size=8), st.booleans())
def test_shoot_many_backends_agree(samples, energies, rescale):
    V = np.array(samples)
    E = np.array(energies)
    h = 2.0 / len(samples)
    pm, pl = _pykernels.shoot_many(V, h, E, rescale)
    cm, cl = BACKENDS["compiled"].shoot_many(V, h, E, rescale)
    a = pm * np.exp(pl - np.maximum(pl, cl))
    b = cm * np.exp(cl - np.maximum(pl, cl))
    assert np.allclose(a, b, rtol=1e-10, atol=1e-13)


@pytest.mark.skipif("compiled" not in BACKENDS, reason="extension not built")
@settings(max_examples=80, deadline=None)
@given(samples_st, st.floats(-40, 40))
def test_quantify_one_backends_agree(samples, E):
    V = np.array(samples)
    h = 1.5 / len(samples)
    pb, plg = _pykernels.quantify_one(V, h, E)[:2]
    cb, clg = BACKENDS["compiled"].quantify_one(V, h, E)[:2]
    top = max(plg, clg)
    a = pb * np.exp(plg - top)
    b = cb * np.exp(clg - top)
    assert abs(a - b) <= 1e-10 * max(abs(a), abs(b), 1e-300)


@pytest.mark.skipif("compiled" not in BACKENDS, reason="extension not built")
@settings(max_examples=40, deadline=None)
@given(samples_st, st.floats(-40, 40))
def test_propagate_backends_agree(samples, E):
    V = np.array(samples)
    h = 1.0 / len(samples)
    p = _pykernels.propagate(V, h, E)
    c = BACKENDS["compiled"].propagate(V, h, E)
    for u, v in zip(p, c):
        assert np.allclose(u, v, rtol=1e-10, atol=1e-13)


@settings(max_examples=50, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(
    st.integers(1, 25).flatmap(
        lambda N: st.tuples(
            st.lists(st.floats(-10, 10), min_size=N, max_size=N),
            st.lists(st.floats(-5, 5), min_size=N - 1, max_size=N - 1),
        )
    ),
    st.lists(st.floats(-30, 30), min_size=1, max_size=6),
)
def test_sturm_counts_match_dense_eigenvalues(kern, mats, shifts):
    diag, off = map(np.array, mats)
    M = np.diag(diag) + np.diag(off, 1) + np.diag(off, -1)
    eig = np.linalg.eigvalsh(M)
    got = kern.sturm_counts(diag, off * off, np.array(shifts))
    for s, c in zip(shifts, got):
        gap = np.min(np.abs(eig - s))
        if gap > 1e-8 * (1 + np.max(np.abs(eig))):
            assert c == np.count_nonzero(eig < s)
