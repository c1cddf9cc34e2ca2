import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from thetalg.exactalg import project, wl_closure
from thetalg.graphs import named_graph
from thetalg.numla import eigh, frob_inner, jacobi_eigh, min_eig, psd_project, sym


def _sym_matrices(max_n=7):
    return st.integers(1, max_n).flatmap(
        lambda n: arrays(float, (n, n), elements=st.floats(-10, 10, allow_nan=False, width=32))
    ).map(lambda a: 0.5 * (a + a.T))


def test_eigh_petersen_spectrum():
    w, v = eigh(named_graph("petersen").adjacency())
    assert np.allclose(w, [-2] * 4 + [1] * 5 + [3])
    assert np.allclose(v.T @ v, np.eye(10))


@pytest.mark.parametrize("method", ["lapack", "jacobi"])
def test_eigh_small_examples(method):
    w, _ = eigh(np.diag([3.0, -1.0, 2.0]), method)
    assert np.allclose(w, [-1, 2, 3])
    w, _ = eigh(np.ones((4, 4)), method)
    assert np.allclose(w, [0, 0, 0, 4])


def test_input_validation():
    with pytest.raises(ValueError):
        sym(np.ones((2, 3)))
    with pytest.raises(ValueError):
        sym(np.array([[1.0, np.nan], [0.0, 1.0]]))
    with pytest.raises(ValueError):
        eigh(np.eye(2), "qr")


@settings(max_examples=60, deadline=None)
@given(_sym_matrices())
def test_jacobi_agrees_with_lapack(a):
    wj, vj = jacobi_eigh(a)
    wl, _ = eigh(a)
    scale = 1.0 + np.abs(a).max()
    assert np.allclose(wj, wl, atol=1e-9 * scale)
    assert np.allclose(vj @ np.diag(wj) @ vj.T, a, atol=1e-9 * scale)


def test_psd_project_examples():
    assert np.allclose(psd_project(-np.eye(3)), 0)
    assert np.allclose(psd_project(np.diag([3.0, -1.0])), np.diag([3.0, 0.0]))
    j = np.ones((4, 4))
    assert np.allclose(psd_project(j), j)
    assert np.allclose(psd_project(np.diag([3.0, -1.0]), "jacobi"), np.diag([3.0, 0.0]))


@settings(max_examples=60, deadline=None)
@given(_sym_matrices())
def test_psd_projection_properties(a):
    p = psd_project(a)
    tol = 1e-9 * (1.0 + np.abs(a).max())
    assert min_eig(p) >= -tol
    assert np.allclose(psd_project(p), p, atol=tol)
    # a = p - q with q psd and <p, q> = 0
    q = p - a
    assert min_eig(q) >= -tol
    assert abs(frob_inner(p, q)) <= tol * a.shape[0] * (1.0 + np.abs(a).max())
    w = np.linalg.eigvalsh(a)
    assert np.trace(p) == pytest.approx(w[w > 0].sum(), abs=tol * a.shape[0])


@settings(max_examples=30, deadline=None)
@given(_sym_matrices(), st.integers(0, 2**32 - 1))
def test_psd_projection_is_nearest(a, seed):
    p = psd_project(a)
    rng = np.random.default_rng(seed)
    b = rng.standard_normal(a.shape)
    other = b @ b.T
    assert np.linalg.norm(a - p) <= np.linalg.norm(a - other) + 1e-9


def test_projection_of_psd_onto_closure_stays_psd():
    rng = np.random.default_rng(7)
    c = wl_closure(named_graph("path", [5]))
    for _ in range(20):
        b = rng.standard_normal((5, 3))
        m = b @ b.T
        assert min_eig(project(m, c)) >= -1e-10
