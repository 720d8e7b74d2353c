"""Rotation eigensolver against the LAPACK oracle."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from ouspectra.errors import ShapeMismatch
from ouspectra.symeig import jacobi_eigh


def test_diagonal_input_is_a_fixed_point():
    d = np.diag([3.0, -1.0, 2.0])
    w, V = jacobi_eigh(d)
    assert np.allclose(w, [-1.0, 2.0, 3.0])
    # no rotations happen for diagonal input, so V is a permutation of I
    assert np.array_equal(np.sort(np.abs(V), axis=0)[-1], np.ones(3))
    assert np.allclose(V @ np.diag(w) @ V.T, d)


def test_already_diagonalized_identity_vectors():
    w, V = jacobi_eigh(np.diag([1.0, 2.0, 5.0]))
    assert np.array_equal(V, np.eye(3))


def test_two_by_two_exchange_matrix():
    w, V = jacobi_eigh(np.array([[0.0, 1.0], [1.0, 0.0]]))
    assert np.allclose(w, [-1.0, 1.0])
    assert np.allclose(V @ np.diag(w) @ V.T, [[0.0, 1.0], [1.0, 0.0]])


@pytest.mark.parametrize("n", [2, 3, 5, 8])
def test_matches_lapack(n):
    rng = np.random.default_rng(n)
    for _ in range(25):
        g = rng.standard_normal((n, n))
        a = (g + g.T) / 2.0
        w, V = jacobi_eigh(a)
        assert np.abs(w - np.linalg.eigvalsh(a)).max() < 1e-12 * (1 + np.abs(w).max())
        assert np.abs(V @ np.diag(w) @ V.T - a).max() < 1e-10 * (1 + np.abs(w).max())
        assert np.abs(V.T @ V - np.eye(n)).max() < 1e-12


def test_reproducible_output():
    rng = np.random.default_rng(7)
    g = rng.standard_normal((5, 5))
    a = (g + g.T) / 2.0
    w1, V1 = jacobi_eigh(a)
    w2, V2 = jacobi_eigh(a)
    assert np.array_equal(w1, w2) and np.array_equal(V1, V2)


def test_rejects_nonsymmetric_and_nonsquare():
    with pytest.raises(ShapeMismatch):
        jacobi_eigh(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(ShapeMismatch):
        jacobi_eigh(np.zeros((2, 3)))


@settings(max_examples=40, deadline=None)
@given(arrays(np.float64, (4, 4), elements=st.floats(-10, 10)))
def test_reconstruction_property(m):
    a = (m + m.T) / 2.0
    w, V = jacobi_eigh(a)
    scale = 1.0 + np.abs(a).max()
    assert np.abs(V @ np.diag(w) @ V.T - a).max() < 1e-10 * scale
    assert np.all(np.diff(w) >= 0)
