import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from flipped_spectra import (
    TauParams,
    TrigPoly,
    flip,
    get_symbol,
    gram,
    hankel,
    sym_eig,
    sym_eigvals,
    tau_basis,
    tau_generator,
    tau_grid,
    tau_matrix,
    toeplitz,
)
from flipped_spectra.exceptions import SizeLimitExceeded

coeff = st.floats(-3, 3, allow_nan=False, allow_infinity=False)


@st.composite
def trig_polys(draw, even=False, max_degree=4):
    K = draw(st.integers(0, max_degree))
    c = {}
    for k in range(0 if even else -K, K + 1):
        c[k] = draw(coeff)
        if even:
            c[-k] = c[k]
    return TrigPoly(c)


# -- toeplitz / flip / hankel ------------------------------------------------


def test_toeplitz_cos_cos2():
    T = toeplitz(get_symbol("cos+cos2"), 5)
    expected = 0.5 * (np.eye(5, k=1) + np.eye(5, k=-1) + np.eye(5, k=2) + np.eye(5, k=-2))
    assert np.array_equal(T, expected)


def test_toeplitz_constant_and_grcar():
    assert np.array_equal(toeplitz(TrigPoly({0: 1.0}), 6), np.eye(6))
    G = toeplitz(get_symbol("grcar"), 4)
    expected = np.array(
        [[1, 1, 1, 1], [-1, 1, 1, 1], [0, -1, 1, 1], [0, 0, -1, 1]], dtype=float
    )
    assert np.array_equal(G, expected)


def test_outputs_are_read_only():
    T = toeplitz(get_symbol("f1"), 3)
    with pytest.raises(ValueError):
        T[0, 0] = 5.0


def test_size_limits():
    with pytest.raises(ValueError):
        toeplitz(get_symbol("f1"), 0)
    with pytest.raises(SizeLimitExceeded):
        toeplitz(get_symbol("f1"), 5001)


def test_flip():
    assert np.array_equal(flip(1), [[1.0]])
    assert np.array_equal(flip(3), [[0, 0, 1], [0, 1, 0], [1, 0, 0]])


def test_hankel_examples():
    assert np.array_equal(hankel(TrigPoly({0: 1.0}), 5), flip(5))
    H = hankel(get_symbol("f1"), 4)
    expected = np.array([[0, 0, 1, 1], [0, 1, 1, 0], [1, 1, 0, 0], [1, 0, 0, 0]], dtype=float)
    assert np.array_equal(H, expected)


@given(trig_polys(), st.integers(1, 12))
def test_diagonal_structure(f, n):
    T, H = toeplitz(f, n), hankel(f, n)
    for s in range(n):
        for t in range(n):
            assert T[s, t] == f.fourier_coefficient(s - t)
            assert H[s, t] == f.fourier_coefficient(n - 1 - s - t)


@given(trig_polys(), st.integers(1, 15))
def test_centro_transpose_identity(f, n):
    Y = flip(n)
    ft = TrigPoly({-k: v for k, v in f.coeffs.items()})
    assert np.max(np.abs(Y @ toeplitz(f, n) @ Y - toeplitz(ft, n))) <= 1e-14


# -- tau algebra --------------------------------------------------------------


def test_tau_generator():
    assert np.array_equal(tau_generator(7), toeplitz(TrigPoly({-1: 1.0, 1: 1.0}), 7))
    G = tau_generator(3, TauParams(1, 0))
    assert np.array_equal(G, [[1, 1, 0], [1, 0, 1], [0, 1, 0]])


def test_tau_grid_closed_forms():
    j = np.arange(1, 11)
    g = tau_grid(10)
    assert g.provenance == "closed_form"
    assert np.allclose(g.points, j * math.pi / 11, atol=0, rtol=1e-15)
    assert np.allclose(tau_grid(10, TauParams(0, -1)).points, j * math.pi / 10.5, atol=1e-15)


@pytest.mark.parametrize("p", [(0, 0), (0, -1), (0, 1), (1, 0), (1, 1), (-1, -1), (1, -1)])
@pytest.mark.parametrize("n", [2, 10, 33])
def test_tau_grid_reproduces_generator_spectrum(p, n):
    p = TauParams(*p)
    g = tau_grid(n, p)
    assert np.max(np.abs(np.sort(2 * np.cos(g.points)) - sym_eigvals(tau_generator(n, p)))) <= 1e-10


def test_tau_grid_numeric_flag():
    assert tau_grid(10, TauParams(1, 1)).provenance == "numeric"


@pytest.mark.parametrize("p", [(0, 0), (0, -1), (0, 1), (1, 0), (1, 1)])
def test_tau_basis_diagonalizes_generator(p):
    p = TauParams(*p)
    n = 12
    Q = tau_basis(n, p)
    assert np.allclose(Q.T @ Q, np.eye(n), atol=1e-12)
    D = Q.T @ tau_generator(n, p) @ Q
    assert np.allclose(D, np.diag(2 * np.cos(tau_grid(n, p).points)), atol=1e-12)


def test_tau_matrix_corner_correction():
    f = get_symbol("cos+cos2")
    n = 10
    diff = np.asarray(tau_matrix(f, n)) - toeplitz(f, n)
    expected = np.zeros((n, n))
    expected[0, 0] = expected[-1, -1] = -0.5
    assert np.max(np.abs(diff - expected)) <= 1e-12


@pytest.mark.parametrize("p", [(0, 0), (1, 0), (0, 1), (0, -1), (1, 1), (-1, 1)])
def test_tau_matrix_of_generator_symbol(p):
    p = TauParams(*p)
    assert np.max(np.abs(tau_matrix(TrigPoly({-1: 1.0, 1: 1.0}), 9, p) - tau_generator(9, p))) <= 1e-12


def test_tau_matrix_grcar_gram_corners():
    Th = np.asarray(tau_matrix(get_symbol("grcar-gram"), 11))
    corner = np.array([[4, 2, 2], [2, 6, 2], [2, 2, 5]], dtype=float)
    assert np.allclose(Th[:3, :3], corner, atol=1e-12)
    assert np.allclose(Th[-3:, -3:], corner[::-1, ::-1], atol=1e-12)
    assert np.allclose(Th[3:-3, 3:-3], toeplitz(get_symbol("grcar-gram"), 11)[3:-3, 3:-3], atol=1e-12)


def test_tau_matrix_rejects_non_even():
    with pytest.raises(TypeError):
        tau_matrix(get_symbol("grcar"), 5)
    with pytest.raises(TypeError):
        tau_matrix(get_symbol("example41"), 5)


@given(trig_polys(even=True), st.integers(2, 30))
def test_tau_correction_low_rank(f, n):
    d = f.degree
    R = np.asarray(tau_matrix(f, n)) - toeplitz(f, n)
    s = np.linalg.svd(R, compute_uv=False)
    scale = max(1.0, sum(abs(v) for v in f.coeffs.values()))
    assert np.all(s[2 * d:] <= 1e-10 * scale)


# -- gram ---------------------------------------------------------------------


@pytest.mark.parametrize("name,sign", [("f1", 1.0), ("f2", -1.0)])
def test_gram_of_bidiagonal(name, sign):
    n = 8
    G = gram(toeplitz(get_symbol(name), n))
    expected = 2 * np.eye(n) + sign * (np.eye(n, k=1) + np.eye(n, k=-1))
    expected[-1, -1] = 1
    assert np.array_equal(G, expected)


def test_gram_grcar():
    G = gram(toeplitz(get_symbol("grcar"), 11))
    assert np.array_equal(np.diag(G), [2, 3, 4, 5, 5, 5, 5, 5, 5, 5, 4])
    g = get_symbol("grcar-gram")
    assert np.array_equal(G[4:7, 4:7], toeplitz(g, 11)[4:7, 4:7])


@given(st.integers(1, 25), st.integers(0, 2**31))
def test_gram_psd(n, seed):
    A = np.random.default_rng(seed).standard_normal((n, n))
    w = sym_eig(gram(A)).values
    assert w.min() >= -1e-12 * max(1.0, w.max())
