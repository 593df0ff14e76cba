import math
import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from flipped_spectra import (
    DegenerateWarning,
    HomotopyConfig,
    HomotopyTrace,
    SymbolPermutation,
    TauParams,
    TrigPoly,
    crossing_gamma,
    crossing_point,
    get_symbol,
    gram,
    hankel,
    homotopy_order,
    modulus_squared_symbol,
    sign_match,
    singular_values,
    sym_eigvals,
    tau_grid,
    tau_matrix,
    toeplitz,
)
from flipped_spectra.exceptions import UnsupportedKind

TABLE3_PI = (6, 7, 8, 5, 9, 4, 10, 3, 2, 1)
TABLE4_PI_INV = (9, 10, 8, 7, 2, 1, 4, 6, 5, 3)

coeff = st.floats(-2, 2, allow_nan=False, allow_infinity=False)


@st.composite
def even_polys(draw, max_degree=3):
    K = draw(st.integers(1, max_degree))
    c = {}
    for k in range(K + 1):
        c[k] = c[-k] = draw(coeff)
    return TrigPoly(c)


def run(target, f, cfg=HomotopyConfig()):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DegenerateWarning)
        return homotopy_order(target, f, cfg)


@pytest.fixture(scope="module")
def cos_cos2_trace():
    f = get_symbol("cos+cos2")
    return run(toeplitz(f, 10), f, HomotopyConfig(100, TauParams(0, 0)))


def test_config_validation():
    with pytest.raises(ValueError):
        HomotopyConfig(n_steps=1)
    with pytest.raises(ValueError):
        HomotopyConfig(locality_window=0)
    assert HomotopyConfig(reference="1,-1").reference == TauParams(1, -1)
    assert HomotopyConfig().window(40) == 10
    assert HomotopyConfig(locality_window=3).window(40) == 3


def test_table3_permutation(cos_cos2_trace):
    assert tuple(int(p) for p in cos_cos2_trace.permutation.pi) == TABLE3_PI


def test_table3_sign_match(cos_cos2_trace):
    f = get_symbol("cos+cos2")
    rep = sign_match(sym_eigvals(toeplitz(f, 10)), sym_eigvals(hankel(f, 10)), cos_cos2_trace.permutation)
    assert rep.mismatches == []


def test_degenerate_warning_issued():
    f = get_symbol("cos+cos2")
    with pytest.warns(DegenerateWarning):
        tr = homotopy_order(toeplitz(f, 10), f)
    assert tr.degenerate_steps


def test_crossing_cos_cos2(cos_cos2_trace):
    assert (25, 5, 8) in cos_cos2_trace.crossings
    gamma, value = crossing_point(cos_cos2_trace, 5, 8)
    # Exact crossing of the two curves: gamma = (103 - 13 sqrt 41)/80 and
    # |value| = (9 + sqrt 41)/20.
    assert gamma == pytest.approx((103 - 13 * math.sqrt(41)) / 80, abs=2 / 100)
    assert abs(value) == pytest.approx((9 + math.sqrt(41)) / 20, abs=1e-3)
    assert crossing_gamma(cos_cos2_trace, 5, 8) == gamma


def test_crossing_n9_reference_11():
    f = get_symbol("cos+cos2")
    T = toeplitz(f, 9)
    tr = run(T, f, HomotopyConfig(100, TauParams(1, 1)))
    assert any({i, j} == {4, 9} for _, i, j in tr.crossings)
    assert sign_match(sym_eigvals(T), sym_eigvals(hankel(f, 9)), tr.permutation).mismatches == []


def test_constant_homotopy_is_identity():
    f = get_symbol("lap2")
    for p in [(0, 0), (1, 1), (0, -1)]:
        p = TauParams(*p)
        tr = run(tau_matrix(f, 12, p), f, HomotopyConfig(5, p))
        assert np.array_equal(tr.permutation.pi, np.arange(1, 13))
        assert tr.crossings == []
        assert all(crossing_gamma(tr, i, j) is None for i in range(1, 13) for j in range(i + 1, 13))


def test_synthetic_two_by_two_crossing():
    g = np.linspace(0, 1, 11)
    values = np.vstack([g, 1 - g])
    tr = HomotopyTrace(g, values, np.zeros((2, 11), dtype=int), SymbolPermutation.identity(2))
    assert crossing_gamma(tr, 1, 2) == pytest.approx(0.5)
    assert crossing_point(tr, 1, 2)[1] == pytest.approx(0.5)


def test_grcar_table4_observed_order():
    f = get_symbol("grcar")
    A = toeplitz(f, 10)
    tr = run(gram(A), modulus_squared_symbol(f), HomotopyConfig(100, TauParams(0, 0)))
    assert tuple(int(p) for p in tr.permutation.pi_inverse) == TABLE4_PI_INV
    rep = sign_match(singular_values(A), sym_eigvals(hankel(f, 10)), tr.permutation)
    # The tracker leaves the two largest singular values inverted.
    assert rep.mismatches == [1, 2]
    assert rep.lambda_T[0] == pytest.approx(3.0752, abs=1e-4)
    assert rep.lambda_T[1] == pytest.approx(3.1066, abs=1e-4)


def test_rejects_piecewise_reference():
    f = get_symbol("example41")
    with pytest.raises(UnsupportedKind):
        homotopy_order(toeplitz(f, 5), f)


def test_size_one():
    f = TrigPoly({0: 2.0})
    tr = run(np.array([[2.0]]), f, HomotopyConfig(3))
    assert tr.final_values[0] == 2.0


@given(even_polys(), st.integers(2, 24), st.sampled_from([(0, 0), (1, 0), (0, -1), (1, 1)]))
def test_homotopy_invariants(f, n, p):
    p = TauParams(*p)
    cfg = HomotopyConfig(40, p)
    T = toeplitz(f, n)
    tr = run(T, f, cfg)
    N = cfg.n_steps
    assert tr.gammas[0] == 0.0 and tr.gammas[-1] == 1.0
    assert np.allclose(tr.values[:, 0], f.values(tau_grid(n, p).points), atol=1e-12)
    exact = sym_eigvals(T)
    assert np.max(np.abs(np.sort(tr.final_values) - exact)) <= 1e-9
    for k in range(N):
        assert sorted(tr.positions[:, k]) == list(range(n))
    assert np.array_equal(tr.permutation.apply(exact)[np.argsort(tr.permutation.pi_inverse)], exact)
    R = np.asarray(tau_matrix(f, n, p)) - T
    bound = np.linalg.norm(R, 2) / (N - 1) + 1e-8
    # Weyl: the sorted spectra move by at most ||R||/(N-1) per step.
    steps = np.abs(np.diff(np.sort(tr.values, axis=0), axis=1))
    assert steps.max() <= bound
