import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import optimize

from flipped_spectra import (
    Grid,
    PairingReport,
    SymbolPermutation,
    Symmetry,
    TauParams,
    TrigPoly,
    au_deviation,
    cantoni_butler_order,
    classify_symmetry,
    dst_matrix,
    ergodic_gap,
    get_symbol,
    hankel,
    perfect_grid,
    psi_extension,
    absolute,
    repair_sign_mismatches,
    sign_match,
    smoothed_indicator,
    sym_eigvals,
    symbol_sort_permutation,
    tau_grid,
    toeplitz,
)
from flipped_spectra.exceptions import MultisetMismatch, NoRoot, OutOfRange
from flipped_spectra.spectral import identity, monotone_branches, square

coeff = st.floats(-3, 3, allow_nan=False, allow_infinity=False)

TABLE2_PI = (6, 7, 5, 8, 9, 4, 10, 3, 2, 1)
TABLE3_PI = (6, 7, 8, 5, 9, 4, 10, 3, 2, 1)


@st.composite
def even_polys(draw, max_degree=4, min_degree=0):
    K = draw(st.integers(min_degree, max_degree))
    c = {}
    for k in range(K + 1):
        c[k] = c[-k] = draw(coeff)
    return TrigPoly(c)


def random_symmetric_toeplitz(rng, n):
    c = rng.standard_normal(n)
    return TrigPoly({k: c[abs(k)] for k in range(-(n - 1), n)})


# -- classification and Cantoni-Butler ---------------------------------------------


def test_classify_symmetry_examples():
    n = 7
    e = np.zeros(n)
    e[0], e[-1] = 1, 1
    assert classify_symmetry(e / math.sqrt(2)) is Symmetry.SYMMETRIC
    e[-1] = -1
    assert classify_symmetry(e / math.sqrt(2)) is Symmetry.SKEW
    assert classify_symmetry(np.eye(n)[0]) is Symmetry.NEITHER
    S = dst_matrix(n)
    for i in range(n):
        expected = Symmetry.SYMMETRIC if i % 2 == 0 else Symmetry.SKEW
        assert classify_symmetry(S[:, i]) is expected


def test_cantoni_butler_table1_row10():
    rep = cantoni_butler_order(toeplitz(get_symbol("example41"), 20))
    assert rep.lambda_T[9] == pytest.approx(1.04221339677660198160, abs=1e-9)
    assert rep.lambda_H[9] == pytest.approx(-1.04221339677660198160, abs=1e-9)
    assert rep.lambda_T[19] == pytest.approx(2.45795620370766419040, abs=1e-9)
    assert list(rep.sign) == [1, -1] * 10


def test_cantoni_butler_identity_matrix():
    rep = cantoni_butler_order(np.eye(7))
    assert np.allclose(rep.lambda_H, [1, -1, 1, -1, 1, -1, 1], atol=1e-14)
    assert int(np.sum(rep.lambda_H > 0)) == 4


def test_cantoni_butler_random_n50_against_direct_eigensolve():
    f = random_symmetric_toeplitz(np.random.default_rng(50), 50)
    rep = cantoni_butler_order(toeplitz(f, 50))
    direct = sym_eigvals(hankel(f, 50))
    assert np.max(np.abs(np.sort(rep.lambda_H) - direct)) <= 1e-9


@given(st.sampled_from([1, 2, 3, 7, 20, 51, 100]), st.integers(0, 2**31))
def test_cantoni_butler_property(n, seed):
    f = random_symmetric_toeplitz(np.random.default_rng(seed), n)
    T = toeplitz(f, n)
    rep = cantoni_butler_order(T)
    kinds = [classify_symmetry(v) for v in rep.vectors.T]
    assert kinds.count(Symmetry.SYMMETRIC) == (n + 1) // 2
    assert kinds.count(Symmetry.SKEW) == n // 2
    signed = [lam if k is Symmetry.SYMMETRIC else -lam for lam, k in zip(rep.lambda_T, kinds)]
    assert np.max(np.abs(np.sort(signed) - sym_eigvals(hankel(f, n)))) <= 1e-9
    assert np.allclose(np.abs(rep.lambda_H), np.abs(rep.lambda_T))


def test_cantoni_butler_degenerate_cluster_rotated():
    # cos t + cos 2t at n = 10 has the double eigenvalue -1.
    rep = cantoni_butler_order(toeplitz(get_symbol("cos+cos2"), 10))
    assert np.max(np.abs(np.sort(rep.lambda_H) - sym_eigvals(hankel(get_symbol("cos+cos2"), 10)))) <= 1e-9


def abs_range(f):
    """``(min |f|, max |f|)`` on [0, pi]: dense samples refined by bounded search."""
    t = np.linspace(0, math.pi, 20001)
    x = f.values(t)
    out = []
    for sgn, arr in ((1.0, np.abs(x)), (-1.0, np.abs(x))):
        i = int(np.argmin(sgn * arr))
        lo, hi = t[max(i - 1, 0)], t[min(i + 1, t.size - 1)]
        res = optimize.minimize_scalar(
            lambda s: sgn * abs(f.values(s)), bounds=(lo, hi), method="bounded",
            options={"xatol": 1e-14},
        )
        out.append(min(sgn * arr[i], sgn * res.fun) * sgn)
    m, M = out
    if x.min() <= 0 <= x.max():
        m = 0.0
    return m, M


@given(even_polys(min_degree=1), st.sampled_from([64, 65]))
def test_localization_of_flipped_spectrum(f, n):
    m, M = abs_range(f)
    lam = np.abs(sym_eigvals(hankel(f, n)))
    assert np.all(lam >= m - 1e-9) and np.all(lam <= M + 1e-9)


@given(even_polys(min_degree=1), st.sampled_from([256, 300]))
def test_signed_count_balance(f, n):
    lam = sym_eigvals(hankel(f, n))
    pos, neg = int(np.sum(lam > 0)), int(np.sum(lam < 0))
    assert abs(pos - neg) <= max(1, 0.05 * n)


# -- perfect grids ----------------------------------------------------------------


def test_perfect_grid_table1_first_point():
    f = get_symbol("example41")
    lam = sym_eigvals(toeplitz(f, 20))
    g = perfect_grid(f, lam)
    assert g.provenance == "root_found"
    assert g.points[0] == pytest.approx(1.57079632679490009622, abs=1e-8)
    assert g.points[9] == pytest.approx(1.61300972357149853960, abs=1e-8)


def test_perfect_grid_exact_samples():
    f = TrigPoly({-1: -1.0, 0: 2.0, 1: -1.0})
    n = 30
    theta = np.arange(1, n + 1) * math.pi / (n + 1)
    g = perfect_grid(f, 2 - 2 * np.cos(theta))
    assert np.max(np.abs(g.points - theta)) <= 1e-9


@pytest.mark.parametrize("n", [20, 40])
def test_perfect_grid_non_monotone_self_consistent(n):
    f = get_symbol("example42")
    lam = sym_eigvals(toeplitz(f, n))
    order = symbol_sort_permutation(f, Grid.uniform(n))
    g = perfect_grid(f, order.apply(lam))
    assert np.all(np.diff(g.points) >= 0)
    assert np.max(np.abs(f.values(g.meta["xi"]) - order.apply(lam))) <= 1e-10


def test_perfect_grid_au_decreases_example42():
    f = get_symbol("example42")
    dev = []
    for n in (20, 40, 80, 160):
        lam = sym_eigvals(toeplitz(f, n))
        order = symbol_sort_permutation(f, Grid.uniform(n))
        dev.append(au_deviation(perfect_grid(f, order.apply(lam))))
    assert all(b <= 1.1 * a for a, b in zip(dev, dev[1:]))


def test_perfect_grid_errors():
    f = TrigPoly({-1: -1.0, 0: 2.0, 1: -1.0})
    with pytest.raises(OutOfRange) as info:
        perfect_grid(f, [1.0, 5.0])
    assert info.value.index == 1
    with pytest.raises(ValueError):
        perfect_grid(f, [1.0], initial=Grid.uniform(2))
    # A discontinuous piecewise symbol whose range has a hole.
    from flipped_spectra import Piecewise

    step = Piecewise.from_expressions([[0, "pi/2", "0"], ["pi/2", "pi", "1"]])
    with pytest.raises(NoRoot):
        perfect_grid(step, [0.5])


def test_monotone_branches():
    assert len(monotone_branches(get_symbol("lap2"))) == 1
    br = monotone_branches(get_symbol("cos+cos2"))
    assert len(br) == 2
    assert br[0].b == pytest.approx(math.acos(-0.25), abs=1e-7)
    assert br[0].direction == -1 and br[1].direction == 1


# -- a.u. deviation -----------------------------------------------------------------


def test_au_deviation_examples():
    n = 10
    uniform = Grid(np.arange(1, n + 1) * math.pi / n)
    assert au_deviation(uniform) == 0.0
    assert au_deviation(tau_grid(10, TauParams(0, -1))) == pytest.approx(math.pi / 21, abs=1e-14)
    f = get_symbol("example41")
    assert au_deviation(perfect_grid(f, sym_eigvals(toeplitz(f, 20)))) > 0.5


def test_grid_validation():
    with pytest.raises(ValueError):
        Grid([2.0, 1.0])
    with pytest.raises(ValueError):
        Grid([4.0])
    with pytest.raises(ValueError):
        Grid([1.0], provenance="guess")
    g = Grid.uniform(3)
    with pytest.raises(ValueError):
        g.points[0] = 0.0


# -- ergodic gap ------------------------------------------------------------------------


def test_ergodic_gap_riemann_sum():
    f = get_symbol("example42")
    gaps = []
    for n in (16, 64, 256):
        x = f.values(np.arange(1, n + 1) * math.pi / (n + 1))
        gaps.append(ergodic_gap(x, f))
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[2] < 0.1


def test_ergodic_gap_flipped_spectrum():
    f = get_symbol("example42")
    psi = psi_extension(absolute(f))
    g256 = ergodic_gap(sym_eigvals(hankel(f, 256)), psi, (0, 2 * math.pi))
    g512 = ergodic_gap(sym_eigvals(hankel(f, 512)), psi, (0, 2 * math.pi))
    assert g512 < g256 < 0.05


def test_ergodic_gap_zero():
    psi = psi_extension(lambda x: np.zeros_like(np.asarray(x, dtype=float)))
    for F in (identity, square, smoothed_indicator(-1, 1)):
        assert ergodic_gap(np.zeros(10), psi, (0, 2 * math.pi), F) == pytest.approx(0.0, abs=1e-12)


def test_ergodic_gap_rejects_bad_values():
    with pytest.raises(ValueError):
        ergodic_gap([], get_symbol("f1"))
    with pytest.raises(ValueError):
        ergodic_gap([np.nan], get_symbol("lap2"))


def test_smoothed_indicator():
    F = smoothed_indicator(0.0, 1.0, width=0.1)
    assert np.allclose(F([-1.0, 0.0, 0.5, 1.0, 2.0]), [0.0, 0.5, 1.0, 0.5, 0.0])


# -- permutations and sign matching ---------------------------------------------------


def test_symbol_sort_table2():
    order = symbol_sort_permutation(get_symbol("cos+cos2"), Grid.uniform(10))
    assert tuple(order.pi) == TABLE2_PI
    assert np.array_equal(order.pi[order.pi_inverse - 1], np.arange(1, 11))


def test_symbol_sort_trivial_cases():
    assert np.array_equal(symbol_sort_permutation(get_symbol("lap2"), Grid.uniform(9)).pi, np.arange(1, 10))
    assert np.array_equal(symbol_sort_permutation(TrigPoly({0: 3.0}), Grid.uniform(9)).pi, np.arange(1, 10))


def test_symbol_permutation_validation():
    with pytest.raises(ValueError):
        SymbolPermutation([1, 1], [1, 2])
    p = SymbolPermutation.from_inverse([3, 1, 2])
    assert list(p.pi) == [2, 3, 1]
    assert list(p.apply([10, 20, 30])) == [30, 10, 20]


def _cos_cos2_setup(n=10):
    f = get_symbol("cos+cos2")
    return f, sym_eigvals(toeplitz(f, n)), sym_eigvals(hankel(f, n))


def test_sign_match_table2_mismatches():
    f, lt, lh = _cos_cos2_setup()
    rep = sign_match(lt, lh, symbol_sort_permutation(f, Grid.uniform(10)))
    assert rep.mismatches == [5, 8]
    assert np.allclose(np.abs(rep.lambda_H), rep.lambda_T * np.sign(rep.lambda_T), atol=1e-6)


def test_sign_match_table3_no_mismatch():
    f, lt, lh = _cos_cos2_setup()
    rep = sign_match(lt, lh, SymbolPermutation(TABLE3_PI, np.argsort(TABLE3_PI) + 1))
    assert rep.mismatches == []


def test_repair_swaps_mismatched_pair():
    f, lt, lh = _cos_cos2_setup()
    rep = repair_sign_mismatches(sign_match(lt, lh, symbol_sort_permutation(f, Grid.uniform(10))))
    assert rep.mismatches == []


def test_sign_match_length_and_multiset_errors():
    p = SymbolPermutation.identity(2)
    with pytest.raises(MultisetMismatch):
        sign_match([1.0, 2.0], [1.0], p)
    with pytest.raises(MultisetMismatch):
        sign_match([1.0, 2.0], [1.0, -3.0], p)


@given(st.lists(st.floats(0.1, 10), min_size=1, max_size=20, unique=True))
def test_sign_match_consistent_alternation(values):
    sigma = np.sort(values)
    n = sigma.size
    lh = np.where(np.arange(n) % 2 == 0, sigma, -sigma)
    rep = sign_match(sigma, lh, SymbolPermutation.identity(n))
    assert rep.mismatches == []
    assert np.array_equal(rep.lambda_H, lh)


def test_pairing_report_with_xi():
    rep = PairingReport([1], [1.0], [1.0], [1], [np.nan], [False])
    assert rep.with_xi([0.5]).xi[0] == 0.5
    assert len(rep) == 1
