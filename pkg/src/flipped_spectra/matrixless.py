"""Matrix-less eigenvalue prediction for T_n(f).

For a smooth even symbol the eigenvalues admit the expansion

    lambda_j(T_n(f)) = f(theta_j) + sum_{m=1}^{k} c_m(theta_j) h^m + O(h^{k+1}),

with ``theta_j = j pi / (n + 1)`` and ``h = 1 / (n + 1)``. The functions
``c_m`` are sampled on the grid of a small size ``n0`` by least squares over
the nested sizes ``n_s = 2^s (n0 + 1) - 1`` (which all contain the ``n0``
grid), then interpolated to predict the spectrum at any large ``n`` in
``O(n k)`` work.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline
from sklearn.base import BaseEstimator

from . import _validation
from .eig import check_size, sym_eigvals
from .exceptions import ComplexValued, IllConditioned, OrderingAmbiguous
from .grid import Grid
from .matrices import TauParams, hankel, toeplitz
from .ordering import HomotopyConfig, homotopy_order
from .spectral import monotone_branches, sign_match, symbol_sort_permutation
from .symbols import Symbol, monotone_rearrangement

__all__ = [
    "STRATEGIES",
    "ExpansionModel",
    "nested_sizes",
    "extract_expansion",
    "predict_eigenvalues",
    "predict_flipped",
    "MatrixLessEigensolver",
]

STRATEGIES = ("auto", "monotone", "permutation", "homotopy", "rearranged")
BOUNDARIES = ("zero", "extrapolate")
MAX_CONDITION = 1e12


def nested_sizes(n0: int, q: int) -> list:
    return [2**s * (n0 + 1) - 1 for s in range(q + 1)]


@dataclass(frozen=True)
class ExpansionModel:
    """Samples of the expansion functions on the base grid.

    Attributes
    ----------
    k : int
        Expansion order.
    n0 : int
        Base size; nodes are ``theta_j = j pi / (n0 + 1)``.
    sizes : tuple of int
        Sizes ``n_0 < ... < n_q`` used in the fit.
    samples : ndarray, shape (k, n0)
        ``samples[m - 1, j - 1] = c_m(theta_j)``.
    strategy : str
        Ordering strategy used during extraction.
    boundary : str
        ``"zero"`` pins every ``c_m`` to 0 at ``theta = 0`` and ``pi`` in the
        interpolant; ``"extrapolate"`` uses a not-a-knot spline through the
        samples only.
    """

    k: int
    n0: int
    sizes: tuple
    samples: np.ndarray
    strategy: str = "monotone"
    boundary: str = "zero"
    rearrangement_samples: int = 8192
    _splines: list = field(default_factory=list, init=False, repr=False, compare=False)

    def __post_init__(self):
        s = np.array(self.samples, dtype=float).reshape(self.k, self.n0)
        s.setflags(write=False)
        object.__setattr__(self, "samples", s)
        object.__setattr__(self, "sizes", tuple(int(n) for n in self.sizes))
        if self.boundary not in BOUNDARIES:
            raise ValueError(f"boundary must be one of {BOUNDARIES}")
        if len(self.sizes) - 1 < self.k:
            raise ValueError("an order-k model needs at least k + 1 sizes")
        self._splines.extend(self._build(row) for row in s)

    @property
    def q(self) -> int:
        return len(self.sizes) - 1

    @property
    def theta(self) -> np.ndarray:
        return np.arange(1, self.n0 + 1) * math.pi / (self.n0 + 1)

    def _build(self, row):
        if self.boundary == "zero":
            return CubicSpline(np.r_[0.0, self.theta, math.pi], np.r_[0.0, row, 0.0])
        if self.n0 < 2:
            return lambda t, c=row[0]: np.full(np.shape(t), c)
        return CubicSpline(self.theta, row)

    def c(self, m: int, theta) -> np.ndarray:
        """Interpolated ``c_m(theta)`` for ``m = 1..k``."""
        return self._splines[m - 1](theta)


def _is_monotone(f: Symbol) -> bool:
    return len(monotone_branches(f)) == 1


def _base_function(f: Symbol, strategy: str, samples: int):
    if strategy == "rearranged":
        fr = monotone_rearrangement(f, samples)
        return lambda theta: fr(np.asarray(theta) / math.pi)
    return f.values


def _ordered_spectrum(f, n, strategy, reference, n_steps, check_signs):
    """Eigenvalues of ``T_n(f)`` attached to ``theta_1..theta_n``."""
    T = toeplitz(f, n)
    lam = sym_eigvals(T)
    if strategy == "rearranged":
        return np.asarray(lam)
    if strategy == "monotone":
        return np.asarray(lam) if f.values(math.pi) >= f.values(0.0) else np.asarray(lam)[::-1]
    if strategy == "permutation":
        order = symbol_sort_permutation(f, Grid.uniform(n))
    else:
        cfg = HomotopyConfig(n_steps=n_steps, reference=reference)
        order = homotopy_order(T, f, cfg).permutation
    if check_signs:
        report = sign_match(lam, sym_eigvals(hankel(f, n)), order)
        if report.mismatches:
            raise OrderingAmbiguous(
                f"{strategy} ordering at n={n} disagrees with the flipped spectrum "
                f"at rows {report.mismatches}"
            )
    return order.apply(lam)


def extract_expansion(
    f: Symbol,
    n0: int,
    q: int,
    k: int,
    strategy: str = "auto",
    boundary: str = "zero",
    reference: TauParams = TauParams(0.0, 0.0),
    n_steps: int = 100,
    check_signs: bool = True,
    rearrangement_samples: int = 8192,
) -> ExpansionModel:
    """Fit ``c_1..c_k`` on the ``n0`` grid from exact spectra at nested sizes.

    Parameters
    ----------
    f : Symbol
        Real-valued even symbol.
    n0, q, k : int
        Base size, number of refinements and expansion order (``k <= q``).
    strategy : {"auto", "monotone", "permutation", "homotopy", "rearranged"}
        How eigenvalues are attached to grid points. ``"auto"`` picks
        ``"monotone"`` for monotone ``f`` on ``[0, pi]`` and ``"permutation"``
        otherwise. ``"rearranged"`` expands around the monotone rearrangement
        of ``f`` instead of ``f``.
    check_signs : bool
        For the permutation-based strategies, require that the transported
        signs agree with the spectrum of ``H_n(f)`` at every size.

    Raises
    ------
    OrderingAmbiguous
        The ordering is inconsistent with the flipped spectrum, or
        ``"monotone"`` was requested for a non-monotone symbol.
    IllConditioned
        The least-squares system in ``h`` has condition number above 1e12.
    """
    n0 = _validation.check_size_param(n0, "n0")
    q = _validation.check_size_param(q, "q", minimum=0)
    k = _validation.check_size_param(k, "k", minimum=0)
    if k > q:
        raise ValueError("the expansion order k cannot exceed q")
    if strategy not in STRATEGIES:
        raise ValueError(f"strategy must be one of {STRATEGIES}")
    if not f.is_real_valued():
        raise ComplexValued("matrix-less expansion needs a real-valued symbol")
    if not f.is_even():
        raise ValueError("matrix-less expansion needs an even symbol")
    sizes = nested_sizes(n0, q)
    check_size(sizes[-1])
    monotone = _is_monotone(f)
    if strategy == "auto":
        strategy = "monotone" if monotone else "permutation"
    if strategy == "monotone" and not monotone:
        raise OrderingAmbiguous("symbol is not monotone on [0, pi]; choose another strategy")

    base = _base_function(f, strategy, rearrangement_samples)
    theta0 = np.arange(1, n0 + 1) * math.pi / (n0 + 1)
    f0 = np.asarray(base(theta0), dtype=float)
    D = np.empty((q + 1, n0))
    for s, n in enumerate(sizes):
        lam = _ordered_spectrum(f, n, strategy, reference, n_steps, check_signs)
        D[s] = lam[2**s * np.arange(1, n0 + 1) - 1] - f0
    h = 1.0 / (np.asarray(sizes, dtype=float) + 1.0)
    if k == 0:
        C = np.zeros((0, n0))
    else:
        A = h[:, None] ** np.arange(1, k + 1)[None, :]
        cond = np.linalg.cond(A)
        if not np.isfinite(cond) or cond > MAX_CONDITION:
            raise IllConditioned(f"extrapolation system condition {cond:.3e} exceeds 1e12")
        C = np.linalg.lstsq(A, D, rcond=None)[0]
    return ExpansionModel(k, n0, tuple(sizes), C, strategy, boundary, rearrangement_samples)


def predict_eigenvalues(model: ExpansionModel, f: Symbol, n: int) -> np.ndarray:
    """Predicted eigenvalues attached to ``theta_j = j pi/(n+1)``, ``j = 1..n``.

    For monotone increasing ``f`` (and the rearranged strategy) this is the
    ascending spectrum; otherwise entry ``j`` is the eigenvalue the ordering
    assigns to ``theta_j``.
    """
    n = _validation.check_size_param(n)
    if n < model.sizes[-1]:
        raise ValueError(f"prediction size {n} is below the largest fitted size {model.sizes[-1]}")
    theta = np.arange(1, n + 1) * (math.pi / (n + 1))
    h = 1.0 / (n + 1)
    base = _base_function(f, model.strategy, model.rearrangement_samples)
    out = np.asarray(base(theta), dtype=float).copy()
    hm = 1.0
    for m in range(1, model.k + 1):
        hm *= h
        out += model.c(m, theta) * hm
    return out


def predict_flipped(model: ExpansionModel, f: Symbol, n: int) -> np.ndarray:
    """Predicted ``lambda_j(H_n(f)) = (-1)^(j+1) lambda_j(T_n(f))`` in grid order."""
    lam = predict_eigenvalues(model, f, n)
    return np.where(np.arange(lam.size) % 2 == 0, lam, -lam)


class MatrixLessEigensolver(BaseEstimator):
    """Estimator front end for expansion extraction and prediction.

    ``fit`` extracts the expansion of ``symbol``; ``predict(n)`` returns the
    predicted eigenvalues of ``T_n(symbol)`` in grid order.

    Parameters
    ----------
    symbol : Symbol
    n0 : int, default 50
    q : int, default 3
    k : int, default 2
    strategy : str, default "auto"
    boundary : {"zero", "extrapolate"}, default "zero"
    reference : str or TauParams, default "0,0"
        Reference of the homotopy strategy.
    n_steps : int, default 100

    Attributes
    ----------
    model_ : ExpansionModel
    """

    def __init__(self, symbol=None, n0=50, q=3, k=2, strategy="auto", boundary="zero",
                 reference="0,0", n_steps=100):
        self.symbol = symbol
        self.n0 = n0
        self.q = q
        self.k = k
        self.strategy = strategy
        self.boundary = boundary
        self.reference = reference
        self.n_steps = n_steps

    def fit(self, X=None, y=None):
        if self.symbol is None:
            raise ValueError("MatrixLessEigensolver needs a symbol")
        ref = self.reference
        if not isinstance(ref, TauParams):
            ref = TauParams.parse(ref)
        self.model_ = extract_expansion(
            self.symbol, self.n0, self.q, self.k, strategy=self.strategy,
            boundary=self.boundary, reference=ref, n_steps=self.n_steps,
        )
        return self

    def predict(self, n) -> np.ndarray:
        _validation.check_is_fitted(self, "model_")
        return predict_eigenvalues(self.model_, self.symbol, n)

    def predict_flipped(self, n) -> np.ndarray:
        _validation.check_is_fitted(self, "model_")
        return predict_flipped(self.model_, self.symbol, n)
