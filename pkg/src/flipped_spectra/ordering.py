"""Eigenvalue ordering by homotopy from a tau-algebra reference matrix.

The reference ``T_hat`` has a known eigendecomposition on a tau grid, so its
eigenvalues come with a natural order (grid index ``j``). The path
``B(gamma) = T_hat - gamma (T_hat - target)`` is sampled at ``n_steps``
equispaced values of ``gamma`` in ``[0, 1]`` and each eigenvector is followed
by continuity, which transports the grid order to the target spectrum.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import scipy.linalg
from scipy.optimize import linear_sum_assignment
from sklearn.base import BaseEstimator

from . import _validation
from .eig import check_size, check_symmetric, clusters, sym_eig
from .exceptions import AssignmentConflict, DegenerateWarning, UnsupportedKind
from .matrices import TauParams, tau_basis, tau_grid, tau_matrix
from .spectral import SymbolPermutation
from .symbols import Symbol, TrigPoly

__all__ = [
    "HomotopyConfig",
    "HomotopyTrace",
    "homotopy_order",
    "crossing_gamma",
    "crossing_point",
    "HomotopyOrdering",
]


@dataclass(frozen=True)
class HomotopyConfig:
    """Settings of a homotopy run.

    ``locality_window`` is the half-width, in sorted-eigenvalue positions,
    of the candidate search around each curve's previous position; ``None``
    means ``max(1, n // 4)``.
    """

    n_steps: int = 100
    reference: TauParams = TauParams(0.0, 0.0)
    locality_window: Optional[int] = None
    degenerate_gap: float = 1e-9

    def __post_init__(self):
        if self.n_steps < 2:
            raise ValueError("n_steps must be at least 2")
        if self.locality_window is not None and self.locality_window < 1:
            raise ValueError("locality_window must be at least 1")
        if not isinstance(self.reference, TauParams):
            object.__setattr__(self, "reference", TauParams.parse(self.reference))

    def window(self, n: int) -> int:
        return self.locality_window if self.locality_window is not None else max(1, n // 4)


@dataclass(frozen=True)
class HomotopyTrace:
    """Result of :func:`homotopy_order`.

    Attributes
    ----------
    gammas : ndarray, shape (n_steps,)
    values : ndarray, shape (n, n_steps)
        ``values[j, k]`` is the eigenvalue followed by curve ``j`` (grid
        point ``theta_{j+1}``) at step ``k``.
    positions : ndarray, shape (n, n_steps)
        0-based ascending position of curve ``j`` in the spectrum at step ``k``.
    permutation : SymbolPermutation
        Final order: ``pi_inverse[j]`` is the ascending rank of the target
        eigenvalue reached by curve ``j``.
    crossings : list of (step, i, j)
        Steps at which curves ``i`` and ``j`` (1-based) swap order.
    degenerate_steps : list of int
        Steps whose spectrum contained a cluster closer than the
        degenerate gap.
    """

    gammas: np.ndarray
    values: np.ndarray
    positions: np.ndarray
    permutation: SymbolPermutation
    crossings: list = field(default_factory=list)
    degenerate_steps: list = field(default_factory=list)
    config: Optional[HomotopyConfig] = None

    @property
    def final_values(self) -> np.ndarray:
        return self.values[:, -1]


def even_part(f: Symbol) -> TrigPoly:
    if not isinstance(f, TrigPoly):
        raise UnsupportedKind("the homotopy reference needs a TrigPoly symbol")
    c = f.coeffs
    keys = set(c) | {-k for k in c}
    return TrigPoly({k: (c.get(k, 0.0) + c.get(-k, 0.0)) / 2 for k in keys})


def _rotate_clusters(w, V, U, gap):
    """Align degenerate clusters of ``V`` with the previous vectors ``U``.

    Within a cluster the basis is arbitrary, so it is rotated (orthogonal
    Procrustes) onto the previous vectors with the largest projections.
    """
    degenerate = False
    for lo, hi in clusters(w, gap):
        if hi - lo < 2:
            continue
        degenerate = True
        Wc = V[:, lo:hi]
        score = np.linalg.norm(Wc.T @ U, axis=0)
        sel = np.sort(np.argsort(-score, kind="stable")[: hi - lo])
        a, _, b = np.linalg.svd(Wc.T @ U[:, sel])
        V[:, lo:hi] = Wc @ (a @ b)
    return degenerate


def _assign(eps, pos, window):
    """One-to-one match of curves to current eigenvectors.

    Greedy on ascending distance inside the locality window (ties resolved
    by ascending index); if greedy gets stuck, an optimal assignment over the
    windowed candidates is used instead.
    """
    n = eps.shape[0]
    r = np.arange(n)
    allowed = np.abs(r[None, :] - pos[:, None]) <= window
    jj, rr = np.nonzero(allowed)
    order = np.lexsort((rr, jj, eps[jj, rr]))
    assign = np.full(n, -1)
    taken = np.zeros(n, dtype=bool)
    for t in order:
        j, c = jj[t], rr[t]
        if assign[j] < 0 and not taken[c]:
            assign[j] = c
            taken[c] = True
    if np.all(assign >= 0):
        return assign
    cost = np.where(allowed, eps, 1e6)
    rows, cols = linear_sum_assignment(cost)
    if np.any(~allowed[rows, cols]):
        raise AssignmentConflict("no one-to-one assignment exists inside the locality window")
    assign[rows] = cols
    return assign


def homotopy_order(target, f: Symbol, cfg: HomotopyConfig = HomotopyConfig()) -> HomotopyTrace:
    """Order the eigenvalues of ``target`` by eigenvector continuation.

    Parameters
    ----------
    target : (n, n) array
        Real symmetric matrix, e.g. ``T_n(f)`` or a Gram matrix.
    f : Symbol
        Symbol whose even part defines the reference ``tau_matrix``; for a
        Gram target pass the modulus-squared symbol.
    cfg : HomotopyConfig

    Returns
    -------
    HomotopyTrace
    """
    target = check_symmetric(target)
    n = target.shape[0]
    check_size(n)
    g = even_part(f)
    ref = cfg.reference
    theta = tau_grid(n, ref).points if n > 1 else np.array([math.pi / 2])
    T_hat = tau_matrix(g, n, ref) if n > 1 else np.array([[g.values(theta[0])]])
    R = T_hat - target
    window = cfg.window(n)
    N = cfg.n_steps
    gammas = np.linspace(0.0, 1.0, N)

    lam = np.asarray(g.values(theta), dtype=float).reshape(n)
    U = np.array(tau_basis(n, ref)) if n > 1 else np.ones((1, 1))
    pos = np.empty(n, dtype=int)
    pos[np.argsort(lam, kind="stable")] = np.arange(n)

    values = np.empty((n, N))
    positions = np.empty((n, N), dtype=int)
    values[:, 0] = lam
    positions[:, 0] = pos
    degenerate_steps = []
    if len(clusters(np.sort(lam), cfg.degenerate_gap)) < n:
        degenerate_steps.append(0)

    for k in range(1, N):
        w, V = scipy.linalg.eigh(T_hat - gammas[k] * R, check_finite=False)
        if _rotate_clusters(w, V, U, cfg.degenerate_gap):
            degenerate_steps.append(k)
        overlap = np.abs(U.T @ V)
        eps = np.sqrt(np.maximum(2.0 - 2.0 * overlap, 0.0))
        assign = _assign(eps, pos, window)
        newU = V[:, assign]
        s = np.sign(np.sum(newU * U, axis=0))
        s[s == 0] = 1.0
        U = newU * s
        pos = assign
        values[:, k] = w[assign]
        positions[:, k] = pos

    # Curves ending in a degenerate cluster get ranks in ascending curve order.
    final = positions[:, -1].copy()
    w_end = np.sort(values[:, -1])
    for lo, hi in clusters(w_end, cfg.degenerate_gap):
        if hi - lo > 1:
            members = np.where((final >= lo) & (final < hi))[0]
            final[np.sort(members)] = np.arange(lo, hi)
    positions[:, -1] = final

    if degenerate_steps:
        warnings.warn(
            f"homotopy crossed degenerate clusters at {len(degenerate_steps)} step(s)",
            DegenerateWarning,
            stacklevel=2,
        )
    crossings = _find_crossings(values)
    values.setflags(write=False)
    positions.setflags(write=False)
    return HomotopyTrace(
        gammas=gammas,
        values=values,
        positions=positions,
        permutation=SymbolPermutation.from_inverse(final + 1, None),
        crossings=crossings,
        degenerate_steps=degenerate_steps,
        config=cfg,
    )


def _find_crossings(values, tol: float = 1e-12) -> list:
    out = []
    d = values[:, None, :] - values[None, :, :]
    for k in range(1, values.shape[1]):
        a, b = d[:, :, k - 1], d[:, :, k]
        flips = (a * b < 0) & (np.abs(a) > tol) & (np.abs(b) > tol)
        for i, j in zip(*np.nonzero(np.triu(flips, 1))):
            out.append((k, int(i) + 1, int(j) + 1))
    return out


def crossing_point(trace: HomotopyTrace, i: int, j: int):
    """First intersection ``(gamma, value)`` of curves ``i`` and ``j`` (1-based),
    linearly interpolated between steps, or ``None``."""
    a = trace.values[i - 1]
    b = trace.values[j - 1]
    d = a - b
    for k in range(1, d.size):
        if d[k - 1] != 0.0 and (d[k - 1] * d[k] < 0 or d[k] == 0.0):
            t = d[k - 1] / (d[k - 1] - d[k])
            g0, g1 = trace.gammas[k - 1], trace.gammas[k]
            return float(g0 + t * (g1 - g0)), float(a[k - 1] + t * (a[k] - a[k - 1]))
    return None


def crossing_gamma(trace: HomotopyTrace, i: int, j: int):
    pt = crossing_point(trace, i, j)
    return None if pt is None else pt[0]


class HomotopyOrdering(BaseEstimator):
    """Estimator wrapper around :func:`homotopy_order`.

    Parameters
    ----------
    symbol : Symbol
        Symbol of the reference (see :func:`homotopy_order`).
    reference : str or TauParams, default "0,0"
    n_steps : int, default 100
    locality_window : int or None
    degenerate_gap : float, default 1e-9

    Attributes
    ----------
    trace_ : HomotopyTrace
    permutation_ : SymbolPermutation
    ordered_values_ : ndarray
        Target eigenvalues attached to ``theta_1..theta_n``.
    """

    def __init__(self, symbol=None, reference="0,0", n_steps=100, locality_window=None,
                 degenerate_gap=1e-9):
        self.symbol = symbol
        self.reference = reference
        self.n_steps = n_steps
        self.locality_window = locality_window
        self.degenerate_gap = degenerate_gap

    def _config(self):
        ref = self.reference
        if not isinstance(ref, TauParams):
            ref = TauParams.parse(ref)
        return HomotopyConfig(self.n_steps, ref, self.locality_window, self.degenerate_gap)

    def fit(self, X, y=None):
        X = _validation.check_symmetric_matrix(X)
        if self.symbol is None:
            raise ValueError("HomotopyOrdering needs a symbol")
        self.trace_ = homotopy_order(X, self.symbol, self._config())
        self.permutation_ = self.trace_.permutation
        self.n_features_in_ = X.shape[1]
        self.eigenvalues_ = sym_eig(X).values
        self.ordered_values_ = self.permutation_.apply(self.eigenvalues_)
        return self

    def transform(self, X):
        """Eigenvalues of ``X`` arranged by the fitted order."""
        _validation.check_is_fitted(self, "trace_")
        X = _validation.check_symmetric_matrix(X, n=self.n_features_in_)
        return self.permutation_.apply(sym_eig(X).values)

    def fit_transform(self, X, y=None):
        return self.fit(X).ordered_values_
