"""Toeplitz, flip, Hankel and tau-algebra matrix builders.

Every builder returns a read-only dense ``numpy`` array.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .eig import check_size, dst_matrix, gram, normalize_signs, sym_eig
from .grid import Grid
from .symbols import Symbol, TrigPoly

__all__ = [
    "TauParams",
    "toeplitz",
    "flip",
    "hankel",
    "tau_generator",
    "tau_grid",
    "tau_basis",
    "tau_matrix",
    "gram",
]


def _frozen(A: np.ndarray) -> np.ndarray:
    A.setflags(write=False)
    return A


@dataclass(frozen=True)
class TauParams:
    """Corner entries ``(eps, phi)`` of the tau-algebra generator."""

    eps: float = 0.0
    phi: float = 0.0

    @classmethod
    def parse(cls, text: str) -> "TauParams":
        """Parse ``"e,p"`` such as ``"0,-1"``."""
        parts = [s.strip() for s in str(text).split(",")]
        if len(parts) != 2:
            raise ValueError(f"expected 'eps,phi', got {text!r}")
        return cls(float(parts[0]), float(parts[1]))

    def key(self) -> tuple:
        return (self.eps, self.phi)

    def __str__(self):
        return f"{self.eps:g},{self.phi:g}"


def toeplitz(f: Symbol, n: int) -> np.ndarray:
    """``T_n(f)`` with entry ``(s, t)`` equal to ``fhat_{s-t}``."""
    if n < 1:
        raise ValueError("n must be positive")
    check_size(n)
    col = np.array([f.fourier_coefficient(k) for k in range(n)])
    row = np.array([f.fourier_coefficient(-k) for k in range(n)])
    return _frozen(scipy.linalg.toeplitz(col, row))


def flip(n: int) -> np.ndarray:
    if n < 1:
        raise ValueError("n must be positive")
    return _frozen(np.fliplr(np.eye(n)))


def hankel(f: Symbol, n: int) -> np.ndarray:
    """``H_n(f) = Y_n T_n(f)``: the rows of ``T_n(f)`` in reverse order."""
    return _frozen(np.flipud(toeplitz(f, n)).copy())


def tau_generator(n: int, p: TauParams = TauParams()) -> np.ndarray:
    """Tridiagonal matrix with unit off-diagonals and diagonal ``(eps, 0, ..., 0, phi)``."""
    if n < 2:
        raise ValueError("the tau generator needs n >= 2")
    G = np.eye(n, k=1) + np.eye(n, k=-1)
    G[0, 0] += p.eps
    G[-1, -1] += p.phi
    return _frozen(G)


_CLOSED_FORMS = {
    (0.0, 0.0): lambda j, n: j * np.pi / (n + 1),
    (0.0, -1.0): lambda j, n: j * np.pi / (n + 0.5),
    (0.0, 1.0): lambda j, n: (j - 0.5) * np.pi / (n + 0.5),
    (1.0, 0.0): lambda j, n: (j - 0.5) * np.pi / (n + 0.5),
}


def tau_grid(n: int, p: TauParams = TauParams()) -> Grid:
    """Grid points ``theta_j`` with generator eigenvalues ``2 cos(theta_j)``.

    Closed forms are used for ``(0,0)``, ``(0,-1)``, ``(0,1)`` and ``(1,0)``;
    other corners are computed as ``arccos(lambda/2)`` and flagged numeric.
    """
    if n < 1:
        raise ValueError("n must be positive")
    rule = _CLOSED_FORMS.get((float(p.eps), float(p.phi)))
    if rule is not None:
        return Grid(rule(np.arange(1, n + 1), n), (0.0, np.pi), "closed_form")
    if n == 1:
        lam = np.array([p.eps + p.phi])
    else:
        lam = scipy.linalg.eigvalsh(tau_generator(n, p))
    theta = np.arccos(np.clip(lam[::-1] / 2, -1.0, 1.0))
    return Grid(np.maximum.accumulate(theta), (0.0, np.pi), "numeric")


def tau_basis(n: int, p: TauParams = TauParams()) -> np.ndarray:
    """Orthonormal eigenvectors of the generator ordered by ascending grid point."""
    key = (float(p.eps), float(p.phi))
    if key == (0.0, 0.0):
        return dst_matrix(n)
    if n == 1:
        return _frozen(np.ones((1, 1)))
    V = sym_eig(tau_generator(n, p)).vectors[:, ::-1]
    return _frozen(normalize_signs(V))


def tau_matrix(f: Symbol, n: int, p: TauParams = TauParams()) -> np.ndarray:
    """``Q diag(f(theta)) Q^T`` on the tau grid of ``p``."""
    if not (isinstance(f, TrigPoly) and f.is_even()):
        raise TypeError("tau_matrix needs a real-valued even TrigPoly")
    check_size(n)
    theta = tau_grid(n, p).points
    Q = tau_basis(n, p)
    M = (Q * f.values(theta)) @ Q.T
    return _frozen((M + M.T) / 2)
