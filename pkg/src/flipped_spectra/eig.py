"""Dense symmetric eigensolver front end, singular values and the DST matrix."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .exceptions import IllConditioned, NoConvergence, NotSymmetric, SizeLimitExceeded

MAX_DENSE_SIZE = 5000
SYMMETRY_TOL = 1e-12
CLUSTER_GAP = 1e-9
SIGN_THRESHOLD = 1e-8
GRAM_CLAMP = 1e-12


@dataclass(frozen=True)
class SpectralDecomposition:
    """Ascending eigenvalues and matching orthonormal eigenvectors (columns)."""

    values: np.ndarray
    vectors: np.ndarray

    def __iter__(self):
        yield self.values
        yield self.vectors

    def __len__(self):
        return self.values.size


def check_size(n: int):
    if n > MAX_DENSE_SIZE:
        raise SizeLimitExceeded(f"dense size {n} exceeds the cap of {MAX_DENSE_SIZE}")


def check_symmetric(A, tol: float = SYMMETRY_TOL) -> np.ndarray:
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise NotSymmetric(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    scale = max(1.0, float(np.max(np.abs(A)))) if A.size else 1.0
    if A.size and np.max(np.abs(A - A.T)) > tol * scale:
        raise NotSymmetric("matrix is not symmetric within tolerance")
    return A


def normalize_signs(V: np.ndarray, threshold: float = SIGN_THRESHOLD) -> np.ndarray:
    """Flip columns so their first entry above ``threshold`` in modulus is positive."""
    V = np.array(V, dtype=float)
    big = np.abs(V) > threshold
    first = np.where(big.any(axis=0), big.argmax(axis=0), 0)
    s = np.sign(V[first, np.arange(V.shape[1])])
    s[s == 0] = 1.0
    return V * s


def clusters(values: np.ndarray, gap: float = CLUSTER_GAP) -> list:
    """Index ranges ``(start, stop)`` of runs of sorted values closer than ``gap``."""
    out = []
    start = 0
    for i in range(1, len(values) + 1):
        if i == len(values) or values[i] - values[i - 1] >= gap:
            out.append((start, i))
            start = i
    return out


def sym_eig(A) -> SpectralDecomposition:
    """Full eigendecomposition of a real symmetric matrix.

    Values are ascending; vectors within a cluster of near-equal values are
    re-orthonormalized and every vector is sign-normalized.
    """
    A = check_symmetric(A)
    check_size(A.shape[0])
    A = (A + A.T) / 2
    try:
        w, V = scipy.linalg.eigh(A, check_finite=False)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from None
    for lo, hi in clusters(w):
        if hi - lo > 1:
            V[:, lo:hi], _ = np.linalg.qr(V[:, lo:hi])
    V = normalize_signs(V)
    w.setflags(write=False)
    V.setflags(write=False)
    return SpectralDecomposition(w, V)


def gram(A) -> np.ndarray:
    A = np.asarray(A, dtype=float)
    G = A.T @ A
    G = (G + G.T) / 2
    G.setflags(write=False)
    return G


def singular_values(A) -> np.ndarray:
    """Singular values, descending, from the eigenvalues of ``A^T A``."""
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    w = sym_eig(gram(A)).values
    scale = max(1.0, float(np.max(np.abs(w)))) if w.size else 1.0
    if w.size and w[0] < -GRAM_CLAMP * scale:
        raise IllConditioned(f"Gram matrix has a negative eigenvalue {w[0]:.3e}")
    return np.sqrt(np.clip(w, 0.0, None))[::-1]


def dst_matrix(n: int) -> np.ndarray:
    """Orthogonal, symmetric DST-I matrix ``sqrt(2/(n+1)) sin(i j pi/(n+1))``."""
    if n < 1:
        raise ValueError("n must be positive")
    j = np.arange(1, n + 1)
    S = np.sqrt(2.0 / (n + 1)) * np.sin(np.outer(j, j) * np.pi / (n + 1))
    S.setflags(write=False)
    return S


def sym_eigvals(A) -> np.ndarray:
    """Ascending eigenvalues only (same checks as :func:`sym_eig`)."""
    A = check_symmetric(A)
    check_size(A.shape[0])
    try:
        w = scipy.linalg.eigvalsh((A + A.T) / 2, check_finite=False)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from None
    w.setflags(write=False)
    return w
