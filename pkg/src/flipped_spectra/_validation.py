"""Input validation shared by the estimator wrappers."""

from __future__ import annotations

import numpy as np
from sklearn.utils.validation import check_array, check_is_fitted

from .eig import check_symmetric

__all__ = ["check_symmetric_matrix", "check_is_fitted", "check_size_param"]


def check_symmetric_matrix(X, n=None) -> np.ndarray:
    """Finite, square, symmetric float matrix; optionally of size ``n``."""
    X = check_array(X, dtype=np.float64, ensure_2d=True, ensure_min_samples=1)
    X = check_symmetric(X)
    if n is not None and X.shape[0] != n:
        raise ValueError(f"expected a {n}x{n} matrix, got {X.shape}")
    return X


def check_size_param(n, name="n", minimum=1) -> int:
    if isinstance(n, (bool, np.bool_)) or int(n) != n or n < minimum:
        raise ValueError(f"{name} must be an integer >= {minimum}, got {n!r}")
    return int(n)
