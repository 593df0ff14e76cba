"""Spectral pairing of T_n(f) and H_n(f), perfect grids and distribution checks."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy import integrate, optimize

from .eig import check_symmetric, clusters, sym_eig
from .exceptions import ClassificationFailure, MultisetMismatch, NoRoot, OutOfRange
from .grid import Grid, au_deviation
from .symbols import Piecewise, Symbol

__all__ = [
    "Symmetry",
    "PairingReport",
    "SymbolPermutation",
    "classify_symmetry",
    "cantoni_butler_order",
    "perfect_grid",
    "au_deviation",
    "ergodic_gap",
    "identity",
    "square",
    "smoothed_indicator",
    "symbol_sort_permutation",
    "sign_match",
    "monotone_branches",
    "repair_sign_mismatches",
]

CLASSIFY_TOL = 1e-7
ROTATION_GAP = 1e-6
MATCH_TOL = 1e-6
RANGE_SLACK = 1e-9
ROOT_TOL = 1e-10
BRANCH_SAMPLES = 4096


class Symmetry(str, enum.Enum):
    SYMMETRIC = "Symmetric"
    SKEW = "Skew"
    NEITHER = "Neither"


@dataclass(frozen=True)
class PairingReport:
    """Rows ``(j, lambda_T, lambda_H, sign, xi)`` with a mismatch flag per row.

    ``j`` is 1-based. ``xi`` is NaN where no grid point was attached.
    """

    j: np.ndarray
    lambda_T: np.ndarray
    lambda_H: np.ndarray
    sign: np.ndarray
    xi: np.ndarray
    mismatch: np.ndarray
    tolerance: float = MATCH_TOL
    vectors: Optional[np.ndarray] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        for name in ("j", "lambda_T", "lambda_H", "sign", "xi", "mismatch"):
            arr = np.array(getattr(self, name))
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    def __len__(self):
        return self.j.size

    @property
    def mismatches(self) -> list:
        """1-based row indices whose sign disagrees with the prediction."""
        return [int(j) for j, m in zip(self.j, self.mismatch) if m]

    def with_xi(self, xi) -> "PairingReport":
        return PairingReport(
            self.j, self.lambda_T, self.lambda_H, self.sign, np.asarray(xi, dtype=float),
            self.mismatch, self.tolerance, self.vectors,
        )


@dataclass(frozen=True)
class SymbolPermutation:
    """1-based permutation ``pi`` with ``f(theta_pi[0]) <= f(theta_pi[1]) <= ...``.

    ``pi_inverse[j-1]`` is the rank of grid point ``j``: eigenvalue number
    ``pi_inverse[j-1]`` (ascending) is attached to ``theta_j``.
    """

    pi: np.ndarray
    pi_inverse: np.ndarray
    grid: Optional[Grid] = None

    def __post_init__(self):
        pi = np.asarray(self.pi, dtype=int)
        inv = np.asarray(self.pi_inverse, dtype=int)
        n = pi.size
        if sorted(pi.tolist()) != list(range(1, n + 1)) or not np.array_equal(
            pi[inv - 1], np.arange(1, n + 1)
        ):
            raise ValueError("pi and pi_inverse are not inverse permutations of 1..n")
        pi.setflags(write=False)
        inv.setflags(write=False)
        object.__setattr__(self, "pi", pi)
        object.__setattr__(self, "pi_inverse", inv)

    @classmethod
    def from_inverse(cls, inverse, grid=None) -> "SymbolPermutation":
        inv = np.asarray(inverse, dtype=int)
        pi = np.empty_like(inv)
        pi[inv - 1] = np.arange(1, inv.size + 1)
        return cls(pi, inv, grid)

    @classmethod
    def identity(cls, n: int) -> "SymbolPermutation":
        e = np.arange(1, n + 1)
        return cls(e, e.copy())

    def __len__(self):
        return self.pi.size

    def apply(self, ascending) -> np.ndarray:
        """Values attached to ``theta_1..theta_n``, from ascending eigenvalues."""
        return np.asarray(ascending)[self.pi_inverse - 1]


def classify_symmetry(v, tol: float = CLASSIFY_TOL) -> Symmetry:
    v = np.asarray(v, dtype=float)
    yv = v[::-1]
    if np.linalg.norm(yv - v) <= tol:
        return Symmetry.SYMMETRIC
    if np.linalg.norm(yv + v) <= tol:
        return Symmetry.SKEW
    return Symmetry.NEITHER


def _split_cluster(T, Vc):
    """Rotate a cluster of eigenvectors into flip-invariant eigenvectors.

    The flip operator restricted to the cluster is diagonalized; its +1 and
    -1 eigenspaces are then Rayleigh-Ritz refined against ``T``.
    """
    M = Vc.T @ Vc[::-1]
    M = (M + M.T) / 2
    mu, W = np.linalg.eigh(M)
    P = Vc @ W
    values, vectors = [], []
    for part in (P[:, mu < 0], P[:, mu >= 0]):
        if part.shape[1] == 0:
            continue
        B = part.T @ T @ part
        r, Z = np.linalg.eigh((B + B.T) / 2)
        values.append(r)
        vectors.append(part @ Z)
    return np.concatenate(values), np.hstack(vectors)


def cantoni_butler_order(T, tol: float = CLASSIFY_TOL) -> PairingReport:
    """Order the eigenpairs of a real symmetric Toeplitz matrix so that
    symmetric and skew eigenvectors alternate, starting symmetric.

    Symmetric and skew eigenvalues are each taken in ascending order and
    interleaved. Row ``j`` carries ``lambda_H = (-1)^(j+1) lambda_T``.

    Raises
    ------
    ClassificationFailure
        If an eigenvector is neither symmetric nor skew, or the symmetric
        count differs from ``ceil(n/2)``.
    """
    T = check_symmetric(T)
    n = T.shape[0]
    dec = sym_eig(T)
    values = np.array(dec.values)
    vectors = np.array(dec.vectors)
    gap = ROTATION_GAP * max(1.0, float(np.max(np.abs(values))) if n else 1.0)
    for lo, hi in clusters(values, gap):
        if hi - lo > 1:
            values[lo:hi], vectors[:, lo:hi] = _split_cluster(T, vectors[:, lo:hi])
    kinds = [classify_symmetry(vectors[:, i], tol) for i in range(n)]
    if Symmetry.NEITHER in kinds:
        bad = kinds.index(Symmetry.NEITHER)
        raise ClassificationFailure(f"eigenvector {bad} is neither symmetric nor skew")
    sym = [i for i in range(n) if kinds[i] is Symmetry.SYMMETRIC]
    skew = [i for i in range(n) if kinds[i] is Symmetry.SKEW]
    if len(sym) != (n + 1) // 2:
        raise ClassificationFailure(
            f"{len(sym)} symmetric eigenvectors, expected {(n + 1) // 2}"
        )
    sym.sort(key=lambda i: values[i])
    skew.sort(key=lambda i: values[i])
    order = np.empty(n, dtype=int)
    order[0::2] = sym
    order[1::2] = skew
    lam = values[order]
    sign = np.where(np.arange(n) % 2 == 0, 1, -1)
    return PairingReport(
        j=np.arange(1, n + 1),
        lambda_T=lam,
        lambda_H=sign * lam,
        sign=sign,
        xi=np.full(n, np.nan),
        mismatch=np.zeros(n, dtype=bool),
        tolerance=tol,
        vectors=vectors[:, order],
    )


# -- perfect grids ---------------------------------------------------------


@dataclass(frozen=True)
class Branch:
    """A monotone piece of ``f`` on ``[a, b]``; ``direction`` is +1 or -1."""

    a: float
    b: float
    direction: int
    fa: float
    fb: float

    @property
    def lo(self):
        return min(self.fa, self.fb)

    @property
    def hi(self):
        return max(self.fa, self.fb)


def monotone_branches(f, interval=(0.0, math.pi), samples: int = BRANCH_SAMPLES) -> list:
    """Split ``interval`` into monotone branches of the real function ``f``.

    Split points are sign changes of forward differences on a uniform
    sample, refined to the nearby local extremum.
    """
    fv = f.values if isinstance(f, Symbol) else f
    a, b = interval
    x = np.linspace(a, b, samples)
    y = np.asarray(fv(x), dtype=float)
    d = np.sign(np.diff(y))
    cuts = [a]
    last = 0.0
    for i, s in enumerate(d):
        if s == 0:
            continue
        if last != 0 and s != last:
            lo, hi = x[max(i - 1, 0)], x[min(i + 1, samples - 1)]
            sgn = 1.0 if last > 0 else -1.0  # maximum if we were increasing
            res = optimize.minimize_scalar(
                lambda t: -sgn * float(fv(np.array([t]))[0]),
                bounds=(lo, hi),
                method="bounded",
                options={"xatol": 1e-14},
            )
            cuts.append(float(res.x))
        last = s
    cuts.append(b)
    out = []
    for lo, hi in zip(cuts, cuts[1:]):
        if hi <= lo:
            continue
        flo, fhi = (float(v) for v in fv(np.array([lo, hi])))
        out.append(Branch(lo, hi, 1 if fhi >= flo else -1, flo, fhi))
    return out


def _solve_on_branch(fv, br: Branch, lam: np.ndarray, iters: int = 200) -> np.ndarray:
    """Generalized inverse on a monotone branch (vectorized bisection).

    Returns ``sup{x : f(x) <= lam}`` for increasing branches and
    ``sup{x : f(x) >= lam}`` for decreasing ones, so plateaus map to their
    right end.
    """
    lo = np.full(lam.shape, br.a)
    hi = np.full(lam.shape, br.b)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        fm = np.asarray(fv(mid), dtype=float)
        left = br.direction * fm <= br.direction * lam
        lo = np.where(left, mid, lo)
        hi = np.where(left, hi, mid)
        if np.all(hi - lo <= 4e-16 * max(1.0, abs(br.b))):
            break
    return lo


def perfect_grid(f: Symbol, lambdas: Sequence[float], initial=None) -> Grid:
    """Points ``xi_j`` in ``[0, pi]`` with ``f(xi_j) = lambda_j``.

    Each value is solved on the monotone branch containing its start point
    when that branch covers it, otherwise on the branch whose root lies
    closest to the start. ``initial`` is a :class:`Grid` or an array of start
    points aligned with ``lambdas`` (default: ``j pi/(n+1)``). For a
    non-monotone ``f`` pass ``lambdas`` in symbol-sorted order, e.g.
    ``symbol_sort_permutation(f, grid).apply(sorted_lambdas)``.

    The returned grid is sorted; the solution attached to ``lambdas[j]`` is
    ``meta["xi"][j]``.

    Raises
    ------
    OutOfRange
        A value lies outside the range of ``f`` by more than 1e-9.
    NoRoot
        No branch reproduces the value to 1e-10.
    """
    lam = np.asarray(lambdas, dtype=float)
    n = lam.size
    if initial is None:
        initial = Grid.uniform(n)
    start = np.asarray(initial.points if isinstance(initial, Grid) else initial, dtype=float)
    if start.size != n:
        raise ValueError("initial grid and lambdas differ in length")
    fv = f.values if isinstance(f, Symbol) else f
    branches = monotone_branches(fv)
    fmin = min(br.lo for br in branches)
    fmax = max(br.hi for br in branches)
    for j, v in enumerate(lam):
        if v < fmin - RANGE_SLACK or v > fmax + RANGE_SLACK:
            raise OutOfRange(j, float(v), fmin, fmax)
    lam = np.clip(lam, fmin, fmax)

    roots = np.full((len(branches), n), np.nan)
    for b, br in enumerate(branches):
        inside = (lam >= br.lo - RANGE_SLACK) & (lam <= br.hi + RANGE_SLACK)
        if np.any(inside):
            roots[b, inside] = _solve_on_branch(fv, br, np.clip(lam[inside], br.lo, br.hi))

    xi = np.empty(n)
    for j in range(n):
        own = next(
            (b for b, br in enumerate(branches) if br.a <= start[j] <= br.b and not np.isnan(roots[b, j])),
            None,
        )
        if own is None:
            cand = np.where(~np.isnan(roots[:, j]))[0]
            if cand.size == 0:
                raise NoRoot(j, float(lam[j]))
            own = cand[np.argmin(np.abs(roots[cand, j] - start[j]))]
        xi[j] = roots[own, j]
    resid = np.abs(np.asarray(fv(xi), dtype=float) - lam)
    bad = np.where(resid > ROOT_TOL)[0]
    if bad.size:
        raise NoRoot(int(bad[0]), float(lam[bad[0]]))
    order = np.argsort(xi, kind="stable")
    return Grid(
        xi[order],
        (0.0, math.pi),
        "root_found",
        meta={"xi": xi, "order": order, "residual": resid},
    )


# -- distribution ------------------------------------------------------------


def identity(x):
    return x


def square(x):
    return np.asarray(x) ** 2


def smoothed_indicator(lo: float, hi: float, width: float = 1e-3) -> Callable:
    """Continuous indicator of ``[lo, hi]`` with linear ramps of ``width``."""

    def F(x):
        x = np.asarray(x, dtype=float)
        up = np.clip((x - lo) / width + 0.5, 0.0, 1.0)
        down = np.clip((hi - x) / width + 0.5, 0.0, 1.0)
        return np.minimum(up, down)

    return F


TEST_FUNCTIONS = {"id": identity, "square": square}


def ergodic_gap(values, psi, K=(0.0, math.pi), F: Callable = identity) -> float:
    """``|mean F(values) - (1/|K|) int_K F(psi)|`` with 1e-10 adaptive quadrature."""
    values = np.asarray(values, dtype=float)
    if values.size == 0 or not np.all(np.isfinite(values)):
        raise ValueError("values must be a nonempty finite sequence")
    a, b = (float(t) for t in K)
    pv = psi.values if isinstance(psi, Symbol) else psi
    points = None
    if isinstance(psi, Piecewise):
        points = [t for t in psi.breakpoints if a < t < b] or None
    integrand = lambda x: float(np.asarray(F(pv(np.array([x]))), dtype=float)[0])
    mean_int, _ = integrate.quad(
        integrand, a, b, points=points, epsabs=1e-10, epsrel=1e-10, limit=500
    )
    mean_int /= b - a
    return float(abs(np.mean(np.asarray(F(values), dtype=float)) - mean_int))


# -- permutations and sign matching ----------------------------------------------


def symbol_sort_permutation(f: Symbol, g: Grid, tie_tol: float = 1e-12) -> SymbolPermutation:
    """Permutation sorting the samples ``f(theta_j)``; near ties keep index order."""
    y = np.asarray(f.values(g.points), dtype=float)
    order = np.argsort(y, kind="stable")
    start = 0
    for i in range(1, order.size + 1):
        if i == order.size or y[order[i]] - y[order[i - 1]] > tie_tol:
            order[start:i] = np.sort(order[start:i])
            start = i
    pi = order + 1
    inv = np.empty_like(pi)
    inv[order] = np.arange(1, pi.size + 1)
    return SymbolPermutation(pi, inv, g)


def sign_match(
    sigma_T, lambda_H, order: SymbolPermutation, tol: float = MATCH_TOL
) -> PairingReport:
    """Compare predicted ``(-1)^(j+1) sigma_{pi_inverse(j)}`` with ``lambda_H``.

    Each prediction is matched to an unused entry of ``lambda_H`` with the
    same modulus (within ``tol``), preferring one of the same sign; a row is a
    mismatch when only the opposite sign is available. Values below ``tol``
    in modulus carry no sign.
    """
    sigma = np.sort(np.asarray(sigma_T, dtype=float))
    lh = np.asarray(lambda_H, dtype=float)
    n = sigma.size
    if lh.size != n or len(order) != n:
        raise MultisetMismatch("length mismatch between sigma, lambda_H and order")
    if np.max(np.abs(np.sort(np.abs(sigma)) - np.sort(np.abs(lh))), initial=0.0) > tol:
        raise MultisetMismatch("moduli of lambda_H differ from sigma beyond tolerance")
    sign = np.where(np.arange(n) % 2 == 0, 1, -1)
    pred_abs = order.apply(sigma)
    pred = sign * pred_abs
    used = np.zeros(n, dtype=bool)
    matched = np.empty(n)
    mismatch = np.zeros(n, dtype=bool)
    for j in range(n):
        diff = np.abs(np.abs(lh) - abs(pred[j]))
        diff[used] = np.inf
        close = np.where(diff <= tol)[0]
        if close.size == 0:
            close = np.array([int(np.argmin(diff))])
        same = [c for c in close if np.sign(lh[c]) == np.sign(pred[j])]
        pool = same if same else list(close)
        pick = min(pool, key=lambda c: (diff[c], c))
        used[pick] = True
        matched[j] = lh[pick]
        tiny = abs(pred[j]) < tol or abs(lh[pick]) < tol
        mismatch[j] = not tiny and np.sign(lh[pick]) != np.sign(pred[j])
    return PairingReport(
        j=np.arange(1, n + 1),
        lambda_T=pred_abs,
        lambda_H=matched,
        sign=sign,
        xi=np.full(n, np.nan) if order.grid is None else np.asarray(order.grid.points),
        mismatch=mismatch,
        tolerance=tol,
    )


def repair_sign_mismatches(report: PairingReport) -> PairingReport:
    """Swap moduli between consecutive mismatched rows.

    Mismatched rows are paired in order (first with second, third with
    fourth, ...) and their ``lambda_T`` entries exchanged; the returned
    report has its mismatch flags recomputed. This is the manual correction
    of an ordering whose transported signs disagree with ``lambda_H``.
    """
    lam_t = np.array(report.lambda_T)
    idx = [j - 1 for j in report.mismatches]
    for a, b in zip(idx[0::2], idx[1::2]):
        lam_t[a], lam_t[b] = lam_t[b], lam_t[a]
    sigma = np.sort(lam_t)
    ranks = np.empty(lam_t.size, dtype=int)
    # Stable rank of each row's value among the sorted moduli.
    ranks[np.argsort(lam_t, kind="stable")] = np.arange(1, lam_t.size + 1)
    order = SymbolPermutation.from_inverse(ranks)
    return sign_match(sigma, report.lambda_H, order, report.tolerance)
