"""Generating functions (symbols) on [-pi, pi].

Two concrete kinds are provided:

* :class:`TrigPoly` -- a finite table of real Fourier coefficients
  ``{k: fhat_k}``, i.e. ``f(theta) = sum_k fhat_k exp(i k theta)``.
* :class:`Piecewise` -- an ordered list of pieces tiling the domain, each
  carrying a vectorized real callable, optionally with an exact
  Fourier-coefficient closure.

All symbols are immutable once built.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Mapping, Optional, Sequence

import numpy as np
from scipy import integrate

from . import _expr
from .exceptions import (
    ComplexValued,
    NonRealCoefficient,
    QuadratureFailure,
    SymbolParseError,
    UnsupportedKind,
)

QUAD_ABS_TOL = 1e-12
IMAG_TOL = 1e-10
DEFAULT_REARRANGEMENT_SAMPLES = 8192


class Symbol:
    """Common interface of generating functions."""

    kind: str = "abstract"
    domain: tuple = (-math.pi, math.pi)

    def fourier_coefficient(self, k: int) -> float:
        raise NotImplementedError

    def evaluate(self, theta):
        """Complex value(s) of the symbol at ``theta``."""
        raise NotImplementedError

    def is_real_valued(self) -> bool:
        raise NotImplementedError

    def is_even(self) -> bool:
        raise NotImplementedError

    def values(self, theta):
        """Real value(s) at ``theta``; raises :class:`ComplexValued` otherwise."""
        if not self.is_real_valued():
            raise ComplexValued(f"{self!r} is not real-valued")
        out = np.real(self.evaluate(theta))
        return float(out) if np.ndim(out) == 0 else out

    def __call__(self, theta):
        return self.values(theta) if self.is_real_valued() else self.evaluate(theta)

    def coefficients(self, kmax: int) -> np.ndarray:
        """Coefficients ``fhat_k`` for ``k = -kmax..kmax`` as an array."""
        return np.array([self.fourier_coefficient(k) for k in range(-kmax, kmax + 1)])


class TrigPoly(Symbol):
    """Trigonometric polynomial with real Fourier coefficients.

    Parameters
    ----------
    coeffs : mapping int -> float
        Nonzero Fourier coefficients; missing indices are zero.

    Examples
    --------
    >>> f = TrigPoly({-1: 1.0, 1: 1.0})   # 2 cos(theta)
    >>> f.fourier_coefficient(1)
    1.0
    """

    kind = "TrigPoly"

    def __init__(self, coeffs: Mapping[int, float]):
        table = {}
        for k, v in dict(coeffs).items():
            if isinstance(v, complex):
                if v.imag != 0:
                    raise NonRealCoefficient(f"coefficient {k} is complex: {v!r}")
                v = v.real
            v = float(v)
            if v != 0.0:
                table[int(k)] = v
        self._coeffs = dict(sorted(table.items()))
        self.degree = max((abs(k) for k in self._coeffs), default=0)

    @classmethod
    def cosine_series(cls, a: Sequence[float]) -> "TrigPoly":
        """Even symbol ``a[0] + sum_{k>=1} a[k] cos(k theta)``."""
        coeffs = {0: a[0]} if len(a) else {}
        for k, ak in enumerate(a[1:], start=1):
            coeffs[k] = coeffs[-k] = ak / 2.0
        return cls(coeffs)

    @property
    def coeffs(self) -> dict:
        return dict(self._coeffs)

    def fourier_coefficient(self, k: int) -> float:
        return self._coeffs.get(int(k), 0.0)

    def is_real_valued(self) -> bool:
        return all(self._coeffs.get(-k, 0.0) == v for k, v in self._coeffs.items())

    is_even = is_real_valued

    def evaluate(self, theta):
        theta = np.asarray(theta, dtype=float)
        if self.is_real_valued():
            out = np.full(theta.shape, self._coeffs.get(0, 0.0))
            for k, v in self._coeffs.items():
                if k > 0:
                    out = out + 2.0 * v * np.cos(k * theta)
            out = out.astype(complex)
        else:
            out = np.zeros(theta.shape, dtype=complex)
            for k, v in self._coeffs.items():
                out = out + v * np.exp(1j * k * theta)
        return complex(out) if out.ndim == 0 else out

    def derivative(self, theta):
        """Derivative of the real-valued symbol."""
        theta = np.asarray(theta, dtype=float)
        out = np.zeros(theta.shape)
        for k, v in self._coeffs.items():
            if k > 0:
                out = out - 2.0 * v * k * np.sin(k * theta)
        return out

    def __eq__(self, other):
        return isinstance(other, TrigPoly) and self._coeffs == other._coeffs

    def __hash__(self):
        return hash(tuple(self._coeffs.items()))

    def __repr__(self):
        return f"TrigPoly({self._coeffs})"

    def to_text(self) -> str:
        body = ", ".join(f"{k}: {v!r}" for k, v in self._coeffs.items())
        return f"trig: {{{body}}}"


@dataclass(frozen=True)
class Piece:
    """One piece ``func`` on the interval from ``a`` to ``b``.

    Endpoint membership is controlled by ``include_left``/``include_right``;
    pieces are tested in order and the first match wins.
    """

    a: float
    b: float
    func: Callable
    text: Optional[str] = None
    include_left: bool = True
    include_right: bool = False

    def mask(self, theta):
        left = theta >= self.a if self.include_left else theta > self.a
        right = theta <= self.b if self.include_right else theta < self.b
        return left & right


class Piecewise(Symbol):
    """Real piecewise symbol.

    ``pieces`` must tile ``domain`` without gaps or overlaps. The last piece
    is closed on the right. ``coefficient`` is an optional exact closure
    ``k -> fhat_k`` used instead of quadrature.
    """

    kind = "Piecewise"

    def __init__(
        self,
        pieces: Sequence[Piece],
        coefficient: Optional[Callable[[int], float]] = None,
        even: Optional[bool] = None,
        name: Optional[str] = None,
    ):
        if not pieces:
            raise SymbolParseError("a piecewise symbol needs at least one piece")
        pieces = list(pieces)
        for left, right in zip(pieces, pieces[1:]):
            if not math.isclose(left.b, right.a, rel_tol=0, abs_tol=1e-12):
                raise SymbolParseError(
                    f"pieces do not tile the domain: gap/overlap at {left.b} vs {right.a}"
                )
        last = pieces[-1]
        if not last.include_right:
            pieces[-1] = Piece(last.a, last.b, last.func, last.text, last.include_left, True)
        self.pieces = tuple(pieces)
        self.domain = (pieces[0].a, pieces[-1].b)
        self._closure = coefficient
        self._even = even
        self._cache: dict = {}
        self.name = name

    @classmethod
    def from_expressions(cls, rows, coefficient=None, name=None) -> "Piecewise":
        """Build from ``[[a, b, "expr"], ...]``.

        Pieces covering exactly ``[0, pi]`` are mirrored to an even symbol on
        ``[-pi, pi]``.
        """
        parsed = []
        for row in rows:
            if len(row) != 3:
                raise SymbolParseError(f"piece must be [a, b, expr], got {row!r}")
            a, b = _expr.constant(row[0]), _expr.constant(row[1])
            expr = row[2] if isinstance(row[2], str) else repr(float(row[2]))
            parsed.append((a, b, expr))
        if math.isclose(parsed[0][0], 0.0, abs_tol=1e-12) and math.isclose(
            parsed[-1][1], math.pi, abs_tol=1e-12
        ):
            return cls.even_extension(
                [Piece(a, b, _expr.Expression(e), e) for a, b, e in parsed],
                coefficient=coefficient,
                name=name,
            )
        return cls(
            [Piece(a, b, _expr.Expression(e), e) for a, b, e in parsed],
            coefficient=coefficient,
            name=name,
        )

    @classmethod
    def even_extension(cls, half_pieces: Sequence[Piece], coefficient=None, name=None):
        """Even symbol ``f(theta) = g(|theta|)`` from pieces tiling ``[0, pi]``."""
        mirrored = []
        for p in reversed(half_pieces):
            mirrored.append(
                Piece(
                    -p.b,
                    -p.a,
                    _Reflected(p.func),
                    None if p.text is None else f"({p.text})(-theta)",
                    include_left=p.include_right,
                    include_right=p.include_left,
                )
            )
        # theta = 0 belongs to the right half; -pi mirrors pi.
        lo = mirrored[0]
        mirrored[0] = Piece(lo.a, lo.b, lo.func, lo.text, True, lo.include_right)
        first = mirrored[-1]
        mirrored[-1] = Piece(first.a, first.b, first.func, first.text, first.include_left, False)
        right = [Piece(p.a, p.b, p.func, p.text, True, p.include_right) for p in half_pieces]
        return cls(mirrored + right, coefficient=coefficient, even=True, name=name)

    def evaluate(self, theta):
        theta = np.asarray(theta, dtype=float)
        out = np.full(theta.shape, np.nan)
        todo = np.ones(theta.shape, dtype=bool)
        for p in self.pieces:
            m = todo & p.mask(theta)
            if np.any(m):
                out[m] = p.func(theta[m])
                todo &= ~m
        out = out.astype(complex)
        return complex(out) if out.ndim == 0 else out

    def is_real_valued(self) -> bool:
        return True

    def is_even(self) -> bool:
        if self._even is None:
            a, b = self.domain
            if not (math.isclose(a, -b)):
                return False
            t = np.linspace(0, b, 257)[1:-1]
            self._even = bool(np.allclose(self.values(t), self.values(-t), atol=1e-13))
        return self._even

    @property
    def breakpoints(self) -> list:
        return [p.a for p in self.pieces] + [self.pieces[-1].b]

    def fourier_coefficient(self, k: int) -> float:
        k = int(k)
        if self._closure is not None:
            return float(self._closure(k))
        if k not in self._cache:
            self._cache[k] = self.quadrature_coefficient(k)
        return self._cache[k]

    def quadrature_coefficient(self, k: int) -> float:
        """Fourier coefficient by adaptive quadrature, piece by piece."""
        a, b = self.domain
        if not math.isclose(b - a, 2 * math.pi, rel_tol=1e-12):
            raise UnsupportedKind("Fourier coefficients need a domain of length 2*pi")
        re = im = 0.0
        for p in self.pieces:
            fun = _scalar(p.func)
            if k == 0:
                re += _quad(fun, p.a, p.b)
            else:
                re += _quad(fun, p.a, p.b, weight="cos", wvar=k)
                im -= _quad(fun, p.a, p.b, weight="sin", wvar=k)
        re /= 2 * math.pi
        im /= 2 * math.pi
        if abs(im) > IMAG_TOL:
            raise NonRealCoefficient(f"coefficient {k} has imaginary part {im:.3e}")
        return re

    def __repr__(self):
        if self.name:
            return f"Piecewise(name={self.name!r})"
        return f"Piecewise({[(p.a, p.b, p.text) for p in self.pieces]})"


class _Reflected:
    def __init__(self, func):
        self.func = func

    def __call__(self, theta):
        return self.func(-np.asarray(theta, dtype=float))


def _scalar(func):
    return lambda t: float(func(np.array([t]))[0])


def _quad(fun, a, b, **kw):
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            value, err = integrate.quad(
                fun, a, b, epsabs=QUAD_ABS_TOL, epsrel=0.0, limit=500, **kw
            )
        except integrate.IntegrationWarning as exc:
            raise QuadratureFailure(str(exc)) from None
    if err > QUAD_ABS_TOL:
        raise QuadratureFailure(f"quadrature error estimate {err:.2e} exceeds {QUAD_ABS_TOL}")
    return value


@dataclass(frozen=True)
class RearrangedSymbol:
    """Non-decreasing rearrangement sampled on equispaced nodes of [0, 1],
    interpolated linearly."""

    nodes: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        if len(self.nodes) < 2:
            raise ValueError("a rearrangement needs at least two nodes")
        if np.any(np.diff(self.values) < 0):
            raise ValueError("rearranged values must be non-decreasing")

    def __call__(self, y):
        return np.interp(y, self.nodes, self.values)


def fourier_coefficient(f: Symbol, k: int) -> float:
    return f.fourier_coefficient(k)


def evaluate(f: Symbol, theta):
    return f.evaluate(theta)


def modulus_squared_symbol(f: Symbol) -> TrigPoly:
    """The symbol ``g(theta) = f(-theta) f(theta)``, equal to ``|f|^2`` for
    real coefficients."""
    if not isinstance(f, TrigPoly):
        raise UnsupportedKind("modulus_squared_symbol needs a TrigPoly")
    c = f.coeffs
    g = {}
    for m in range(-2 * f.degree, 2 * f.degree + 1):
        s = sum(v * c.get(l - m, 0.0) for l, v in c.items())
        if s != 0.0:
            g[m] = s
    return TrigPoly(g)


def monotone_rearrangement(
    f: Symbol, samples: int = DEFAULT_REARRANGEMENT_SAMPLES
) -> RearrangedSymbol:
    if samples < 2:
        raise ValueError("samples must be at least 2")
    if not f.is_real_valued():
        raise ComplexValued("monotone rearrangement needs a real-valued symbol")
    lo = 0.0 if f.is_even() else -math.pi
    theta = np.linspace(lo, math.pi, samples)
    vals = np.sort(np.asarray(f.values(theta), dtype=float))
    return RearrangedSymbol(np.linspace(0.0, 1.0, samples), vals)


def absolute(f: Symbol) -> Piecewise:
    """``|f|`` as a single-piece symbol on ``f``'s domain."""
    a, b = f.domain
    return Piecewise([Piece(a, b, lambda t: np.abs(f.evaluate(t)))], even=f.is_even())


def psi_extension(g, p: float = math.pi) -> Piecewise:
    """Odd doubling of ``g``: ``g(x)`` on ``[0, pi]``, ``-g(x - p)`` on ``(pi, pi + p]``.

    The shared point ``x = pi`` takes the ``g`` branch.
    """
    gv = g.values if isinstance(g, Symbol) else g
    first = Piece(0.0, math.pi, lambda x: np.asarray(gv(x), dtype=float), None, True, True)
    second = Piece(
        math.pi, math.pi + p, lambda x: -np.asarray(gv(np.asarray(x) - p), dtype=float), None,
        False, True,
    )
    return Piecewise([first, second], even=False, name="psi")


def parse_symbol(text: str) -> Symbol:
    """Parse ``trig: {k: v, ...}`` or ``piecewise: [[a, b, "expr"], ...]``."""
    head, sep, body = text.partition(":")
    if not sep:
        raise SymbolParseError(f"expected 'trig:' or 'piecewise:' prefix in {text!r}")
    head = head.strip().lower()
    try:
        data = _expr.literal(body)
    except SymbolParseError:
        raise
    except Exception as exc:  # malformed containers
        raise SymbolParseError(str(exc)) from None
    if head == "trig":
        if not isinstance(data, dict):
            raise SymbolParseError("trig symbol needs a {k: value} map")
        coeffs = {}
        for k, v in data.items():
            if float(k) != int(k):
                raise SymbolParseError(f"non-integer Fourier index {k!r}")
            coeffs[int(k)] = float(v)
        return TrigPoly(coeffs)
    if head == "piecewise":
        if not isinstance(data, list):
            raise SymbolParseError("piecewise symbol needs a list of [a, b, expr]")
        return Piecewise.from_expressions(data)
    raise SymbolParseError(f"unknown symbol kind {head!r}")
