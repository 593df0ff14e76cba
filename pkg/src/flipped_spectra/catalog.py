"""Named symbols used throughout the examples and verification suites."""

from __future__ import annotations

import math

from .symbols import Piecewise, Symbol, TrigPoly, parse_symbol


def _ramp_coefficient(k: int) -> float:
    # Even symbol: 1 on [0, pi/2), theta + 1 - pi/2 on [pi/2, pi].
    if k == 0:
        return 1.0 + math.pi / 8.0
    return (math.cos(k * math.pi) - math.cos(k * math.pi / 2.0)) / (math.pi * k * k)


def plateau_ramp() -> Piecewise:
    """Flat at 1 up to pi/2, then a unit-slope ramp; exact coefficients."""
    return Piecewise.from_expressions(
        [[0, "pi/2", "1"], ["pi/2", "pi", "theta + 1 - pi/2"]],
        coefficient=_ramp_coefficient,
        name="example41",
    )


def cos_ramp() -> Piecewise:
    """``cos 2t + cos 3t`` on [0, pi/2), ``t`` on [pi/2, pi], mirrored."""
    return Piecewise.from_expressions(
        [[0, "pi/2", "cos(2*theta) + cos(3*theta)"], ["pi/2", "pi", "theta"]],
        name="example43",
    )


def grcar() -> TrigPoly:
    """``-e^{it} + 1 + e^{-it} + e^{-2it} + e^{-3it}``."""
    return TrigPoly({1: -1.0, 0: 1.0, -1: 1.0, -2: 1.0, -3: 1.0})


NAMED = {
    "example41": plateau_ramp,
    "example42": lambda: TrigPoly.cosine_series([16.0, -2.0, -2.0, 1.0]),
    "example43": cos_ramp,
    "cos+cos2": lambda: TrigPoly.cosine_series([0.0, 1.0, 1.0]),
    "f1": lambda: TrigPoly({0: 1.0, 1: 1.0}),
    "f2": lambda: TrigPoly({0: 1.0, 1: -1.0}),
    "grcar": grcar,
    "grcar-gram": lambda: TrigPoly.cosine_series([5.0, 4.0, 2.0, 0.0, -2.0]),
    "lap2": lambda: TrigPoly({-2: 1.0, -1: -4.0, 0: 6.0, 1: -4.0, 2: 1.0}),
}


# Names whose natural target is the Gram matrix of another symbol's T_n.
GRAM_SOURCES = {"grcar-gram": grcar}


def names() -> list:
    return sorted(NAMED)


def get_symbol(spec) -> Symbol:
    """A named symbol, a symbol in text form, or a :class:`Symbol` passed through."""
    if isinstance(spec, Symbol):
        return spec
    key = str(spec).strip()
    if key in NAMED:
        return NAMED[key]()
    return parse_symbol(key)
